#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maximin {

// Raised for malformed or out-of-range user input (instances, configs, flags).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A pair (player-A action, player-B response).
struct ArmId {
  std::size_t action = 0;
  std::size_t response = 0;

  friend auto operator<=>(const ArmId&, const ArmId&) = default;
};

// Shape of a two-round game: number of responses available after each action.
// Arms are numbered row-major ("flat" index) for storage.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<std::size_t> row_sizes);

  std::size_t num_actions() const { return row_sizes_.size(); }
  std::size_t num_responses(std::size_t action) const { return row_sizes_.at(action); }
  std::size_t num_arms() const { return total_; }
  const std::vector<std::size_t>& row_sizes() const { return row_sizes_; }
  std::size_t max_responses() const;

  bool contains(ArmId arm) const {
    return arm.action < row_sizes_.size() && arm.response < row_sizes_[arm.action];
  }
  std::size_t flat(ArmId arm) const { return offsets_[arm.action] + arm.response; }
  ArmId arm(std::size_t flat_index) const;
  std::vector<ArmId> arms() const;

  friend bool operator==(const Layout& a, const Layout& b) { return a.row_sizes_ == b.row_sizes_; }

 private:
  std::vector<std::size_t> row_sizes_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

// Ragged matrix of Bernoulli means mu[i][j] in [0,1]; at least two actions,
// every action with at least one response. No ordering is assumed.
class GameInstance {
 public:
  explicit GameInstance(std::vector<std::vector<double>> means);

  const Layout& layout() const { return layout_; }
  std::size_t num_actions() const { return layout_.num_actions(); }
  std::size_t num_arms() const { return layout_.num_arms(); }
  double mean(ArmId arm) const;
  const std::vector<std::vector<double>>& means() const { return means_; }
  bool is_two_by_two() const;

 private:
  std::vector<std::vector<double>> means_;
  Layout layout_;
};

// Parses `{"means": [[...], ...]}`.
GameInstance load_instance(std::string_view json_text);
GameInstance load_instance_file(const std::filesystem::path& path);
std::string instance_to_json(const GameInstance& instance);

struct ArmStats {
  std::uint64_t count = 0;
  std::uint64_t sum = 0;

  double mean() const { return count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(count); }
  void add(int observation) {
    ++count;
    sum += observation != 0 ? 1u : 0u;
  }
};

struct MaximinValue {
  std::size_t action = 0;
  double value = 0.0;
  std::vector<double> worst;  // min_j mu[i][j] per action
};

// Ties broken by lowest action index.
MaximinValue true_maximin(const GameInstance& instance);

bool is_eps_optimal(const GameInstance& instance, std::size_t action, double eps);

enum class StopReason { confidence, cap };

std::string_view to_string(StopReason reason);

struct RunResult {
  std::uint64_t tau = 0;
  std::vector<std::uint64_t> draws;  // flat arm order
  std::size_t recommended = 0;
  StopReason stopped_by = StopReason::confidence;
  bool correct = false;
};

std::string run_result_to_json(const RunResult& result, const Layout& layout);

}  // namespace maximin
