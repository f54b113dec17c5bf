#include "maximin/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace maximin {

using nlohmann::json;

Layout::Layout(std::vector<std::size_t> row_sizes) : row_sizes_(std::move(row_sizes)) {
  offsets_.reserve(row_sizes_.size());
  for (std::size_t k : row_sizes_) {
    offsets_.push_back(total_);
    total_ += k;
  }
}

std::size_t Layout::max_responses() const {
  return row_sizes_.empty() ? 0 : *std::max_element(row_sizes_.begin(), row_sizes_.end());
}

ArmId Layout::arm(std::size_t flat_index) const {
  if (flat_index >= total_) throw std::out_of_range("flat arm index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat_index);
  std::size_t action = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  // Skip over zero-width rows that share an offset.
  while (row_sizes_[action] == 0) --action;
  return {action, flat_index - offsets_[action]};
}

std::vector<ArmId> Layout::arms() const {
  std::vector<ArmId> out;
  out.reserve(total_);
  for (std::size_t i = 0; i < row_sizes_.size(); ++i)
    for (std::size_t j = 0; j < row_sizes_[i]; ++j) out.push_back({i, j});
  return out;
}

namespace {

Layout layout_of(const std::vector<std::vector<double>>& means) {
  std::vector<std::size_t> sizes;
  sizes.reserve(means.size());
  for (const auto& row : means) sizes.push_back(row.size());
  return Layout(std::move(sizes));
}

}  // namespace

GameInstance::GameInstance(std::vector<std::vector<double>> means) : means_(std::move(means)) {
  if (means_.size() < 2) throw ValidationError("a game needs at least two actions (K >= 2)");
  for (std::size_t i = 0; i < means_.size(); ++i) {
    if (means_[i].empty()) throw ValidationError("action " + std::to_string(i) + " has no responses");
    for (double m : means_[i]) {
      if (!(m >= 0.0 && m <= 1.0)) {
        std::ostringstream msg;
        msg << "mean " << m << " in action " << i << " is outside [0,1]";
        throw ValidationError(msg.str());
      }
    }
  }
  layout_ = layout_of(means_);
}

double GameInstance::mean(ArmId arm) const {
  if (!layout_.contains(arm)) throw std::out_of_range("arm is not part of the instance");
  return means_[arm.action][arm.response];
}

bool GameInstance::is_two_by_two() const {
  return num_actions() == 2 && means_[0].size() == 2 && means_[1].size() == 2;
}

GameInstance load_instance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("means") || !doc["means"].is_array())
    throw ValidationError("instance must be an object with a \"means\" array");
  std::vector<std::vector<double>> means;
  for (const auto& row : doc["means"]) {
    if (!row.is_array()) throw ValidationError("each row of \"means\" must be an array");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw ValidationError("means must be numbers");
      r.push_back(v.get<double>());
    }
    means.push_back(std::move(r));
  }
  return GameInstance(std::move(means));
}

GameInstance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

std::string instance_to_json(const GameInstance& instance) { return json{{"means", instance.means()}}.dump(); }

MaximinValue true_maximin(const GameInstance& instance) {
  MaximinValue out;
  out.worst.reserve(instance.num_actions());
  for (const auto& row : instance.means()) out.worst.push_back(*std::min_element(row.begin(), row.end()));
  out.action = 0;
  for (std::size_t i = 1; i < out.worst.size(); ++i)
    if (out.worst[i] > out.worst[out.action]) out.action = i;
  out.value = out.worst[out.action];
  return out;
}

bool is_eps_optimal(const GameInstance& instance, std::size_t action, double eps) {
  if (action >= instance.num_actions()) throw std::out_of_range("action index out of range");
  const MaximinValue mv = true_maximin(instance);
  return mv.value - mv.worst[action] <= eps;
}

std::string_view to_string(StopReason reason) { return reason == StopReason::cap ? "cap" : "confidence"; }

std::string run_result_to_json(const RunResult& result, const Layout& layout) {
  json draws = json::array();
  for (std::size_t i = 0; i < layout.num_actions(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < layout.num_responses(i); ++j) row.push_back(result.draws.at(layout.flat({i, j})));
    draws.push_back(std::move(row));
  }
  json doc{{"tau", result.tau},
           {"draws", std::move(draws)},
           {"recommended", result.recommended},
           {"stopped_by", std::string(to_string(result.stopped_by))},
           {"correct", result.correct}};
  return doc.dump();
}

}  // namespace maximin
