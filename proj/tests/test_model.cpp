#include <algorithm>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "maximin/model.hpp"
#include "maximin/rng.hpp"

using namespace maximin;

namespace {

const GameInstance kMu1({{0.4, 0.5}, {0.3, 0.35}});
const GameInstance kGame3({{0.45, 0.5, 0.55}, {0.35, 0.4, 0.6}, {0.3, 0.47, 0.52}});

}  // namespace

TEST_CASE("load_instance parses and validates") {
  const GameInstance g = load_instance(R"({"means":[[0.4,0.5],[0.3,0.35]]})");
  CHECK(g.num_actions() == 2);
  CHECK(g.num_arms() == 4);
  CHECK(g.mean({1, 1}) == 0.35);
  CHECK(g.is_two_by_two());

  CHECK_THROWS_AS(load_instance(R"({"means":[[0.5]]})"), ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"means":[[0.4,1.2],[0.3,0.3]]})"), ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"means":[[0.4],[]]})"), ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"means":[[0.4],[-0.1]]})"), ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"mean":[[0.4],[0.1]]})"), ValidationError);
  CHECK_THROWS_AS(load_instance("not json"), ValidationError);
  CHECK_THROWS_AS(load_instance(R"({"means":[["a"],[0.1]]})"), ValidationError);
  CHECK_THROWS_AS(load_instance_file("/nonexistent/instance.json"), ValidationError);
}

TEST_CASE("ragged instances and layout indexing") {
  const GameInstance g({{0.1}, {0.2, 0.3, 0.4}, {0.5, 0.6}});
  const Layout& l = g.layout();
  CHECK(l.num_arms() == 6);
  CHECK(l.max_responses() == 3);
  CHECK_FALSE(g.is_two_by_two());
  for (std::size_t p = 0; p < l.num_arms(); ++p) CHECK(l.flat(l.arm(p)) == p);
  CHECK(l.arm(3) == ArmId{1, 2});
  CHECK_FALSE(l.contains({0, 1}));
  CHECK_THROWS_AS(g.mean({0, 1}), std::out_of_range);
}

TEST_CASE("instance JSON round trip") {
  const GameInstance g = load_instance(instance_to_json(kGame3));
  CHECK(g.means() == kGame3.means());
}

TEST_CASE("true_maximin and ties") {
  const MaximinValue m = true_maximin(kMu1);
  CHECK(m.action == 0);
  CHECK(m.value == 0.4);
  CHECK(m.worst == std::vector<double>{0.4, 0.3});

  const GameInstance flat({{0.5, 0.5}, {0.5, 0.5}, {0.5}});
  CHECK(true_maximin(flat).action == 0);
  CHECK(true_maximin(flat).value == 0.5);

  CHECK(true_maximin(kGame3).action == 0);
  CHECK(true_maximin(kGame3).value == 0.45);
}

TEST_CASE("true_maximin is permutation invariant") {
  std::vector<std::vector<double>> rows = kGame3.means();
  std::vector<std::size_t> perm = {0, 1, 2};
  do {
    std::vector<std::vector<double>> permuted;
    for (std::size_t k : perm) {
      std::vector<double> row = rows[k];
      std::reverse(row.begin(), row.end());
      permuted.push_back(row);
    }
    const MaximinValue m = true_maximin(GameInstance(permuted));
    CHECK(perm[m.action] == 0);
    CHECK(m.value == 0.45);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("is_eps_optimal") {
  CHECK(is_eps_optimal(kMu1, 0, 0.0));
  CHECK_FALSE(is_eps_optimal(kMu1, 1, 0.0));
  CHECK(is_eps_optimal(kMu1, 1, 0.1 + 1e-12));
  CHECK_FALSE(is_eps_optimal(kMu1, 1, 0.05));
  for (double eps : {0.0, 0.01, 0.5}) CHECK(is_eps_optimal(kGame3, true_maximin(kGame3).action, eps));
  CHECK_THROWS_AS(is_eps_optimal(kMu1, 2, 0.0), std::out_of_range);
}

TEST_CASE("sampling: degenerate arms, law of large numbers, determinism") {
  const GameInstance g({{1.0, 0.0}, {0.5}});
  SamplingEnv env(7);
  for (int k = 0; k < 1000; ++k) {
    CHECK(env.sample(g, {0, 0}) == 1);
    CHECK(env.sample(g, {0, 1}) == 0);
  }
  CHECK(env.total_samples() == 2000);

  SamplingEnv big(12345);
  long ones = 0;
  for (int k = 0; k < 1'000'000; ++k) ones += big.sample(g, {1, 0});
  CHECK(std::abs(static_cast<double>(ones) / 1e6 - 0.5) < 0.005);

  SamplingEnv a(99), b(99), c(100);
  bool differs = false;
  for (std::size_t k = 0; k < 500; ++k) {
    const ArmId arm{k % 2, k % 3 == 0 ? 1u : 0u};
    const int x = a.sample(kMu1, arm);
    CHECK(x == b.sample(kMu1, arm));
    differs |= x != c.sample(kMu1, arm);
  }
  CHECK(differs);

  CHECK_THROWS_AS(env.sample(g, {1, 1}), std::out_of_range);
  CHECK_THROWS_AS(env.sample(g, {2, 0}), std::out_of_range);
}

TEST_CASE("unit draws lie in [0,1) and are roughly uniform") {
  SamplingEnv env(3);
  double sum = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double u = env.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 1e5 - 0.5) < 0.005);
}

TEST_CASE("derive_seed separates every coordinate") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 3; ++m)
    for (std::uint64_t i = 0; i < 4; ++i)
      for (std::uint64_t a = 0; a < 5; ++a)
        for (std::uint64_t k = 0; k < 50; ++k) seen.insert(derive_seed(m, i, a, k));
  CHECK(seen.size() == 3 * 4 * 5 * 50);
  CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
  CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 3, 2, 4));
}

TEST_CASE("mix64 matches the SplitMix64 finalizer") {
  // Reference values of the SplitMix64 generator seeded with 0: the k-th output
  // is mix64(k * 0x9e3779b97f4a7c15) for k = 1, 2, ...
  CHECK(mix64(0x9e3779b97f4a7c15ULL) == 0xe220a8397b1dcdafULL);
  CHECK(mix64(0x9e3779b97f4a7c15ULL * 2) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("run_result_to_json nests draws per action") {
  RunResult r;
  r.tau = 10;
  r.draws = {1, 2, 3, 4};
  r.recommended = 0;
  r.stopped_by = StopReason::confidence;
  r.correct = true;
  const auto doc = nlohmann::json::parse(run_result_to_json(r, kMu1.layout()));
  CHECK(doc["tau"] == 10);
  CHECK(doc["draws"] == nlohmann::json::parse("[[1,2],[3,4]]"));
  CHECK(doc["stopped_by"] == "confidence");
  CHECK(doc["correct"] == true);
}
