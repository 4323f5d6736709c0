#include <gtest/gtest.h>

#include "reference.hpp"
#include "voteinspect/oracle.hpp"

namespace vi = voteinspect;
using vi::Instance;
using vi::Objective;
using vi::PartialAssignment;

namespace {

Instance binary_instance(std::vector<double> costs, const std::vector<double>& p) {
  std::vector<std::vector<double>> probs;
  for (double x : p) probs.push_back({x, 1.0 - x});
  return Instance(std::move(costs), std::move(probs));
}

}  // namespace

TEST(Optimum, Examples) {
  for (int d = 2; d <= 4; ++d) {
    const Instance one({2.5}, {std::vector<double>(d, 1.0 / d)});
    EXPECT_DOUBLE_EQ(vi::optimal_expected_cost(one, Objective::kRelative), 2.5);
  }
  EXPECT_DOUBLE_EQ(vi::optimal_expected_cost(binary_instance({1, 1}, {0.3, 0.9}),
                                             Objective::kAbsolute),
                   2.0);
  const auto three = binary_instance({1, 1, 1}, {0.5, 0.5, 0.5});
  EXPECT_DOUBLE_EQ(vi::optimal_expected_cost(three, Objective::kAbsolute), 2.5);
  EXPECT_DOUBLE_EQ(ref::brute_optimum(three, Objective::kAbsolute), 2.5);
}

// Collapsing histories to (untested set, tallies) loses nothing: the DP
// agrees with a search over raw partial assignments.
TEST(Optimum, MatchesRawAssignmentSearch) {
  for (int n = 1; n <= 6; ++n) {
    for (int d = 2; d <= 3; ++d) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto inst = ref::random_instance(7 * seed + 31 * n + d, n, d);
        for (auto objective : {Objective::kAbsolute, Objective::kRelative}) {
          ASSERT_NEAR(vi::optimal_expected_cost(inst, objective),
                      ref::brute_optimum(inst, objective), 1e-9);
        }
      }
    }
  }
}

TEST(Optimum, BeliefStatesFromRawHistories) {
  const auto inst = ref::random_instance(77, 6, 3);
  vi::OptimalSolver solver(inst, Objective::kAbsolute);
  ref::BruteOptimum brute(inst, Objective::kAbsolute);
  ref::for_each_partial(6, 3, [&](std::span<const int> raw) {
    const auto b = ref::to_partial(raw, 3);
    ASSERT_NEAR(solver.value(b), brute.value({raw.begin(), raw.end()}), 1e-9);
  });
}

TEST(Optimum, BudgetIsEnforced) {
  EXPECT_EQ(vi::estimate_belief_states(2, 2), 1u + 2u * 2u + 3u);
  const auto big = ref::random_instance(1, 30, 4);
  EXPECT_THROW(vi::optimal_expected_cost(big, Objective::kAbsolute), vi::BudgetExceeded);
  const auto small = ref::random_instance(1, 5, 2);
  EXPECT_THROW(vi::optimal_expected_cost(small, Objective::kAbsolute, 10), vi::BudgetExceeded);
  EXPECT_NO_THROW(vi::optimal_expected_cost(ref::random_instance(2, 12, 2), Objective::kAbsolute));
  EXPECT_NO_THROW(vi::optimal_expected_cost(ref::random_instance(2, 10, 3), Objective::kRelative));
}

TEST(ExactCost, Examples) {
  const Instance one({1.75}, {{0.4, 0.6}});
  const vi::Policy fixed = [](std::span<const vi::Probe> h) -> std::optional<int> {
    if (h.empty()) return 0;
    return std::nullopt;
  };
  EXPECT_DOUBLE_EQ(vi::exact_strategy_cost(fixed, one, Objective::kAbsolute), 1.75);
  const auto two = binary_instance({1, 3}, {0.2, 0.7});
  EXPECT_DOUBLE_EQ(vi::exact_strategy_cost(vi::find_strategy("abs4"), two), 4.0);
  EXPECT_DOUBLE_EQ(vi::optimal_expected_cost(two, Objective::kAbsolute), 4.0);
}

TEST(ExactCost, RejectsBadPolicies) {
  const auto inst = binary_instance({1, 1, 1}, {0.5, 0.5, 0.5});
  const vi::Policy again = [](std::span<const vi::Probe>) -> std::optional<int> { return 0; };
  EXPECT_THROW(vi::exact_strategy_cost(again, inst, Objective::kAbsolute), std::logic_error);
  const vi::Policy quits = [](std::span<const vi::Probe>) -> std::optional<int> {
    return std::nullopt;
  };
  EXPECT_THROW(vi::exact_strategy_cost(quits, inst, Objective::kAbsolute), std::logic_error);
  EXPECT_THROW(vi::exact_strategy_cost(vi::find_strategy("abs4"), ref::random_instance(3, 9, 3),
                                       100),
               vi::BudgetExceeded);
}

// Decision-tree expectation equals the probability-weighted sum of
// transcript costs; no strategy beats the optimum.
TEST(ExactCost, MatchesRealizationSweep) {
  for (int n = 1; n <= 6; ++n) {
    for (int d = 2; d <= 3; ++d) {
      const auto inst = ref::random_instance(13 * n + d, n, d);
      for (const auto& s : vi::strategy_catalog()) {
        if (s.name == "sbb2" && d != 2) continue;
        const double tree = vi::exact_strategy_cost(s, inst);
        const double sweep = ref::sweep_expectation(inst, [&](std::span<const int> x) {
          return vi::run_strategy(s, inst, x).cost();
        });
        ASSERT_NEAR(tree, sweep, 1e-9) << s.name;
        ASSERT_LE(vi::optimal_expected_cost(inst, s.objective), tree + 1e-9) << s.name;
      }
    }
  }
}

TEST(ExactCost, OptimalPolicyAttainsOptimum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = ref::random_instance(seed, 5, 3);
    for (auto objective : {Objective::kAbsolute, Objective::kRelative}) {
      const auto policy = vi::optimal_policy(inst, objective);
      EXPECT_NEAR(vi::exact_strategy_cost(policy, inst, objective),
                  vi::optimal_expected_cost(inst, objective), 1e-9);
    }
  }
}

TEST(MonteCarlo, Deterministic) {
  const auto inst = ref::random_instance(5, 7, 3);
  const auto& s = vi::find_strategy("abs4");
  const auto a = vi::monte_carlo_cost(s.run, inst, 500, 42);
  const auto b = vi::monte_carlo_cost(s.run, inst, 500, 42);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.trials, 500u);
  EXPECT_THROW(vi::monte_carlo_cost(s.run, inst, 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, ZeroCostInstance) {
  const Instance free_votes({0, 0, 0}, std::vector<std::vector<double>>(3, {0.5, 0.5}));
  const auto est = vi::monte_carlo_cost(vi::find_strategy("abs4").run, free_votes, 100, 3);
  EXPECT_EQ(est.mean, 0.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(MonteCarlo, CloseToExact) {
  const auto inst = ref::random_instance(8, 3, 2);
  const auto& s = vi::find_strategy("abs4");
  const auto est = vi::monte_carlo_cost(s.run, inst, 200000, 9);
  EXPECT_LE(std::abs(est.mean - vi::exact_strategy_cost(s, inst)), 3.0 * est.std_error);
}

TEST(Sampling, OrderIndependentAndCalibrated) {
  const Instance inst({1, 1}, {{0.2, 0.3, 0.5}, {0.6, 0.3, 0.1}});
  EXPECT_EQ(vi::sample_realization(inst, 5, 17), vi::sample_realization(inst, 5, 17));
  std::vector<std::vector<int>> count(2, std::vector<int>(3, 0));
  const int trials = 200000;
  for (int t = 0; t < trials; ++t) {
    const auto x = vi::sample_realization(inst, 1, t);
    ++count[0][x[0]];
    ++count[1][x[1]];
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double p = inst.prob(i, j);
      EXPECT_NEAR(count[i][j] / static_cast<double>(trials), p,
                  5.0 * std::sqrt(p * (1 - p) / trials));
    }
  }
}

TEST(Ratio, Conventions) {
  EXPECT_EQ(vi::cost_ratio(3.0, 1.5), 2.0);
  EXPECT_EQ(vi::cost_ratio(0.0, 0.0), 1.0);
  EXPECT_EQ(vi::cost_ratio(2.0, std::nullopt), std::nullopt);
}
