#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <tuple>

#include "reference.hpp"
#include "voteinspect/kernels.hpp"

namespace vi = voteinspect;
using vi::Instance;
using vi::KofNProblem;
using vi::PartialAssignment;

namespace {

Instance binary_instance(std::vector<double> costs, const std::vector<double>& p) {
  std::vector<std::vector<double>> probs;
  for (double x : p) probs.push_back({x, 1.0 - x});
  return Instance(std::move(costs), std::move(probs));
}

// Records the order in which voters are asked for.
class RecordingSource final : public vi::VoteSource {
 public:
  explicit RecordingSource(std::span<const int> votes) : votes_(votes) {}
  int vote(int voter) override {
    asked.push_back(voter);
    return votes_[voter];
  }
  std::vector<int> asked;

 private:
  std::span<const int> votes_;
};

// Optimal expected cost of deciding "at least k successes" by recursion
// over (untested set, successes, failures).
class KofNOptimum {
 public:
  KofNOptimum(std::vector<double> costs, std::vector<double> p, int k)
      : costs_(std::move(costs)), p_(std::move(p)), k_(k) {}

  double value() { return solve((1u << costs_.size()) - 1, 0, 0); }

 private:
  double solve(unsigned untested, int hits, int misses) {
    const int n = static_cast<int>(costs_.size());
    if (hits >= k_ || misses >= n - k_ + 1) return 0.0;
    const auto key = std::make_tuple(untested, hits, misses);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    double best = 1e300;
    for (int i = 0; i < n; ++i) {
      if (!(untested & (1u << i))) continue;
      const unsigned rest = untested & ~(1u << i);
      best = std::min(best, costs_[i] + p_[i] * solve(rest, hits + 1, misses) +
                                (1.0 - p_[i]) * solve(rest, hits, misses + 1));
    }
    memo_[key] = best;
    return best;
  }

  std::vector<double> costs_;
  std::vector<double> p_;
  int k_;
  std::map<std::tuple<unsigned, int, int>, double> memo_;
};

}  // namespace

TEST(SbbNext, Examples) {
  KofNProblem three{{{0, 1, 0.9}, {1, 1, 0.5}, {2, 1, 0.1}}, 2, 2};
  EXPECT_EQ(vi::sbb_next(three), 1);
  KofNProblem single{{{4, 2.5, 0.3}}, 1, 1};
  EXPECT_EQ(vi::sbb_next(single), 4);
  KofNProblem pair{{{0, 1, 0.5}, {1, 2, 0.5}}, 1, 2};
  EXPECT_EQ(vi::sbb_next(pair), 0);
}

TEST(SbbNext, RejectsDecidedProblems) {
  KofNProblem done{{{0, 1, 0.5}, {1, 1, 0.5}}, 0, 3};
  EXPECT_THROW(vi::sbb_next(done), std::invalid_argument);
  KofNProblem refuted{{{0, 1, 0.5}, {1, 1, 0.5}}, 3, 0};
  EXPECT_THROW(vi::sbb_next(refuted), std::invalid_argument);
}

TEST(SbbEvaluate, Examples) {
  const auto inst = binary_instance({1, 2, 3}, {0.6, 0.6, 0.6});
  const std::vector<int> x = {0, 0, 1};
  PartialAssignment b(3, 2);
  const auto r = vi::sbb_evaluate(inst, b, 0, x);
  EXPECT_TRUE(r.verdict);
  EXPECT_DOUBLE_EQ(r.cost, 3.0);
  EXPECT_TRUE(b.known(0));
  EXPECT_TRUE(b.known(1));
  EXPECT_FALSE(b.known(2));

  PartialAssignment won = PartialAssignment::from_entries(std::vector<int>{0, 0, -1}, 2);
  const auto already = vi::sbb_evaluate(inst, won, 0, x);
  EXPECT_TRUE(already.verdict);
  EXPECT_EQ(already.cost, 0.0);
  PartialAssignment lost = PartialAssignment::from_entries(std::vector<int>{1, 1, -1}, 2);
  const auto refuted = vi::sbb_evaluate(inst, lost, 0, x);
  EXPECT_FALSE(refuted.verdict);
  EXPECT_EQ(refuted.cost, 0.0);
}

// The incremental evaluator asks for exactly the voters sbb_next picks.
TEST(SbbEvaluate, MatchesPureRule) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const int d = 2 + static_cast<int>(seed % 3);
    const auto inst = ref::random_instance(seed, n, d);
    const auto x = vi::sample_realization(inst, seed, 0);
    for (int target = 0; target < d; ++target) {
      RecordingSource source(x);
      vi::Session session(inst, source, vi::Objective::kAbsolute, "sbb");
      vi::sbb_evaluate(session, target);
      PartialAssignment b(n, d);
      std::vector<int> expected;
      for (;;) {
        const auto problem = vi::target_problem(inst, b, target);
        if (problem.k <= 0 || problem.z <= 0) break;
        const int next = vi::sbb_next(problem);
        expected.push_back(next);
        b.reveal(next, x[next]);
      }
      ASSERT_EQ(source.asked, expected) << "seed " << seed << " target " << target;
    }
  }
}

// SBB is optimal for "target wins": compare its exact expected cost with a
// k-of-n recursion on the merged success/failure instance.
TEST(SbbEvaluate, OptimalForTargetQuestion) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const int n = 1 + static_cast<int>(seed % 9);
    const auto full = ref::random_instance(seed, n, 3);
    std::vector<double> costs(full.costs().begin(), full.costs().end());
    std::vector<double> p;
    for (int i = 0; i < n; ++i) p.push_back(full.prob(i, 0));
    const auto merged = binary_instance(costs, p);
    const double sbb = ref::sweep_expectation(merged, [&](std::span<const int> x) {
      PartialAssignment b(n, 2);
      return vi::sbb_evaluate(merged, b, 0, x).cost;
    });
    KofNOptimum opt(costs, p, vi::majority_quota(n));
    ASSERT_NEAR(sbb, opt.value(), 1e-9) << "seed " << seed;
  }
}

TEST(Conjunction, Examples) {
  const auto inst = binary_instance({1, 1}, {0.9, 0.5});
  {
    const std::vector<int> x = {0, 0};
    RecordingSource source(x);
    vi::Session session(inst, source, vi::Objective::kRelative, "conj");
    const auto r = vi::conjunction_evaluate(session, 0);
    EXPECT_TRUE(r.verdict);
    EXPECT_EQ(source.asked, (std::vector<int>{1, 0}));
  }
  {
    const std::vector<int> x = {0, 1};
    PartialAssignment b(2, 2);
    const auto r = vi::conjunction_evaluate(inst, b, 0, x);
    EXPECT_FALSE(r.verdict);
    EXPECT_EQ(b.known_count(), 1);
  }
  {
    const std::vector<int> x = {0, 0};
    PartialAssignment b = PartialAssignment::from_entries(x, 2);
    const auto r = vi::conjunction_evaluate(inst, b, 0, x);
    EXPECT_TRUE(r.verdict);
    EXPECT_EQ(r.cost, 0.0);
  }
}

TEST(RoundRobin, Examples) {
  const std::vector<double> costs = {1, 3, 2};
  const std::vector<std::vector<int>> lists = {{0, 1}, {1, 2}};
  EXPECT_EQ(vi::modified_round_robin(lists, costs), (vi::Permutation{0, 1, 2}));
  const std::vector<std::vector<int>> one = {{2, 0, 1}};
  EXPECT_EQ(vi::modified_round_robin(one, costs), (vi::Permutation{2, 0, 1}));
  const std::vector<std::vector<int>> twins = {{1, 2, 0}, {1, 2, 0}};
  EXPECT_EQ(vi::modified_round_robin(twins, costs), (vi::Permutation{1, 2, 0}));
  EXPECT_THROW(vi::modified_round_robin({}, costs), std::invalid_argument);
}

TEST(RoundRobin, CoversOnceAndKeepsListOrder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<double> costs(n);
    for (double& c : costs) c = static_cast<double>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> lists(k);
    std::set<int> all;
    for (auto& list : lists) {
      std::vector<int> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(1 + rng() % n);
      list = pool;
      all.insert(pool.begin(), pool.end());
    }
    const auto out = vi::modified_round_robin(lists, costs);
    ASSERT_EQ(std::set<int>(out.begin(), out.end()), all);
    ASSERT_EQ(out.size(), all.size());
    // Raw round-robin sequence with the list each entry came from.
    std::vector<double> spent(k, 0.0);
    std::vector<std::size_t> next(k, 0);
    std::vector<std::pair<int, int>> raw;
    for (;;) {
      int pick = -1;
      for (int j = 0; j < k; ++j) {
        if (next[j] == lists[j].size()) continue;
        const double key = spent[j] + costs[lists[j][next[j]]];
        if (pick < 0 || key < spent[pick] + costs[lists[pick][next[pick]]]) pick = j;
      }
      if (pick < 0) break;
      const int voter = lists[pick][next[pick]++];
      spent[pick] += costs[voter];
      raw.push_back({voter, pick});
    }
    std::vector<int> first_source(n, -1);
    vi::Permutation dedup;
    for (const auto& [voter, source] : raw) {
      if (first_source[voter] >= 0) continue;
      first_source[voter] = source;
      dedup.push_back(voter);
    }
    ASSERT_EQ(out, dedup);
    std::vector<int> position(n, -1);
    for (std::size_t t = 0; t < out.size(); ++t) position[out[t]] = static_cast<int>(t);
    for (int j = 0; j < k; ++j) {
      int last = -1;
      for (int voter : lists[j]) {
        if (first_source[voter] != j) continue;
        ASSERT_GT(position[voter], last);
        last = position[voter];
      }
    }
  }
}

TEST(Permutations, NonadaptiveExamples) {
  const auto inst = binary_instance({1, 1, 1}, {0.9, 0.5, 0.1});
  const PartialAssignment empty(3, 2);
  EXPECT_EQ(vi::nonadaptive_kofn_permutation(inst, empty, 0), (vi::Permutation{0, 2, 1}));
  const auto one = PartialAssignment::from_entries(std::vector<int>{0, -1, 1}, 2);
  EXPECT_EQ(vi::nonadaptive_kofn_permutation(inst, one, 0), (vi::Permutation{1}));
  const auto uniform = binary_instance({3, 1, 2, 5}, {0.5, 0.5, 0.5, 0.5});
  EXPECT_EQ(vi::nonadaptive_kofn_permutation(uniform, PartialAssignment(4, 2), 0),
            (vi::Permutation{1, 2, 0, 3}));
}

TEST(Permutations, CheapestFirstExamples) {
  const auto inst = binary_instance({3, 1, 2}, {0.5, 0.5, 0.5});
  EXPECT_EQ(vi::cheapest_first_permutation(inst, PartialAssignment(3, 2)),
            (vi::Permutation{1, 2, 0}));
  const auto flat = binary_instance({1, 1, 1}, {0.5, 0.5, 0.5});
  EXPECT_EQ(vi::cheapest_first_permutation(flat, PartialAssignment(3, 2)),
            (vi::Permutation{0, 1, 2}));
  const auto tested = PartialAssignment::from_entries(std::vector<int>{-1, 0, -1}, 2);
  EXPECT_EQ(vi::cheapest_first_permutation(inst, tested), (vi::Permutation{2, 0}));
}

// Walking the non-adaptive order costs at most twice SBB in expectation.
TEST(Permutations, NonadaptiveWithinTwiceSbb) {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const int n = 1 + static_cast<int>(seed % 9);
    const auto inst = ref::random_instance(seed, n, 2);
    const auto order = vi::nonadaptive_kofn_permutation(inst, PartialAssignment(n, 2), 0);
    const double walk = ref::sweep_expectation(inst, [&](std::span<const int> x) {
      PartialAssignment b(n, 2);
      double cost = 0.0;
      for (int v : order) {
        const auto p = vi::target_problem(inst, b, 0);
        if (p.k <= 0 || p.z <= 0) break;
        b.reveal(v, x[v]);
        cost += inst.cost(v);
      }
      return cost;
    });
    const double sbb = ref::sweep_expectation(inst, [&](std::span<const int> x) {
      PartialAssignment b(n, 2);
      return vi::sbb_evaluate(inst, b, 0, x).cost;
    });
    ASSERT_LE(walk, 2.0 * sbb + 1e-9) << "seed " << seed;
  }
}
