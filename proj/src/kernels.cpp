#include "voteinspect/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace voteinspect {

namespace {

// Sorts voters by key, ties by voter index.
void sort_by_key(std::vector<int>& voters, const std::vector<double>& key) {
  std::sort(voters.begin(), voters.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return a < b;
  });
}

// Lowest voter in {first k undecided of `success`} ∩ {first z of `failure`},
// skipping voters for which `tested` holds.
template <typename Tested>
int prefix_intersection(std::span<const int> success, std::span<const int> failure, int k,
                        int z, std::vector<char>& mark, Tested tested) {
  std::fill(mark.begin(), mark.end(), 0);
  int taken = 0;
  for (int v : success) {
    if (tested(v)) continue;
    mark[v] = 1;
    if (++taken == k) break;
  }
  int chosen = -1;
  taken = 0;
  for (int v : failure) {
    if (tested(v)) continue;
    if (mark[v] && (chosen < 0 || v < chosen)) chosen = v;
    if (++taken == z) break;
  }
  if (chosen < 0) throw std::logic_error("SBB prefixes do not intersect");
  return chosen;
}

}  // namespace

KofNProblem target_problem(const Instance& instance, const PartialAssignment& b,
                           int target) {
  const int n = instance.voters();
  KofNProblem problem;
  for (int i = 0; i < n; ++i) {
    if (!b.known(i)) problem.items.push_back({i, instance.cost(i), instance.prob(i, target)});
  }
  problem.k = majority_quota(n) - b.tally(target);
  problem.z = blocking_quota(n) - votes_against(b, target);
  return problem;
}

int sbb_next(const KofNProblem& problem) {
  const int m = static_cast<int>(problem.items.size());
  if (problem.k < 1 || problem.z < 1 || problem.k > m || problem.z > m) {
    throw std::invalid_argument("sbb_next needs an undecided problem (1 <= k, z <= " +
                                std::to_string(m) + "), got k=" +
                                std::to_string(problem.k) + ", z=" +
                                std::to_string(problem.z));
  }
  if (problem.k + problem.z != m + 1) {
    throw std::invalid_argument("k-of-n problem must satisfy k + z = items + 1");
  }
  std::vector<double> success(m);
  std::vector<double> failure(m);
  for (int t = 0; t < m; ++t) {
    success[t] = problem.items[t].cost / problem.items[t].p;
    failure[t] = problem.items[t].cost / (1.0 - problem.items[t].p);
  }
  // Rank positions by ratio, then by voter index.
  auto order = [&](const std::vector<double>& key) {
    std::vector<int> pos(m);
    std::iota(pos.begin(), pos.end(), 0);
    std::sort(pos.begin(), pos.end(), [&](int a, int b) {
      if (key[a] != key[b]) return key[a] < key[b];
      return problem.items[a].voter < problem.items[b].voter;
    });
    return pos;
  };
  const auto s = order(success);
  const auto f = order(failure);
  std::vector<char> mark(m, 0);
  for (int t = 0; t < problem.k; ++t) mark[s[t]] = 1;
  int chosen = -1;
  for (int t = 0; t < problem.z; ++t) {
    const int voter = problem.items[f[t]].voter;
    if (mark[f[t]] && (chosen < 0 || voter < chosen)) chosen = voter;
  }
  if (chosen < 0) throw std::logic_error("SBB prefixes do not intersect");
  return chosen;
}

Permutation ratio_order(const Instance& instance, const PartialAssignment& b, int target,
                        RatioKind kind) {
  const int n = instance.voters();
  std::vector<double> key(n, 0.0);
  Permutation order;
  for (int i = 0; i < n; ++i) {
    if (b.known(i)) continue;
    const double p = instance.prob(i, target);
    key[i] = instance.cost(i) / (kind == RatioKind::kSuccess ? p : 1.0 - p);
    order.push_back(i);
  }
  sort_by_key(order, key);
  return order;
}

KernelResult sbb_evaluate(Session& session, int target) {
  const Instance& instance = session.instance();
  const int n = instance.voters();
  const double start = session.spent();
  const auto by_success = ratio_order(instance, session.state(), target, RatioKind::kSuccess);
  const auto by_failure = ratio_order(instance, session.state(), target, RatioKind::kFailure);
  std::vector<char> mark(n, 0);
  for (;;) {
    const PartialAssignment& b = session.state();
    const int k = majority_quota(n) - b.tally(target);
    const int z = blocking_quota(n) - votes_against(b, target);
    if (k <= 0) return {true, session.spent() - start};
    if (z <= 0) return {false, session.spent() - start};
    const int next = prefix_intersection(by_success, by_failure, k, z, mark,
                                         [&](int v) { return b.known(v); });
    session.inspect(next);
  }
}

KernelResult sbb_evaluate(const Instance& instance, PartialAssignment& b, int target,
                          std::span<const int> realization) {
  RealizationSource source(realization);
  Session session(instance, source, Objective::kAbsolute, "sbb", b);
  const auto result = sbb_evaluate(session, target);
  b = session.state();
  return result;
}

KernelResult conjunction_evaluate(Session& session, int alpha, const StopRule& stop) {
  const double start = session.spent();
  const auto order =
      ratio_order(session.instance(), session.state(), alpha, RatioKind::kFailure);
  for (int voter : order) {
    if (stop && stop(session.state())) return {false, session.spent() - start};
    if (session.inspect(voter) != alpha) return {false, session.spent() - start};
  }
  return {true, session.spent() - start};
}

KernelResult conjunction_evaluate(const Instance& instance, PartialAssignment& b, int alpha,
                                  std::span<const int> realization) {
  RealizationSource source(realization);
  Session session(instance, source, Objective::kRelative, "conjunction", b);
  const auto result = conjunction_evaluate(session, alpha);
  b = session.state();
  return result;
}

Permutation modified_round_robin(std::span<const std::vector<int>> lists,
                                 std::span<const double> costs) {
  if (lists.empty()) throw std::invalid_argument("modified_round_robin needs at least one list");
  const std::size_t k = lists.size();
  std::vector<double> spent(k, 0.0);
  std::vector<std::size_t> next(k, 0);
  std::vector<char> seen(costs.size(), 0);
  Permutation out;
  for (;;) {
    std::size_t pick = k;
    double best = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (next[j] >= lists[j].size()) continue;
      const double key = spent[j] + costs[lists[j][next[j]]];
      if (pick == k || key < best) {
        pick = j;
        best = key;
      }
    }
    if (pick == k) break;
    const int voter = lists[pick][next[pick]++];
    spent[pick] += costs[voter];
    if (!seen.at(voter)) {
      seen[voter] = 1;
      out.push_back(voter);
    }
  }
  return out;
}

Permutation nonadaptive_kofn_permutation(const Instance& instance,
                                         const PartialAssignment& b, int target) {
  const std::vector<int> lists[] = {ratio_order(instance, b, target, RatioKind::kSuccess),
                                    ratio_order(instance, b, target, RatioKind::kFailure)};
  return modified_round_robin(lists, instance.costs());
}

Permutation cheapest_first_permutation(const Instance& instance, const PartialAssignment& b) {
  Permutation order = b.unknowns();
  std::vector<double> key(instance.costs().begin(), instance.costs().end());
  sort_by_key(order, key);
  return order;
}

}  // namespace voteinspect
