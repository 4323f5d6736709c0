#ifndef VOTEINSPECT_KERNELS_HPP
#define VOTEINSPECT_KERNELS_HPP

#include <functional>
#include <span>
#include <vector>

#include "voteinspect/election.hpp"
#include "voteinspect/session.hpp"

namespace voteinspect {

/// Duplicate-free sequence of voter indices.
using Permutation = std::vector<int>;

/// "At least k of the remaining voters succeed", with z = |items| - k + 1
/// failures refuting it.
struct KofNProblem {
  struct Item {
    int voter = 0;
    double cost = 0.0;
    double p = 0.5;  // success probability
  };
  std::vector<Item> items;
  int k = 0;
  int z = 0;
};

/// Reduction of "does target win an absolute majority" on the untested
/// voters of b: success = vote for target, k = floor(n/2)+1 - N_target,
/// z = ceil(n/2) - (votes against target). k or z may be <= 0 when the
/// question is already decided.
KofNProblem target_problem(const Instance& instance, const PartialAssignment& b,
                           int target);

/// Optimal next test for an undecided k-of-n problem: a voter lying both in
/// the k first items by c/p and in the z first items by c/(1-p). Ties in
/// ratio and in the intersection go to the lowest voter index.
int sbb_next(const KofNProblem& problem);

enum class RatioKind {
  kSuccess,  // increasing c_i / p_{i,target}
  kFailure,  // increasing c_i / (1 - p_{i,target})
};

/// Untested voters sorted by the given ratio for target, ties by index.
Permutation ratio_order(const Instance& instance, const PartialAssignment& b, int target,
                        RatioKind kind);

struct KernelResult {
  bool verdict = false;
  double cost = 0.0;
};

/// Decides whether target wins an absolute majority with the SBB rule.
/// verdict is true when target is certified as winner.
KernelResult sbb_evaluate(Session& session, int target);
KernelResult sbb_evaluate(const Instance& instance, PartialAssignment& b, int target,
                          std::span<const int> realization);

using StopRule = std::function<bool(const PartialAssignment&)>;

/// Tests the untested voters in increasing c_i/(1-p_{i,alpha}) until one is
/// not for alpha (verdict false) or all are for alpha (verdict true). An
/// optional stop rule is checked before every test and ends the loop early
/// (verdict false).
KernelResult conjunction_evaluate(Session& session, int alpha, const StopRule& stop = {});
KernelResult conjunction_evaluate(const Instance& instance, PartialAssignment& b, int alpha,
                                  std::span<const int> realization);

/// Cost-sensitive round robin: keeps a spent-cost accumulator per list and
/// repeatedly takes the next element of the list minimizing accumulator plus
/// that element's cost (lowest list index on ties). Later duplicates are
/// dropped.
Permutation modified_round_robin(std::span<const std::vector<int>> lists,
                                 std::span<const double> costs);

/// Non-adaptive 2-approximate order for deciding whether target wins.
Permutation nonadaptive_kofn_permutation(const Instance& instance,
                                         const PartialAssignment& b, int target);

/// Untested voters by increasing (cost, index).
Permutation cheapest_first_permutation(const Instance& instance, const PartialAssignment& b);

}  // namespace voteinspect

#endif  // VOTEINSPECT_KERNELS_HPP
