#ifndef VOTEINSPECT_GOAL_HPP
#define VOTEINSPECT_GOAL_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "voteinspect/election.hpp"

namespace voteinspect {

/// Utility values. The composed absolute-majority goal has
/// Q = (floor(n/2)+1)^d * d*ceil(n/2), which exceeds 64 bits well inside
/// the supported range (n <= 64, d <= 16).
using Utility = __int128;

std::string to_string(Utility value);

/// Counts of revealed values and the number of unrevealed positions.
struct TallyView {
  std::span<const int> tallies;
  int unknown = 0;
};

/// A monotone submodular utility g over partial assignments with goal value
/// Q: g(all unknown) = 0 and g(x) = Q on every full assignment.
///
/// All utilities built here are anonymous, i.e. they depend on the tallies
/// and the unknown count only. Revealing value v at any unknown position
/// therefore has the same marginal gain.
class GoalFunction {
 public:
  using Evaluator = std::function<Utility(const TallyView&)>;

  GoalFunction(Evaluator evaluator, Utility goal);

  Utility goal() const { return goal_; }
  Utility evaluate(const TallyView& view) const { return (*evaluator_)(view); }
  Utility evaluate(const PartialAssignment& b) const {
    return evaluate(TallyView{b.tallies(), b.unknown_count()});
  }
  bool satisfied(const PartialAssignment& b) const { return evaluate(b) == goal_; }

  /// g(b with one unknown position set to value) - g(b).
  Utility gain(const PartialAssignment& b, int value) const;

 private:
  std::shared_ptr<const Evaluator> evaluator_;
  Utility goal_;
};

/// Votes for j capped at floor(n/2)+1; reaches Q iff j holds an absolute majority.
GoalFunction g_for(int voters, int j);

/// Votes for candidates other than j capped at ceil(n/2); reaches Q iff j
/// is ruled out as absolute-majority winner. This is the quantity written
/// g_j in the absolute-majority analysis and g_{j0} in the cover construction.
GoalFunction g_against(int voters, int j);

/// OR construction: Q = prod Q_j, g = Q - prod (Q_j - g_j).
GoalFunction or_combine(std::span<const GoalFunction> goals);
/// AND construction: Q = sum Q_j, g = sum g_j.
GoalFunction and_combine(std::span<const GoalFunction> goals);

/// OR(OR_j g_for(j), AND_j g_against(j)); reaches Q iff abs_certificate(b) exists.
GoalFunction abs_majority_goal(int voters, int candidates);

/// min{N_j + sum_{l != k} N_l, n+1}; reaches n+1 iff j surely out-polls k.
GoalFunction g_pair(int voters, int j, int k);

/// Ternary linear threshold over m variables valued {0,1,2}: decides
/// sum x_i >= theta. Value v of the partial assignment is the variable value.
GoalFunction ternary_threshold_goal(int theta, int variables);

/// Distances of the per-candidate (absolute) or per-pair (relative)
/// utilities from their goals.
struct DistanceProfile {
  /// Absolute: m_j = ceil(n/2) - min(votes against j, ceil(n/2)).
  std::vector<int> m;
  /// Relative: pair[j][k] = n+1 - g_pair(j,k)(b); diagonal is 0.
  std::vector<std::vector<int>> pair;
  /// Relative: M_j = max_k pair[j][k].
  std::vector<int> max_pair;
};

DistanceProfile distances(const PartialAssignment& b, Objective objective);

}  // namespace voteinspect

#endif  // VOTEINSPECT_GOAL_HPP
