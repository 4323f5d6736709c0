#ifndef VOTEINSPECT_DUAL_GREEDY_HPP
#define VOTEINSPECT_DUAL_GREEDY_HPP

#include <span>
#include <vector>

#include "voteinspect/election.hpp"
#include "voteinspect/goal.hpp"

namespace voteinspect {

/// Items of a stochastic submodular cover problem: test costs and, per item,
/// the distribution over the goal's value alphabet.
struct CoverProblem {
  std::vector<double> costs;
  std::vector<std::vector<double>> value_probs;

  int size() const { return static_cast<int>(costs.size()); }
};

/// Every voter of an election instance as a cover item.
CoverProblem cover_problem(const Instance& instance);

/// Adaptive Dual Greedy, driven one test at a time.
///
/// Each untested item i carries a charge a_i <= c_i. At every step the
/// expected marginal utility w_i of each untested item is computed, all
/// charges with w_i > 0 are raised by theta * w_i where
/// theta = min_i (c_i - a_i) / w_i, and the item attaining the minimum
/// (lowest index on ties) is tested next. The run ends when g(b) = Q.
class DualGreedy {
 public:
  static constexpr double kChargeSlack = 1e-9;

  DualGreedy(GoalFunction goal, CoverProblem problem);
  DualGreedy(GoalFunction goal, CoverProblem problem, PartialAssignment start);

  bool done() const { return goal_.satisfied(state_); }

  /// Raises the charges and returns the item to test next. Throws
  /// std::logic_error if the goal is unmet but no test can make progress.
  int select();
  /// Records the outcome of the item returned by the last select().
  void observe(int item, int value);

  const GoalFunction& goal() const { return goal_; }
  const PartialAssignment& state() const { return state_; }
  double spent() const { return spent_; }
  std::span<const double> charges() const { return charges_; }
  const std::vector<int>& sequence() const { return sequence_; }
  /// Charge of the selected item at its selection time.
  double selected_charge() const { return selected_charge_; }

 private:
  GoalFunction goal_;
  CoverProblem problem_;
  PartialAssignment state_;
  std::vector<double> charges_;
  std::vector<int> sequence_;
  double spent_ = 0.0;
  int pending_ = -1;
  double selected_charge_ = 0.0;
};

struct CoverRun {
  PartialAssignment state;
  double cost = 0.0;
  std::vector<int> sequence;
};

/// Runs ADG to completion against a full realization of item values.
CoverRun adg_run(const GoalFunction& goal, const CoverProblem& problem,
                 const PartialAssignment& start, std::span<const int> realization);

/// One prefix S of ADG's test sequence C(x) on realization x:
/// numerator = sum_{i in C(x)-S} [g(x, S+i) - g(x, S)], denominator = Q - g(x, S).
struct RatioSample {
  std::size_t prefix = 0;
  Utility numerator = 0;
  Utility denominator = 0;
  double ratio = 0.0;
};

/// Ratio samples for every proper prefix of ADG's run on realization x,
/// starting from the all-unknown assignment.
std::vector<RatioSample> adg_ratio_samples(const GoalFunction& goal,
                                           const CoverProblem& problem,
                                           std::span<const int> realization);

}  // namespace voteinspect

#endif  // VOTEINSPECT_DUAL_GREEDY_HPP
