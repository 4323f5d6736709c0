#ifndef VOTEINSPECT_STRATEGIES_HPP
#define VOTEINSPECT_STRATEGIES_HPP

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voteinspect/election.hpp"
#include "voteinspect/session.hpp"

namespace voteinspect {

/// State after Phase 1: votes inspected in increasing (cost, index) order
/// until a certificate exists or at most two candidates remain in contention.
/// alpha/beta are the two strongest candidates (highest tally, lowest index
/// on ties).
struct PhaseOneResult {
  bool decided = false;
  int alpha = 0;
  int beta = 1;
};

/// Runs Phase 1 on the session.
///
/// Absolute objective: stops once at most two candidates are viable.
/// Relative objective: stops once at most two candidates can still reach the
/// top tally (win or tie), which makes "alpha out-polls beta" equivalent to
/// "alpha wins" afterwards.
PhaseOneResult phase1(Session& session);

struct PhaseOneRun {
  PartialAssignment state;
  double cost = 0.0;
  PhaseOneResult result;
};
PhaseOneRun phase1(const Instance& instance, std::span<const int> realization,
                   Objective objective);

// Complete strategies. Each returns the transcript of one run; the result is
// the certificate of the final assignment.

/// Phase 1, then SBB on alpha and (if needed) on beta. Adaptive 4-approx.
Transcript abs4(const Instance& instance, VoteSource& source);
/// Phase 1, then non-adaptive 2-approx k-of-n orders for alpha and beta.
/// At most 3 rounds, 6-approx.
Transcript abs6_threeround(const Instance& instance, VoteSource& source);
/// Phase 1, then one round-robin order over four ratio orderings.
/// At most 2 rounds, 10-approx.
Transcript abs10_tworound(const Instance& instance, VoteSource& source);
/// Phase 1, ADG on the ternary threshold "alpha out-polls beta", then the
/// conjunction check for beta vs. tie. Adaptive 8-approx.
Transcript rel8(const Instance& instance, VoteSource& source);
/// Cheapest-first until a certificate exists.
Transcript naive_cheapest(const Instance& instance, VoteSource& source, Objective objective);
/// ADG on the composed absolute-majority goal.
Transcript adg_abs(const Instance& instance, VoteSource& source);
/// SBB on candidate 1 alone; evaluates the election fully when d = 2 and n is odd.
Transcript sbb_two(const Instance& instance, VoteSource& source);

using Strategy = std::function<Transcript(const Instance&, VoteSource&)>;

struct StrategyInfo {
  std::string name;
  Objective objective;
  Strategy run;
  /// Proven approximation factor on the given instance; 0 when the strategy
  /// carries no guarantee.
  std::function<double(const Instance&)> bound;
};

/// abs4, abs6, abs10, rel8, naive_abs, naive_rel, adg_abs, sbb2.
const std::vector<StrategyInfo>& strategy_catalog();
/// Throws std::invalid_argument listing the known names.
const StrategyInfo& find_strategy(std::string_view name);

Transcript run_strategy(const StrategyInfo& strategy, const Instance& instance,
                        std::span<const int> realization);

}  // namespace voteinspect

#endif  // VOTEINSPECT_STRATEGIES_HPP
