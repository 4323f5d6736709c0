#ifndef VOTEINSPECT_ORACLE_HPP
#define VOTEINSPECT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "voteinspect/election.hpp"
#include "voteinspect/strategies.hpp"

namespace voteinspect {

/// Thrown when an exact computation would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  std::size_t estimate() const { return estimate_; }

 private:
  std::size_t estimate_;
};

/// Upper bound on belief states (untested set, tallies) reachable from the
/// empty assignment: sum_t C(n,t) * C(t+d-1, d-1).
std::size_t estimate_belief_states(int voters, int candidates);

inline constexpr std::size_t kDefaultStateBudget = 2'000'000;
inline constexpr std::size_t kDefaultNodeBudget = 20'000'000;

/// Minimum expected inspection cost by dynamic programming over belief
/// states: V = 0 on certificates, else min_i c_i + sum_j p_ij V(b + (i<-j)).
/// The memo is keyed by the untested set and the tallies, which determine
/// both certificates and future dynamics.
class OptimalSolver {
 public:
  OptimalSolver(const Instance& instance, Objective objective,
                std::size_t state_budget = kDefaultStateBudget);

  double value(const PartialAssignment& b);
  /// Optimal next test (lowest index among ties), or nullopt on a certificate.
  std::optional<int> best_test(const PartialAssignment& b);

  std::size_t states() const { return memo_.size(); }

 private:
  double solve(PartialAssignment& b);
  std::uint64_t key(const PartialAssignment& b) const;

  const Instance* instance_;
  Objective objective_;
  int tally_bits_ = 0;
  std::unordered_map<std::uint64_t, double> memo_;
};

double optimal_expected_cost(const Instance& instance, Objective objective,
                             std::size_t state_budget = kDefaultStateBudget);

struct Probe {
  int voter = 0;
  int value = 0;
};

/// Deterministic next-test rule: given the revealed history, returns the
/// voter to inspect next or nullopt to stop.
using Policy = std::function<std::optional<int>(std::span<const Probe>)>;

/// Policy that replays a strategy against the recorded history and reports
/// the first voter the strategy asks for beyond it.
Policy replay_policy(const Instance& instance, Strategy strategy);

/// Policy following a DP-optimal decision tree.
Policy optimal_policy(const Instance& instance, Objective objective,
                      std::size_t state_budget = kDefaultStateBudget);

/// Expected cost of a policy: branches over the d outcomes of every test
/// weighted by p_ij. Throws std::logic_error if the policy re-tests a voter
/// or stops without a certificate, BudgetExceeded past node_budget nodes.
double exact_strategy_cost(const Policy& policy, const Instance& instance,
                           Objective objective,
                           std::size_t node_budget = kDefaultNodeBudget);
double exact_strategy_cost(const StrategyInfo& strategy, const Instance& instance,
                           std::size_t node_budget = kDefaultNodeBudget);

/// Counter-based sampling: trial t of a run seeded with s draws from
/// mt19937_64 seeded with splitmix64(s + (t+1) * 0x9E3779B97F4A7C15), one
/// 53-bit uniform per voter in index order, inverted over the cumulative
/// row. Trials are independent of evaluation order.
std::vector<int> sample_realization(const Instance& instance, std::uint64_t seed,
                                    std::uint64_t trial);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

MonteCarloEstimate monte_carlo_cost(const Strategy& strategy, const Instance& instance,
                                    std::size_t trials, std::uint64_t seed);

enum class Method { kExact, kMonteCarlo };
const char* to_string(Method method);

struct EvaluationReport {
  std::string algo;
  Method method = Method::kExact;
  double expected_cost = 0.0;
  std::optional<double> opt_cost;
  std::optional<double> ratio;
  std::size_t trials = 0;
  double std_error = 0.0;
};

/// expected / opt when opt > 0, 1 when both are 0.
std::optional<double> cost_ratio(double expected, std::optional<double> opt);

}  // namespace voteinspect

#endif  // VOTEINSPECT_ORACLE_HPP
