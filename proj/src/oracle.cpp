#include "voteinspect/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

namespace voteinspect {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

PartialAssignment replay_state(const Instance& instance, std::span<const Probe> history) {
  PartialAssignment b(instance.voters(), instance.candidates());
  for (const Probe& p : history) b.reveal(p.voter, p.value);
  return b;
}

// Serves recorded votes; asking beyond the record raises PendingProbe.
struct PendingProbe {
  int voter;
};

class ScriptedSource final : public VoteSource {
 public:
  explicit ScriptedSource(std::span<const Probe> history) : history_(history) {}

  int vote(int voter) override {
    if (next_ == history_.size()) throw PendingProbe{voter};
    const Probe& p = history_[next_++];
    if (p.voter != voter) {
      throw std::logic_error("strategy is not a deterministic function of its history");
    }
    return p.value;
  }

 private:
  std::span<const Probe> history_;
  std::size_t next_ = 0;
};

class PolicyWalker {
 public:
  PolicyWalker(const Policy& policy, const Instance& instance, Objective objective,
               std::size_t budget)
      : policy_(policy),
        instance_(instance),
        objective_(objective),
        budget_(budget),
        state_(instance.voters(), instance.candidates()) {}

  double expected() {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("exact strategy evaluation exceeded " + std::to_string(budget_) +
                               " decision-tree nodes",
                           nodes_);
    }
    const auto next = policy_(history_);
    if (!next) {
      if (!certificate(state_, objective_)) {
        throw std::logic_error("strategy stopped without a certificate");
      }
      return 0.0;
    }
    const int voter = *next;
    if (voter < 0 || voter >= instance_.voters() || state_.known(voter)) {
      throw std::logic_error("strategy tested voter " + std::to_string(voter + 1) +
                             " which is invalid or already tested");
    }
    double total = instance_.cost(voter);
    for (int j = 0; j < instance_.candidates(); ++j) {
      state_.reveal(voter, j);
      history_.push_back({voter, j});
      total += instance_.prob(voter, j) * expected();
      history_.pop_back();
      state_.conceal(voter);
    }
    return total;
  }

 private:
  const Policy& policy_;
  const Instance& instance_;
  Objective objective_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  PartialAssignment state_;
  std::vector<Probe> history_;
};

}  // namespace

std::size_t estimate_belief_states(int voters, int candidates) {
  double total = 0.0;
  for (int t = 0; t <= voters; ++t) {
    total += binomial(voters, t) * binomial(t + candidates - 1, candidates - 1);
  }
  if (total >= static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
    return std::numeric_limits<std::size_t>::max() / 2;
  }
  return static_cast<std::size_t>(total);
}

OptimalSolver::OptimalSolver(const Instance& instance, Objective objective,
                             std::size_t state_budget)
    : instance_(&instance), objective_(objective) {
  const int n = instance.voters();
  const int d = instance.candidates();
  const std::size_t estimate = estimate_belief_states(n, d);
  tally_bits_ = std::bit_width(static_cast<unsigned>(n));
  const int key_bits = n + tally_bits_ * (d - 1);
  if (estimate > state_budget || key_bits > 64) {
    throw BudgetExceeded("optimal DP needs about " + std::to_string(estimate) +
                             " belief states (budget " + std::to_string(state_budget) + ")",
                         estimate);
  }
  memo_.reserve(estimate);
}

std::uint64_t OptimalSolver::key(const PartialAssignment& b) const {
  std::uint64_t k = 0;
  const int d = b.value_count();
  for (int j = 0; j + 1 < d; ++j) k = (k << tally_bits_) | static_cast<std::uint64_t>(b.tally(j));
  for (int i = 0; i < b.size(); ++i) k = (k << 1) | (b.known(i) ? 0u : 1u);
  return k;
}

double OptimalSolver::solve(PartialAssignment& b) {
  if (certificate(b, objective_)) return 0.0;
  const std::uint64_t k = key(b);
  if (const auto it = memo_.find(k); it != memo_.end()) return it->second;
  double best = std::numeric_limits<double>::infinity();
  const Instance& inst = *instance_;
  for (int i = 0; i < b.size(); ++i) {
    if (b.known(i)) continue;
    double total = inst.cost(i);
    for (int j = 0; j < inst.candidates(); ++j) {
      b.reveal(i, j);
      total += inst.prob(i, j) * solve(b);
      b.conceal(i);
    }
    best = std::min(best, total);
  }
  memo_.emplace(k, best);
  return best;
}

double OptimalSolver::value(const PartialAssignment& b) {
  PartialAssignment scratch = b;
  return solve(scratch);
}

std::optional<int> OptimalSolver::best_test(const PartialAssignment& b) {
  if (certificate(b, objective_)) return std::nullopt;
  PartialAssignment scratch = b;
  const Instance& inst = *instance_;
  int best = -1;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < scratch.size(); ++i) {
    if (scratch.known(i)) continue;
    double total = inst.cost(i);
    for (int j = 0; j < inst.candidates(); ++j) {
      scratch.reveal(i, j);
      total += inst.prob(i, j) * solve(scratch);
      scratch.conceal(i);
    }
    if (best < 0 || total < best_value - 1e-12 * std::max(1.0, std::abs(best_value))) {
      best_value = total;
      best = i;
    }
  }
  return best;
}

double optimal_expected_cost(const Instance& instance, Objective objective,
                             std::size_t state_budget) {
  OptimalSolver solver(instance, objective, state_budget);
  return solver.value(PartialAssignment(instance.voters(), instance.candidates()));
}

Policy replay_policy(const Instance& instance, Strategy strategy) {
  return [&instance, strategy = std::move(strategy)](
             std::span<const Probe> history) -> std::optional<int> {
    ScriptedSource source(history);
    try {
      strategy(instance, source);
    } catch (const PendingProbe& pending) {
      return pending.voter;
    }
    return std::nullopt;
  };
}

Policy optimal_policy(const Instance& instance, Objective objective,
                      std::size_t state_budget) {
  auto solver = std::make_shared<OptimalSolver>(instance, objective, state_budget);
  return [&instance, solver](std::span<const Probe> history) {
    return solver->best_test(replay_state(instance, history));
  };
}

double exact_strategy_cost(const Policy& policy, const Instance& instance,
                           Objective objective, std::size_t node_budget) {
  PolicyWalker walker(policy, instance, objective, node_budget);
  return walker.expected();
}

double exact_strategy_cost(const StrategyInfo& strategy, const Instance& instance,
                           std::size_t node_budget) {
  return exact_strategy_cost(replay_policy(instance, strategy.run), instance,
                             strategy.objective, node_budget);
}

std::vector<int> sample_realization(const Instance& instance, std::uint64_t seed,
                                    std::uint64_t trial) {
  std::mt19937_64 rng(splitmix64(seed + (trial + 1) * 0x9E3779B97F4A7C15ULL));
  std::vector<int> votes(instance.voters());
  for (int i = 0; i < instance.voters(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto row = instance.row(i);
    double cumulative = 0.0;
    int value = instance.candidates() - 1;
    for (int j = 0; j + 1 < instance.candidates(); ++j) {
      cumulative += row[j];
      if (u < cumulative) {
        value = j;
        break;
      }
    }
    votes[i] = value;
  }
  return votes;
}

MonteCarloEstimate monte_carlo_cost(const Strategy& strategy, const Instance& instance,
                                    std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("monte carlo needs at least one trial");
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto votes = sample_realization(instance, seed, t);
    RealizationSource source(votes);
    const double cost = strategy(instance, source).cost();
    const double delta = cost - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (cost - mean);
  }
  MonteCarloEstimate out;
  out.mean = mean;
  out.trials = trials;
  out.std_error = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) /
                                         static_cast<double>(trials))
                             : 0.0;
  return out;
}

const char* to_string(Method method) {
  return method == Method::kExact ? "exact" : "mc";
}

std::optional<double> cost_ratio(double expected, std::optional<double> opt) {
  if (!opt) return std::nullopt;
  if (*opt > 0.0) return expected / *opt;
  if (expected == 0.0) return 1.0;
  return std::nullopt;
}

}  // namespace voteinspect
