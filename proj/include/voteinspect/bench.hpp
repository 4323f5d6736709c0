#ifndef VOTEINSPECT_BENCH_HPP
#define VOTEINSPECT_BENCH_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "voteinspect/election.hpp"
#include "voteinspect/oracle.hpp"

namespace voteinspect {

enum class GeneratorKind { kRandom, kAdversarial };

const char* to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& text);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRandom;
  int n = 1;
  int d = 2;
  std::uint64_t seed = 0;
  double epsilon = 0.1;
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const GeneratorSpec& spec);

/// random: costs uniform in (0, 1], rows uniform on the open simplex.
/// adversarial (d = 2, n odd): (n-1)/2 voters with p = (1-eps, eps) and cost
/// eps, (n-1)/2 with p = (eps, 1-eps) and cost 1-eps, then one voter with
/// p = (1-eps, eps) and cost 1.
Instance generate(const GeneratorSpec& spec);

struct ResultRow {
  std::string instance_id;
  int n = 0;
  int d = 0;
  std::string algo;
  Method method = Method::kExact;
  double expected_cost = 0.0;
  std::optional<double> opt_cost;
  std::optional<double> ratio;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;
  /// Proven approximation factor of the algorithm on this instance, 0 if none.
  double bound = 0.0;
  /// The optimum was skipped because it exceeded the state budget.
  bool opt_over_budget = false;
};

struct ExperimentConfig {
  std::vector<std::string> algos;
  Method method = Method::kExact;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t node_budget = kDefaultNodeBudget;
};

struct NamedInstance {
  std::string id;
  Instance instance;
};

/// One row per (instance, algo) in input order. Exact rows carry the optimum
/// for the algorithm's objective when it fits the state budget. A strategy
/// whose decision tree exceeds the node budget raises BudgetExceeded.
std::vector<ResultRow> run_experiment(std::span<const NamedInstance> instances,
                                      const ExperimentConfig& config);

/// Rows whose ratio exceeds their algorithm's proven factor by more than 1e-9.
std::vector<ResultRow> bound_violations(std::span<const ResultRow> rows);

inline constexpr double kBoundTolerance = 1e-9;

/// CSV with header instance_id,n,d,algo,method,expected_cost,opt_cost,ratio,
/// trials,seed. Doubles are printed with 17 significant digits; absent
/// values are empty cells. An optional first line "# <comment>" precedes it.
void write_csv(std::ostream& out, std::span<const ResultRow> rows,
               const std::optional<std::string>& comment = std::nullopt);

/// Files matching a shell glob, sorted. Throws if nothing matches.
std::vector<std::string> expand_glob(const std::string& pattern);

}  // namespace voteinspect

#endif  // VOTEINSPECT_BENCH_HPP
