#include "voteinspect/bench.hpp"

#include <glob.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "voteinspect/strategies.hpp"

namespace voteinspect {

namespace {

// Uniform in [0, 1) with 53 random bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> simplex_row(std::mt19937_64& rng, int d) {
  std::vector<double> row(d);
  for (;;) {
    double total = 0.0;
    for (double& x : row) {
      x = -std::log1p(-unit(rng));
      total += x;
    }
    bool interior = total > 0.0;
    for (double& x : row) {
      x /= total;
      interior = interior && x > 0.0 && x < 1.0;
    }
    if (interior) return row;
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* to_string(GeneratorKind kind) {
  return kind == GeneratorKind::kRandom ? "random" : "adversarial";
}

GeneratorKind parse_generator_kind(const std::string& text) {
  if (text == "random") return GeneratorKind::kRandom;
  if (text == "adversarial") return GeneratorKind::kAdversarial;
  throw std::invalid_argument("unknown generator kind '" + text +
                              "' (expected random or adversarial)");
}

void validate(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::kRandom) {
    if (spec.n < 1) throw std::invalid_argument("random instances need n >= 1");
    if (spec.d < 2) throw std::invalid_argument("random instances need d >= 2");
    return;
  }
  if (spec.d != 2) throw std::invalid_argument("adversarial instances have d = 2");
  if (spec.n < 1 || spec.n % 2 == 0) {
    throw std::invalid_argument("adversarial instances need an odd n");
  }
  if (!(spec.epsilon > 0.0 && spec.epsilon < 0.5)) {
    throw std::invalid_argument("adversarial epsilon must lie in (0, 0.5)");
  }
}

Instance generate(const GeneratorSpec& spec) {
  validate(spec);
  std::vector<double> costs;
  std::vector<std::vector<double>> probs;
  if (spec.kind == GeneratorKind::kAdversarial) {
    const double eps = spec.epsilon;
    const int half = (spec.n - 1) / 2;
    for (int i = 0; i < half; ++i) {
      costs.push_back(eps);
      probs.push_back({1.0 - eps, eps});
    }
    for (int i = 0; i < half; ++i) {
      costs.push_back(1.0 - eps);
      probs.push_back({eps, 1.0 - eps});
    }
    costs.push_back(1.0);
    probs.push_back({1.0 - eps, eps});
    return Instance(std::move(costs), std::move(probs));
  }
  std::mt19937_64 rng(spec.seed);
  for (int i = 0; i < spec.n; ++i) {
    costs.push_back(1.0 - unit(rng));
    probs.push_back(simplex_row(rng, spec.d));
  }
  return Instance(std::move(costs), std::move(probs));
}

std::vector<ResultRow> run_experiment(std::span<const NamedInstance> instances,
                                      const ExperimentConfig& config) {
  std::vector<const StrategyInfo*> algos;
  for (const auto& name : config.algos) algos.push_back(&find_strategy(name));

  std::vector<ResultRow> rows;
  for (const NamedInstance& item : instances) {
    const Instance& inst = item.instance;
    std::optional<double> opt[2];
    bool over[2] = {false, false};
    bool tried[2] = {false, false};
    for (const StrategyInfo* algo : algos) {
      ResultRow row;
      row.instance_id = item.id;
      row.n = inst.voters();
      row.d = inst.candidates();
      row.algo = algo->name;
      row.method = config.method;
      row.seed = config.seed;
      row.bound = algo->bound(inst);
      if (config.method == Method::kExact) {
        row.expected_cost = exact_strategy_cost(*algo, inst, config.node_budget);
        const int slot = algo->objective == Objective::kAbsolute ? 0 : 1;
        if (!tried[slot]) {
          tried[slot] = true;
          try {
            opt[slot] = optimal_expected_cost(inst, algo->objective, config.state_budget);
          } catch (const BudgetExceeded&) {
            over[slot] = true;
          }
        }
        row.opt_cost = opt[slot];
        row.opt_over_budget = over[slot];
        row.ratio = cost_ratio(row.expected_cost, row.opt_cost);
      } else {
        const auto estimate = monte_carlo_cost(algo->run, inst, config.trials, config.seed);
        row.expected_cost = estimate.mean;
        row.std_error = estimate.std_error;
        row.trials = estimate.trials;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ResultRow> bound_violations(std::span<const ResultRow> rows) {
  std::vector<ResultRow> out;
  for (const ResultRow& row : rows) {
    if (row.ratio && row.bound > 0.0 && *row.ratio > row.bound + kBoundTolerance) {
      out.push_back(row);
    }
  }
  return out;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows,
               const std::optional<std::string>& comment) {
  if (comment) out << "# " << *comment << '\n';
  out << "instance_id,n,d,algo,method,expected_cost,opt_cost,ratio,trials,seed\n";
  for (const ResultRow& row : rows) {
    out << row.instance_id << ',' << row.n << ',' << row.d << ',' << row.algo << ','
        << to_string(row.method) << ',' << format_double(row.expected_cost) << ','
        << (row.opt_cost ? format_double(*row.opt_cost) : "") << ','
        << (row.ratio ? format_double(*row.ratio) : "") << ',' << row.trials << ','
        << row.seed << '\n';
  }
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t result{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &result);
  std::vector<std::string> paths;
  if (rc == 0) {
    for (std::size_t i = 0; i < result.gl_pathc; ++i) paths.emplace_back(result.gl_pathv[i]);
  }
  globfree(&result);
  if (rc == GLOB_NOMATCH) throw std::invalid_argument("no files match '" + pattern + "'");
  if (rc != 0) throw std::runtime_error("glob failed for '" + pattern + "'");
  return paths;
}

}  // namespace voteinspect
