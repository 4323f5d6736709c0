// voteinspect: instance generation, experiments, exact optimum and transcripts.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "voteinspect/bench.hpp"
#include "voteinspect/instance_io.hpp"
#include "voteinspect/oracle.hpp"
#include "voteinspect/session.hpp"
#include "voteinspect/strategies.hpp"

namespace vi = voteinspect;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBound = 2;
constexpr int kExitBudget = 3;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_realization(const std::string& text, const vi::Instance& inst) {
  std::vector<int> votes;
  for (const auto& cell : split_list(text)) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cell.size()) throw std::invalid_argument("realization: bad value '" + cell + "'");
    if (value < 1 || value > inst.candidates()) {
      throw std::invalid_argument("realization: value " + cell + " outside 1.." +
                                  std::to_string(inst.candidates()));
    }
    votes.push_back(value - 1);
  }
  if (static_cast<int>(votes.size()) != inst.voters()) {
    throw std::invalid_argument("realization: expected " + std::to_string(inst.voters()) +
                                " values, got " + std::to_string(votes.size()));
  }
  return votes;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-cost vote inspection for majority elections"};
  app.require_subcommand(1);

  vi::GeneratorSpec gen_spec;
  std::string gen_kind = "random";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--kind", gen_kind, "random or adversarial")
      ->check(CLI::IsMember({"random", "adversarial"}));
  gen->add_option("--n", gen_spec.n, "Number of voters")->required();
  gen->add_option("--d", gen_spec.d, "Number of candidates")->required();
  gen->add_option("--epsilon", gen_spec.epsilon, "Adversarial epsilon");
  gen->add_option("--seed", gen_spec.seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output path")->required();

  std::string run_glob;
  std::string run_algos;
  std::string run_method = "exact";
  std::string run_out;
  bool assert_bounds = false;
  bool no_timestamp = false;
  vi::ExperimentConfig config;
  auto* run = app.add_subcommand("run", "Evaluate strategies on instance files");
  run->add_option("--instances", run_glob, "Glob of instance files")->required();
  run->add_option("--algos", run_algos, "Comma-separated strategy names")->required();
  run->add_option("--method", run_method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  run->add_option("--trials", config.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  run->add_option("--seed", config.seed, "Monte Carlo seed");
  run->add_option("--state-budget", config.state_budget, "Belief-state budget of the optimum");
  run->add_option("--node-budget", config.node_budget, "Decision-tree node budget");
  run->add_flag("--assert-bounds", assert_bounds, "Exit 2 if a ratio exceeds its bound");
  run->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp line");
  run->add_option("--out", run_out, "Output CSV path")->required();

  std::string oracle_path;
  std::string oracle_objective = "abs";
  std::size_t oracle_budget = vi::kDefaultStateBudget;
  auto* oracle = app.add_subcommand("oracle", "Print the optimal expected cost");
  oracle->add_option("--instance", oracle_path, "Instance file")->required();
  oracle->add_option("--objective", oracle_objective, "abs or rel")
      ->check(CLI::IsMember({"abs", "rel"}));
  oracle->add_option("--state-budget", oracle_budget, "Belief-state budget");

  std::string tr_path;
  std::string tr_algo;
  std::string tr_realization;
  auto* transcript = app.add_subcommand("transcript", "Print the transcript of one run");
  transcript->add_option("--instance", tr_path, "Instance file")->required();
  transcript->add_option("--algo", tr_algo, "Strategy name")->required();
  transcript->add_option("--realization", tr_realization, "Votes as 1-based CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      gen_spec.kind = vi::parse_generator_kind(gen_kind);
      vi::save_instance(vi::generate(gen_spec), gen_out);
      return kExitOk;
    }

    if (oracle->parsed()) {
      const auto inst = vi::load_instance(oracle_path);
      const double value = vi::optimal_expected_cost(
          inst, vi::parse_objective(oracle_objective.c_str()), oracle_budget);
      std::printf("%.17g\n", value);
      return kExitOk;
    }

    if (transcript->parsed()) {
      const auto inst = vi::load_instance(tr_path);
      const auto& algo = vi::find_strategy(tr_algo);
      const auto votes = parse_realization(tr_realization, inst);
      std::cout << vi::transcript_json(vi::run_strategy(algo, inst, votes)) << '\n';
      return kExitOk;
    }

    config.algos = split_list(run_algos);
    config.method = run_method == "exact" ? vi::Method::kExact : vi::Method::kMonteCarlo;
    for (const auto& name : config.algos) vi::find_strategy(name);
    std::vector<vi::NamedInstance> instances;
    for (const auto& path : vi::expand_glob(run_glob)) {
      instances.push_back({path, vi::load_instance(path)});
    }
    const auto rows = vi::run_experiment(instances, config);
    for (const auto& row : rows) {
      if (row.opt_over_budget) {
        std::cerr << "warning: " << row.instance_id << ": optimum for " << row.algo
                  << " exceeds the state budget; opt_cost left empty\n";
      }
    }
    std::ofstream out(run_out);
    if (!out) throw std::runtime_error("cannot write " + run_out);
    std::optional<std::string> comment;
    if (!no_timestamp) comment = "generated " + utc_timestamp();
    vi::write_csv(out, rows, comment);
    out.close();
    if (!out) throw std::runtime_error("failed writing " + run_out);

    if (assert_bounds) {
      const auto bad = vi::bound_violations(rows);
      for (const auto& row : bad) {
        std::cerr << "bound violated: " << row.instance_id << ' ' << row.algo << " ratio "
                  << *row.ratio << " > " << row.bound << '\n';
      }
      if (!bad.empty()) return kExitBound;
    }
    return kExitOk;
  } catch (const vi::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
