#include "voteinspect/dual_greedy.hpp"

#include <limits>
#include <stdexcept>

namespace voteinspect {

CoverProblem cover_problem(const Instance& instance) {
  CoverProblem problem;
  for (int i = 0; i < instance.voters(); ++i) {
    problem.costs.push_back(instance.cost(i));
    const auto row = instance.row(i);
    problem.value_probs.emplace_back(row.begin(), row.end());
  }
  return problem;
}

DualGreedy::DualGreedy(GoalFunction goal, CoverProblem problem)
    : DualGreedy(goal, problem,
                 PartialAssignment(problem.size(), problem.value_probs.empty()
                                                       ? 1
                                                       : static_cast<int>(
                                                             problem.value_probs[0].size()))) {}

DualGreedy::DualGreedy(GoalFunction goal, CoverProblem problem, PartialAssignment start)
    : goal_(std::move(goal)),
      problem_(std::move(problem)),
      state_(std::move(start)),
      charges_(problem_.costs.size(), 0.0) {
  if (problem_.value_probs.size() != problem_.costs.size() ||
      state_.size() != problem_.size()) {
    throw std::invalid_argument("cover problem and start assignment sizes differ");
  }
  for (const auto& row : problem_.value_probs) {
    if (static_cast<int>(row.size()) != state_.value_count()) {
      throw std::invalid_argument("cover item distribution does not match the value alphabet");
    }
  }
}

int DualGreedy::select() {
  if (pending_ >= 0) throw std::logic_error("previous selection was not observed");
  if (done()) throw std::logic_error("goal already reached");

  const int values = state_.value_count();
  std::vector<double> gains(values);
  for (int v = 0; v < values; ++v) gains[v] = static_cast<double>(goal_.gain(state_, v));

  std::vector<double> rate(problem_.size(), 0.0);
  int best = -1;
  double theta = std::numeric_limits<double>::infinity();
  for (int i = 0; i < problem_.size(); ++i) {
    if (state_.known(i)) continue;
    double w = 0.0;
    for (int v = 0; v < values; ++v) w += problem_.value_probs[i][v] * gains[v];
    rate[i] = w;
    if (w <= 0.0) continue;
    const double room = std::max(0.0, problem_.costs[i] - charges_[i]);
    const double t = room / w;
    if (t < theta) {
      theta = t;
      best = i;
    }
  }
  if (best < 0) {
    throw std::logic_error("malformed goal: utility below goal but no test has positive gain");
  }
  for (int i = 0; i < problem_.size(); ++i) {
    if (rate[i] > 0.0) charges_[i] += theta * rate[i];
  }
  selected_charge_ = charges_[best];
  pending_ = best;
  return best;
}

void DualGreedy::observe(int item, int value) {
  if (item != pending_) throw std::logic_error("observed item was not the selected one");
  state_.reveal(item, value);
  spent_ += problem_.costs[item];
  sequence_.push_back(item);
  pending_ = -1;
}

CoverRun adg_run(const GoalFunction& goal, const CoverProblem& problem,
                 const PartialAssignment& start, std::span<const int> realization) {
  DualGreedy engine(goal, problem, start);
  while (!engine.done()) {
    const int item = engine.select();
    engine.observe(item, realization[item]);
  }
  return {engine.state(), engine.spent(), engine.sequence()};
}

std::vector<RatioSample> adg_ratio_samples(const GoalFunction& goal,
                                           const CoverProblem& problem,
                                           std::span<const int> realization) {
  const int values =
      problem.value_probs.empty() ? 1 : static_cast<int>(problem.value_probs[0].size());
  const PartialAssignment empty(problem.size(), values);
  const auto run = adg_run(goal, problem, empty, realization);

  std::vector<RatioSample> samples;
  PartialAssignment prefix = empty;
  for (std::size_t s = 0; s < run.sequence.size(); ++s) {
    RatioSample sample;
    sample.prefix = s;
    sample.denominator = goal.goal() - goal.evaluate(prefix);
    for (std::size_t t = s; t < run.sequence.size(); ++t) {
      sample.numerator += goal.gain(prefix, realization[run.sequence[t]]);
    }
    sample.ratio = static_cast<double>(sample.numerator) /
                   static_cast<double>(sample.denominator);
    samples.push_back(sample);
    prefix.reveal(run.sequence[s], realization[run.sequence[s]]);
  }
  return samples;
}

}  // namespace voteinspect
