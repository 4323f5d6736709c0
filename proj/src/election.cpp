#include "voteinspect/election.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <string>

namespace voteinspect {

namespace {

std::string indexed(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

std::string indexed(const char* name, std::size_t i, std::size_t j) {
  return indexed(name, i) + "[" + std::to_string(j) + "]";
}

// Highest and second-highest tallies (second is -1 when d < 2).
std::pair<int, int> top_two(std::span<const int> tallies) {
  int first = -1;
  int second = -1;
  for (int t : tallies) {
    if (t > first) {
      second = first;
      first = t;
    } else if (t > second) {
      second = t;
    }
  }
  return {first, second};
}

// Largest tally among candidates other than j.
int best_rival(std::span<const int> tallies, std::pair<int, int> top, int j) {
  return tallies[j] == top.first ? top.second : top.first;
}

}  // namespace

const char* to_string(Objective objective) {
  return objective == Objective::kAbsolute ? "abs" : "rel";
}

Objective parse_objective(const char* text) {
  if (std::strcmp(text, "abs") == 0) return Objective::kAbsolute;
  if (std::strcmp(text, "rel") == 0) return Objective::kRelative;
  throw std::invalid_argument(std::string("unknown objective '") + text +
                              "' (expected abs or rel)");
}

Instance::Instance(std::vector<double> costs, std::vector<std::vector<double>> probs)
    : costs_(std::move(costs)) {
  const std::size_t n = costs_.size();
  if (n < 1) throw InstanceError("costs", "at least one voter is required");
  if (probs.size() != n) {
    throw InstanceError("probs", "expected " + std::to_string(n) + " rows, got " +
                                     std::to_string(probs.size()));
  }
  if (probs[0].size() < 2) {
    throw InstanceError(indexed("probs", 0), "at least two candidates are required");
  }
  candidates_ = static_cast<int>(probs[0].size());

  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(costs_[i]) || costs_[i] < 0.0) {
      throw InstanceError(indexed("costs", i), "cost must be a finite non-negative number");
    }
  }

  probs_.reserve(n * candidates_);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = probs[i];
    if (row.size() != static_cast<std::size_t>(candidates_)) {
      throw InstanceError(indexed("probs", i),
                          "expected " + std::to_string(candidates_) + " entries, got " +
                              std::to_string(row.size()));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double p = row[j];
      if (!(p > 0.0 && p < 1.0)) {
        throw InstanceError(indexed("probs", i, j),
                            "probability must lie strictly between 0 and 1");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw InstanceError(indexed("probs", i),
                          "row sums to " + std::to_string(sum) + ", expected 1");
    }
    for (double p : row) probs_.push_back(p / sum);
  }
}

double Instance::probability(std::span<const int> realization) const {
  double p = 1.0;
  for (int i = 0; i < voters(); ++i) p *= prob(i, realization[i]);
  return p;
}

PartialAssignment::PartialAssignment(int size, int value_count)
    : entries_(static_cast<std::size_t>(size), kUnknown),
      tallies_(static_cast<std::size_t>(value_count), 0),
      unknown_(size) {
  if (size < 0 || value_count < 1) {
    throw std::invalid_argument("partial assignment needs size >= 0 and values >= 1");
  }
}

PartialAssignment PartialAssignment::from_entries(std::span<const int> entries,
                                                  int value_count) {
  PartialAssignment b(static_cast<int>(entries.size()), value_count);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] != kUnknown) b.reveal(static_cast<int>(i), entries[i]);
  }
  return b;
}

void PartialAssignment::reveal(int i, int value) {
  if (value < 0 || value >= value_count()) {
    throw std::out_of_range("vote value " + std::to_string(value) + " out of range");
  }
  if (entries_.at(i) != kUnknown) {
    throw std::logic_error("position " + std::to_string(i) + " is already revealed");
  }
  entries_[i] = value;
  ++tallies_[value];
  --unknown_;
}

void PartialAssignment::conceal(int i) {
  const int value = entries_.at(i);
  if (value == kUnknown) {
    throw std::logic_error("position " + std::to_string(i) + " is not revealed");
  }
  entries_[i] = kUnknown;
  --tallies_[value];
  ++unknown_;
}

std::vector<int> PartialAssignment::unknowns() const {
  std::vector<int> out;
  out.reserve(unknown_);
  for (int i = 0; i < size(); ++i) {
    if (entries_[i] == kUnknown) out.push_back(i);
  }
  return out;
}

void PartialAssignment::audit() const {
  std::vector<int> counts(tallies_.size(), 0);
  int unknown = 0;
  for (int v : entries_) {
    if (v == kUnknown) {
      ++unknown;
    } else {
      ++counts.at(v);
    }
  }
  if (counts != tallies_ || unknown != unknown_) {
    throw std::logic_error("partial assignment tallies are out of sync");
  }
}

namespace {

std::vector<int> count_full(std::span<const int> votes, int candidates) {
  std::vector<int> counts(static_cast<std::size_t>(candidates), 0);
  for (int v : votes) {
    if (v == PartialAssignment::kUnknown) {
      throw std::invalid_argument("majority functions need a full assignment");
    }
    ++counts.at(v);
  }
  return counts;
}

}  // namespace

Outcome abs_majority(std::span<const int> votes, int candidates) {
  const auto counts = count_full(votes, candidates);
  const int quota = majority_quota(static_cast<int>(votes.size()));
  for (int j = 0; j < candidates; ++j) {
    if (counts[j] >= quota) return Outcome::winner(j);
  }
  return Outcome::no_winner();
}

Outcome rel_majority(std::span<const int> votes, int candidates) {
  const auto counts = count_full(votes, candidates);
  const auto best = std::max_element(counts.begin(), counts.end());
  if (std::count(counts.begin(), counts.end(), *best) > 1) return Outcome::no_winner();
  return Outcome::winner(static_cast<int>(best - counts.begin()));
}

Outcome majority(std::span<const int> votes, int candidates, Objective objective) {
  return objective == Objective::kAbsolute ? abs_majority(votes, candidates)
                                           : rel_majority(votes, candidates);
}

std::optional<Outcome> abs_certificate(const PartialAssignment& b) {
  const int n = b.size();
  const int d = b.value_count();
  bool all_blocked = true;
  for (int j = 0; j < d; ++j) {
    if (b.tally(j) >= majority_quota(n)) return Outcome::winner(j);
    if (votes_against(b, j) < blocking_quota(n)) all_blocked = false;
  }
  if (all_blocked) return Outcome::no_winner();
  return std::nullopt;
}

std::optional<Outcome> rel_certificate(const PartialAssignment& b) {
  const auto tallies = b.tallies();
  const auto top = top_two(tallies);
  const int open = b.unknown_count();
  if (open == 0) {
    if (top.first == top.second) return Outcome::no_winner();
    return Outcome::winner(static_cast<int>(
        std::find(tallies.begin(), tallies.end(), top.first) - tallies.begin()));
  }
  // Only the unique leader can be certified while votes remain open.
  if (top.first > top.second + open) {
    return Outcome::winner(static_cast<int>(
        std::find(tallies.begin(), tallies.end(), top.first) - tallies.begin()));
  }
  return std::nullopt;
}

std::optional<Outcome> certificate(const PartialAssignment& b, Objective objective) {
  return objective == Objective::kAbsolute ? abs_certificate(b) : rel_certificate(b);
}

std::vector<int> viable_candidates(const PartialAssignment& b, Objective objective) {
  std::vector<int> out;
  const int open = b.unknown_count();
  if (objective == Objective::kAbsolute) {
    const int quota = majority_quota(b.size());
    for (int j = 0; j < b.value_count(); ++j) {
      if (b.tally(j) + open >= quota) out.push_back(j);
    }
    return out;
  }
  const auto tallies = b.tallies();
  const auto top = top_two(tallies);
  for (int j = 0; j < b.value_count(); ++j) {
    if (tallies[j] + open > best_rival(tallies, top, j)) out.push_back(j);
  }
  return out;
}

std::vector<int> top_contenders(const PartialAssignment& b) {
  std::vector<int> out;
  const int open = b.unknown_count();
  const auto tallies = b.tallies();
  const auto top = top_two(tallies);
  for (int j = 0; j < b.value_count(); ++j) {
    if (tallies[j] + open >= best_rival(tallies, top, j)) out.push_back(j);
  }
  return out;
}

std::vector<int> rank_by_tally(const PartialAssignment& b) {
  std::vector<int> order(static_cast<std::size_t>(b.value_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return b.tally(x) > b.tally(y); });
  return order;
}

}  // namespace voteinspect
