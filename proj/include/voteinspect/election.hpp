#ifndef VOTEINSPECT_ELECTION_HPP
#define VOTEINSPECT_ELECTION_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace voteinspect {

// Voters and candidates are 0-based in code. External formats (instance
// files, transcripts, CLI realizations) use 1-based candidate values, with 0
// reserved for "no winner".

enum class Objective { kAbsolute, kRelative };

const char* to_string(Objective objective);
Objective parse_objective(const char* text);

/// Validation failure naming the offending field, e.g. "probs[2][0]".
class InstanceError : public std::invalid_argument {
 public:
  InstanceError(std::string field, const std::string& reason)
      : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// An election instance: n voters, d candidates, inspection costs and the
/// per-voter vote distributions.
///
/// Construction validates every field: n >= 1, d >= 2, costs >= 0,
/// probabilities strictly inside (0, 1) and rows summing to 1 within 1e-9.
/// Rows are renormalized after validation.
class Instance {
 public:
  static constexpr double kRowTolerance = 1e-9;

  Instance(std::vector<double> costs, std::vector<std::vector<double>> probs);

  int voters() const { return static_cast<int>(costs_.size()); }
  int candidates() const { return candidates_; }

  double cost(int voter) const { return costs_[voter]; }
  std::span<const double> costs() const { return costs_; }

  double prob(int voter, int candidate) const {
    return probs_[static_cast<std::size_t>(voter) * candidates_ + candidate];
  }
  std::span<const double> row(int voter) const {
    return {probs_.data() + static_cast<std::size_t>(voter) * candidates_,
            static_cast<std::size_t>(candidates_)};
  }

  /// Probability of a full assignment under the product distribution.
  double probability(std::span<const int> realization) const;

 private:
  std::vector<double> costs_;
  std::vector<double> probs_;  // row-major n x d
  int candidates_ = 0;
};

/// Revealed vote values with cached per-value tallies.
///
/// The value alphabet is generic (candidates for elections, {0,1,2} for the
/// ternary threshold subproblem). Tallies are updated on every reveal;
/// audit() recomputes them from the entries.
class PartialAssignment {
 public:
  static constexpr int kUnknown = -1;

  PartialAssignment(int size, int value_count);
  static PartialAssignment from_entries(std::span<const int> entries,
                                        int value_count);

  int size() const { return static_cast<int>(entries_.size()); }
  int value_count() const { return static_cast<int>(tallies_.size()); }

  int operator[](int i) const { return entries_[i]; }
  bool known(int i) const { return entries_[i] != kUnknown; }
  std::span<const int> entries() const { return entries_; }

  std::span<const int> tallies() const { return tallies_; }
  int tally(int value) const { return tallies_[value]; }
  int unknown_count() const { return unknown_; }
  int known_count() const { return size() - unknown_; }
  bool full() const { return unknown_ == 0; }

  void reveal(int i, int value);
  void conceal(int i);

  /// Unknown positions in increasing index order.
  std::vector<int> unknowns() const;

  /// Throws std::logic_error if the cached tallies disagree with the entries.
  void audit() const;

  bool operator==(const PartialAssignment&) const = default;

 private:
  std::vector<int> entries_;
  std::vector<int> tallies_;
  int unknown_ = 0;
};

/// Election result: code 0 means no winner, code j means candidate j-1 won.
class Outcome {
 public:
  constexpr Outcome() = default;
  static constexpr Outcome no_winner() { return Outcome{}; }
  static constexpr Outcome winner(int candidate) { return Outcome{candidate + 1}; }
  static constexpr Outcome from_code(int code) { return Outcome{code}; }

  constexpr bool has_winner() const { return code_ != 0; }
  constexpr int candidate() const { return code_ - 1; }
  constexpr int code() const { return code_; }

  constexpr bool operator==(const Outcome&) const = default;

 private:
  constexpr explicit Outcome(int code) : code_(code) {}
  int code_ = 0;
};

/// floor(n/2) + 1: votes needed for an absolute majority.
constexpr int majority_quota(int n) { return n / 2 + 1; }
/// ceil(n/2): votes against j that rule j out.
constexpr int blocking_quota(int n) { return (n + 1) / 2; }

Outcome abs_majority(std::span<const int> votes, int candidates);
Outcome rel_majority(std::span<const int> votes, int candidates);
Outcome majority(std::span<const int> votes, int candidates, Objective objective);

/// Known votes for candidates other than j.
inline int votes_against(const PartialAssignment& b, int j) {
  return b.known_count() - b.tally(j);
}

std::optional<Outcome> abs_certificate(const PartialAssignment& b);
std::optional<Outcome> rel_certificate(const PartialAssignment& b);
std::optional<Outcome> certificate(const PartialAssignment& b, Objective objective);

/// Candidates that still win in some extension of b, in increasing order.
std::vector<int> viable_candidates(const PartialAssignment& b, Objective objective);

/// Candidates that can still finish with a tally no smaller than every other
/// candidate's in some extension of b (they can win or tie for the top).
/// A candidate outside this set is strictly behind some rival in every
/// extension.
std::vector<int> top_contenders(const PartialAssignment& b);

/// Candidates ordered by decreasing tally, ties by increasing index.
std::vector<int> rank_by_tally(const PartialAssignment& b);

}  // namespace voteinspect

#endif  // VOTEINSPECT_ELECTION_HPP
