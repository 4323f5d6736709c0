#ifndef VOTEINSPECT_SESSION_HPP
#define VOTEINSPECT_SESSION_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voteinspect/election.hpp"

namespace voteinspect {

/// Supplies the hidden vote of a voter when it is inspected.
class VoteSource {
 public:
  virtual ~VoteSource() = default;
  virtual int vote(int voter) = 0;
};

/// Votes drawn from a fixed full assignment.
class RealizationSource final : public VoteSource {
 public:
  explicit RealizationSource(std::span<const int> votes) : votes_(votes) {}
  int vote(int voter) override { return votes_[voter]; }

 private:
  std::span<const int> votes_;
};

struct Step {
  int voter = 0;
  int value = 0;
  double cum_cost = 0.0;
};

struct Transcript {
  std::string algo;
  std::vector<Step> steps;
  /// Step index at which each phase (round) began, in order.
  std::vector<int> phases;
  Outcome result;

  double cost() const { return steps.empty() ? 0.0 : steps.back().cum_cost; }
  /// Number of phases that inspected at least one vote.
  int rounds() const;
};

/// JSON object {"algo", "steps": [{"voter", "value", "cum_cost"}], "phases",
/// "result"} with 1-based voter and candidate numbers; result 0 = no winner.
std::string transcript_json(const Transcript& transcript);
Transcript parse_transcript_json(const std::string& text);

/// Mutable state of one strategy run: the revealed votes, the running cost
/// and the transcript. Owned by a single strategy invocation.
class Session {
 public:
  Session(const Instance& instance, VoteSource& source, Objective objective,
          std::string algo);
  Session(const Instance& instance, VoteSource& source, Objective objective,
          std::string algo, PartialAssignment start);

  const Instance& instance() const { return *instance_; }
  Objective objective() const { return objective_; }
  const PartialAssignment& state() const { return state_; }
  double spent() const { return spent_; }
  std::size_t tests() const { return transcript_.steps.size(); }

  /// Reveals the vote of an uninspected voter and charges its cost.
  int inspect(int voter);
  void begin_phase();

  std::optional<Outcome> certificate() const {
    return voteinspect::certificate(state_, objective_);
  }

  /// Closes the run; the final state must carry a certificate.
  Transcript finish();

 private:
  const Instance* instance_;
  VoteSource* source_;
  Objective objective_;
  PartialAssignment state_;
  double spent_ = 0.0;
  Transcript transcript_;
};

}  // namespace voteinspect

#endif  // VOTEINSPECT_SESSION_HPP
