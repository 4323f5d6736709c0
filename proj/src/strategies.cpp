#include "voteinspect/strategies.hpp"

#include <algorithm>
#include <stdexcept>

#include "voteinspect/dual_greedy.hpp"
#include "voteinspect/goal.hpp"
#include "voteinspect/kernels.hpp"

namespace voteinspect {

namespace {

std::size_t contenders(const PartialAssignment& b, Objective objective) {
  return objective == Objective::kAbsolute ? viable_candidates(b, objective).size()
                                           : top_contenders(b).size();
}

// Whether "target wins an absolute majority" is settled.
bool target_settled(const PartialAssignment& b, int target) {
  const int n = b.size();
  return b.tally(target) >= majority_quota(n) ||
         votes_against(b, target) >= blocking_quota(n);
}

// Walks a fixed order, stopping as soon as `settled` holds.
template <typename Settled>
void walk(Session& session, const Permutation& order, Settled settled) {
  for (int voter : order) {
    if (settled(session.state())) return;
    session.inspect(voter);
  }
}

int ternary_value(int vote, int alpha, int beta) {
  if (vote == alpha) return 2;
  if (vote == beta) return 0;
  return 1;
}

}  // namespace

PhaseOneResult phase1(Session& session) {
  session.begin_phase();
  const auto order = cheapest_first_permutation(session.instance(), session.state());
  PhaseOneResult result;
  for (std::size_t next = 0;; ++next) {
    if (session.certificate()) {
      result.decided = true;
      break;
    }
    if (contenders(session.state(), session.objective()) <= 2) break;
    session.inspect(order.at(next));
  }
  const auto ranked = rank_by_tally(session.state());
  result.alpha = ranked[0];
  result.beta = ranked[1];
  return result;
}

PhaseOneRun phase1(const Instance& instance, std::span<const int> realization,
                   Objective objective) {
  RealizationSource source(realization);
  Session session(instance, source, objective, "phase1");
  const auto result = phase1(session);
  return {session.state(), session.spent(), result};
}

Transcript abs4(const Instance& instance, VoteSource& source) {
  Session session(instance, source, Objective::kAbsolute, "abs4");
  const auto p1 = phase1(session);
  if (!p1.decided) {
    session.begin_phase();
    if (!sbb_evaluate(session, p1.alpha).verdict &&
        votes_against(session.state(), p1.beta) < blocking_quota(instance.voters())) {
      session.begin_phase();
      sbb_evaluate(session, p1.beta);
    }
  }
  return session.finish();
}

Transcript abs6_threeround(const Instance& instance, VoteSource& source) {
  Session session(instance, source, Objective::kAbsolute, "abs6");
  const auto p1 = phase1(session);
  if (!p1.decided) {
    for (int target : {p1.alpha, p1.beta}) {
      if (session.certificate()) break;
      session.begin_phase();
      const auto order = nonadaptive_kofn_permutation(instance, session.state(), target);
      walk(session, order,
           [target](const PartialAssignment& b) { return target_settled(b, target); });
    }
  }
  return session.finish();
}

Transcript abs10_tworound(const Instance& instance, VoteSource& source) {
  Session session(instance, source, Objective::kAbsolute, "abs10");
  const auto p1 = phase1(session);
  if (!p1.decided) {
    session.begin_phase();
    const PartialAssignment& b = session.state();
    const std::vector<int> lists[] = {
        ratio_order(instance, b, p1.alpha, RatioKind::kSuccess),
        ratio_order(instance, b, p1.alpha, RatioKind::kFailure),
        ratio_order(instance, b, p1.beta, RatioKind::kSuccess),
        ratio_order(instance, b, p1.beta, RatioKind::kFailure),
    };
    const auto order = modified_round_robin(lists, instance.costs());
    walk(session, order,
         [](const PartialAssignment& state) { return abs_certificate(state).has_value(); });
  }
  return session.finish();
}

Transcript rel8(const Instance& instance, VoteSource& source) {
  Session session(instance, source, Objective::kRelative, "rel8");
  const auto p1 = phase1(session);
  if (!p1.decided) {
    const int alpha = p1.alpha;
    const int beta = p1.beta;
    const int n = instance.voters();
    session.begin_phase();

    // alpha out-polls beta iff N_alpha + sum_{k != beta} N_k + sum y_i >= n + 1
    // with y = 2 (alpha), 1 (other), 0 (beta) over the untested voters.
    const PartialAssignment& b = session.state();
    const auto open = b.unknowns();
    const int theta =
        n + 1 - b.tally(alpha) - (b.known_count() - b.tally(beta));
    CoverProblem problem;
    for (int voter : open) {
      const double pa = instance.prob(voter, alpha);
      const double pb = instance.prob(voter, beta);
      problem.costs.push_back(instance.cost(voter));
      problem.value_probs.push_back({pb, std::max(0.0, 1.0 - pa - pb), pa});
    }
    DualGreedy greedy(ternary_threshold_goal(theta, static_cast<int>(open.size())),
                      std::move(problem));
    while (!greedy.done()) {
      const int item = greedy.select();
      const int vote = session.inspect(open[item]);
      greedy.observe(item, ternary_value(vote, alpha, beta));
    }

    if (!session.certificate()) {
      // alpha can no longer out-poll beta: beta wins unless every remaining
      // vote goes to alpha.
      session.begin_phase();
      conjunction_evaluate(session, alpha, [](const PartialAssignment& state) {
        return rel_certificate(state).has_value();
      });
    }
  }
  return session.finish();
}

Transcript naive_cheapest(const Instance& instance, VoteSource& source, Objective objective) {
  Session session(instance, source, objective,
                  objective == Objective::kAbsolute ? "naive_abs" : "naive_rel");
  session.begin_phase();
  const auto order = cheapest_first_permutation(instance, session.state());
  walk(session, order, [objective](const PartialAssignment& b) {
    return certificate(b, objective).has_value();
  });
  return session.finish();
}

Transcript adg_abs(const Instance& instance, VoteSource& source) {
  Session session(instance, source, Objective::kAbsolute, "adg_abs");
  session.begin_phase();
  DualGreedy greedy(abs_majority_goal(instance.voters(), instance.candidates()),
                    cover_problem(instance));
  while (!greedy.done()) {
    const int item = greedy.select();
    greedy.observe(item, session.inspect(item));
  }
  return session.finish();
}

Transcript sbb_two(const Instance& instance, VoteSource& source) {
  if (instance.candidates() != 2) {
    throw std::invalid_argument("sbb2 is defined for two candidates only");
  }
  Session session(instance, source, Objective::kAbsolute, "sbb2");
  session.begin_phase();
  if (!sbb_evaluate(session, 0).verdict && !session.certificate()) {
    session.begin_phase();
    sbb_evaluate(session, 1);
  }
  return session.finish();
}

const std::vector<StrategyInfo>& strategy_catalog() {
  static const std::vector<StrategyInfo> catalog = [] {
    auto constant = [](double factor) {
      return [factor](const Instance&) { return factor; };
    };
    std::vector<StrategyInfo> out;
    out.push_back({"abs4", Objective::kAbsolute, abs4, constant(4.0)});
    out.push_back({"abs6", Objective::kAbsolute, abs6_threeround, constant(6.0)});
    out.push_back({"abs10", Objective::kAbsolute, abs10_tworound, constant(10.0)});
    out.push_back({"rel8", Objective::kRelative, rel8, constant(8.0)});
    out.push_back({"naive_abs", Objective::kAbsolute,
                   [](const Instance& i, VoteSource& s) {
                     return naive_cheapest(i, s, Objective::kAbsolute);
                   },
                   constant(0.0)});
    out.push_back({"naive_rel", Objective::kRelative,
                   [](const Instance& i, VoteSource& s) {
                     return naive_cheapest(i, s, Objective::kRelative);
                   },
                   constant(0.0)});
    out.push_back({"adg_abs", Objective::kAbsolute, adg_abs,
                   [](const Instance& i) { return 2.0 * i.candidates() - 1.0; }});
    // Optimal for odd n; for even n it takes the same steps as abs4.
    out.push_back({"sbb2", Objective::kAbsolute, sbb_two,
                   [](const Instance& i) { return i.voters() % 2 == 1 ? 1.0 : 4.0; }});
    return out;
  }();
  return catalog;
}

const StrategyInfo& find_strategy(std::string_view name) {
  for (const auto& s : strategy_catalog()) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const auto& s : strategy_catalog()) known += (known.empty() ? "" : ", ") + s.name;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (known: " + known + ")");
}

Transcript run_strategy(const StrategyInfo& strategy, const Instance& instance,
                        std::span<const int> realization) {
  RealizationSource source(realization);
  return strategy.run(instance, source);
}

}  // namespace voteinspect
