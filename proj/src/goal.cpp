#include "voteinspect/goal.hpp"

#include <algorithm>
#include <stdexcept>

namespace voteinspect {

namespace {

Utility checked_mul(Utility a, Utility b) {
  Utility out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("goal value overflows 128-bit utility");
  }
  return out;
}

Utility checked_add(Utility a, Utility b) {
  Utility out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("goal value overflows 128-bit utility");
  }
  return out;
}

void require_candidate(int j, std::size_t count) {
  if (j < 0 || static_cast<std::size_t>(j) >= count) {
    throw std::out_of_range("candidate " + std::to_string(j) + " out of range");
  }
}

int known(const TallyView& view) {
  int total = 0;
  for (int t : view.tallies) total += t;
  return total;
}

}  // namespace

std::string to_string(Utility value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  unsigned __int128 magnitude = negative ? -static_cast<unsigned __int128>(value)
                                         : static_cast<unsigned __int128>(value);
  std::string digits;
  while (magnitude > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

GoalFunction::GoalFunction(Evaluator evaluator, Utility goal)
    : evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))), goal_(goal) {
  if (goal_ <= 0) throw std::invalid_argument("goal value must be positive");
}

Utility GoalFunction::gain(const PartialAssignment& b, int value) const {
  if (b.unknown_count() == 0) throw std::logic_error("no unknown position left");
  std::vector<int> bumped(b.tallies().begin(), b.tallies().end());
  ++bumped.at(value);
  const Utility before = evaluate(b);
  return evaluate(TallyView{bumped, b.unknown_count() - 1}) - before;
}

GoalFunction g_for(int voters, int j) {
  const int cap = majority_quota(voters);
  return GoalFunction(
      [cap, j](const TallyView& v) -> Utility {
        require_candidate(j, v.tallies.size());
        return std::min(cap, v.tallies[j]);
      },
      cap);
}

GoalFunction g_against(int voters, int j) {
  const int cap = blocking_quota(voters);
  return GoalFunction(
      [cap, j](const TallyView& v) -> Utility {
        require_candidate(j, v.tallies.size());
        return std::min(cap, known(v) - v.tallies[j]);
      },
      cap);
}

GoalFunction or_combine(std::span<const GoalFunction> goals) {
  if (goals.empty()) throw std::invalid_argument("or_combine needs at least one goal");
  Utility goal = 1;
  for (const auto& g : goals) goal = checked_mul(goal, g.goal());
  std::vector<GoalFunction> parts(goals.begin(), goals.end());
  return GoalFunction(
      [parts = std::move(parts), goal](const TallyView& v) {
        Utility residual = 1;
        for (const auto& g : parts) residual *= g.goal() - g.evaluate(v);
        return goal - residual;
      },
      goal);
}

GoalFunction and_combine(std::span<const GoalFunction> goals) {
  if (goals.empty()) throw std::invalid_argument("and_combine needs at least one goal");
  Utility goal = 0;
  for (const auto& g : goals) goal = checked_add(goal, g.goal());
  std::vector<GoalFunction> parts(goals.begin(), goals.end());
  return GoalFunction(
      [parts = std::move(parts)](const TallyView& v) {
        Utility sum = 0;
        for (const auto& g : parts) sum += g.evaluate(v);
        return sum;
      },
      goal);
}

GoalFunction abs_majority_goal(int voters, int candidates) {
  if (voters < 1 || candidates < 2) {
    throw std::invalid_argument("abs_majority_goal needs n >= 1 and d >= 2");
  }
  std::vector<GoalFunction> wins;
  std::vector<GoalFunction> losses;
  for (int j = 0; j < candidates; ++j) {
    wins.push_back(g_for(voters, j));
    losses.push_back(g_against(voters, j));
  }
  const GoalFunction top[] = {or_combine(wins), and_combine(losses)};
  return or_combine(top);
}

GoalFunction g_pair(int voters, int j, int k) {
  if (j == k) throw std::invalid_argument("g_pair needs two distinct candidates");
  const int cap = voters + 1;
  return GoalFunction(
      [cap, j, k](const TallyView& v) -> Utility {
        require_candidate(j, v.tallies.size());
        require_candidate(k, v.tallies.size());
        return std::min(cap, v.tallies[j] + known(v) - v.tallies[k]);
      },
      cap);
}

GoalFunction ternary_threshold_goal(int theta, int variables) {
  if (variables < 1 || theta < 1 || theta > 2 * variables) {
    throw std::invalid_argument("ternary threshold needs 1 <= theta <= 2m, got theta=" +
                                std::to_string(theta) + ", m=" + std::to_string(variables));
  }
  const Utility q1 = theta;
  const Utility q0 = 2 * variables - theta + 1;
  return GoalFunction(
      [q0, q1](const TallyView& v) -> Utility {
        if (v.tallies.size() != 3) {
          throw std::invalid_argument("ternary threshold values must be {0,1,2}");
        }
        const Utility ones = v.tallies[1];
        const Utility sum = ones + 2 * Utility{v.tallies[2]};
        const Utility slack = 2 * Utility{v.tallies[0]} + ones;
        const Utility g1 = std::min(q1, sum);
        const Utility g0 = std::min(q0, slack);
        return q0 * q1 - (q0 - g0) * (q1 - g1);
      },
      q0 * q1);
}

DistanceProfile distances(const PartialAssignment& b, Objective objective) {
  const int n = b.size();
  const int d = b.value_count();
  DistanceProfile profile;
  if (objective == Objective::kAbsolute) {
    const int cap = blocking_quota(n);
    for (int j = 0; j < d; ++j) {
      profile.m.push_back(cap - std::min(votes_against(b, j), cap));
    }
    return profile;
  }
  profile.pair.assign(d, std::vector<int>(d, 0));
  profile.max_pair.assign(d, 0);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      if (j == k) continue;
      const int g = std::min(n + 1, b.tally(j) + b.known_count() - b.tally(k));
      profile.pair[j][k] = n + 1 - g;
      profile.max_pair[j] = std::max(profile.max_pair[j], profile.pair[j][k]);
    }
  }
  return profile;
}

}  // namespace voteinspect
