#include "voteinspect/session.hpp"

#include <stdexcept>

#include <json.hpp>

namespace voteinspect {

int Transcript::rounds() const {
  int count = 0;
  for (std::size_t p = 0; p < phases.size(); ++p) {
    const int begin = phases[p];
    const int end = p + 1 < phases.size() ? phases[p + 1] : static_cast<int>(steps.size());
    if (end > begin) ++count;
  }
  return count;
}

std::string transcript_json(const Transcript& transcript) {
  nlohmann::ordered_json doc;
  doc["algo"] = transcript.algo;
  auto steps = nlohmann::ordered_json::array();
  for (const Step& s : transcript.steps) {
    nlohmann::ordered_json step;
    step["voter"] = s.voter + 1;
    step["value"] = s.value + 1;
    step["cum_cost"] = s.cum_cost;
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  doc["phases"] = transcript.phases;
  doc["result"] = transcript.result.code();
  return doc.dump();
}

Transcript parse_transcript_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  Transcript t;
  t.algo = doc.at("algo").get<std::string>();
  for (const auto& s : doc.at("steps")) {
    t.steps.push_back({s.at("voter").get<int>() - 1, s.at("value").get<int>() - 1,
                       s.at("cum_cost").get<double>()});
  }
  t.phases = doc.at("phases").get<std::vector<int>>();
  t.result = Outcome::from_code(doc.at("result").get<int>());
  return t;
}

Session::Session(const Instance& instance, VoteSource& source, Objective objective,
                 std::string algo)
    : Session(instance, source, objective, std::move(algo),
              PartialAssignment(instance.voters(), instance.candidates())) {}

Session::Session(const Instance& instance, VoteSource& source, Objective objective,
                 std::string algo, PartialAssignment start)
    : instance_(&instance),
      source_(&source),
      objective_(objective),
      state_(std::move(start)) {
  if (state_.size() != instance.voters() || state_.value_count() != instance.candidates()) {
    throw std::invalid_argument("start assignment does not match the instance");
  }
  transcript_.algo = std::move(algo);
}

int Session::inspect(int voter) {
  if (state_.known(voter)) {
    throw std::logic_error("voter " + std::to_string(voter + 1) + " inspected twice");
  }
  const int value = source_->vote(voter);
  state_.reveal(voter, value);
  spent_ += instance_->cost(voter);
  transcript_.steps.push_back({voter, value, spent_});
  return value;
}

void Session::begin_phase() {
  transcript_.phases.push_back(static_cast<int>(transcript_.steps.size()));
}

Transcript Session::finish() {
  const auto result = certificate();
  if (!result) {
    throw std::logic_error(transcript_.algo + " stopped without a certificate");
  }
  transcript_.result = *result;
  return std::move(transcript_);
}

}  // namespace voteinspect
