#include "voteinspect/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace voteinspect {

namespace {

using nlohmann::json;

const json& require(const json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) throw InstanceError(key, "missing field");
  return *it;
}

int require_count(const json& object, const char* key) {
  const json& value = require(object, key);
  if (!value.is_number_integer()) throw InstanceError(key, "expected an integer");
  return value.get<int>();
}

double number_at(const json& value, const std::string& field) {
  if (!value.is_number()) throw InstanceError(field, "expected a number");
  return value.get<double>();
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceError("<document>", "expected a JSON object");

  const int n = require_count(doc, "n");
  const int d = require_count(doc, "d");
  if (n < 1) throw InstanceError("n", "must be at least 1");
  if (d < 2) throw InstanceError("d", "must be at least 2");

  const json& costs_json = require(doc, "costs");
  if (!costs_json.is_array()) throw InstanceError("costs", "expected an array");
  if (costs_json.size() != static_cast<std::size_t>(n)) {
    throw InstanceError("costs", "expected " + std::to_string(n) + " entries");
  }
  std::vector<double> costs;
  for (std::size_t i = 0; i < costs_json.size(); ++i) {
    costs.push_back(number_at(costs_json[i], "costs[" + std::to_string(i) + "]"));
  }

  const json& probs_json = require(doc, "probs");
  if (!probs_json.is_array()) throw InstanceError("probs", "expected an array");
  if (probs_json.size() != static_cast<std::size_t>(n)) {
    throw InstanceError("probs", "expected " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<double>> probs;
  for (std::size_t i = 0; i < probs_json.size(); ++i) {
    const std::string row_field = "probs[" + std::to_string(i) + "]";
    const json& row = probs_json[i];
    if (!row.is_array()) throw InstanceError(row_field, "expected an array");
    if (row.size() != static_cast<std::size_t>(d)) {
      throw InstanceError(row_field, "expected " + std::to_string(d) + " entries");
    }
    std::vector<double> values;
    for (std::size_t j = 0; j < row.size(); ++j) {
      values.push_back(number_at(row[j], row_field + "[" + std::to_string(j) + "]"));
    }
    probs.push_back(std::move(values));
  }
  return Instance(std::move(costs), std::move(probs));
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const InstanceError& e) {
    throw InstanceError(path.string() + ": " + e.field(),
                        std::string(e.what()).substr(e.field().size() + 2));
  }
}

std::string dump_instance(const Instance& instance) {
  json doc;
  doc["n"] = instance.voters();
  doc["d"] = instance.candidates();
  doc["costs"] = std::vector<double>(instance.costs().begin(), instance.costs().end());
  json probs = json::array();
  for (int i = 0; i < instance.voters(); ++i) {
    const auto row = instance.row(i);
    probs.push_back(std::vector<double>(row.begin(), row.end()));
  }
  doc["probs"] = std::move(probs);
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path.string());
  out << dump_instance(instance);
}

}  // namespace voteinspect
