#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nicrob/cli.hpp"

namespace nicrob::cli {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t unsigned_field(const json& j, const char* key, std::string_view where) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(std::string(where) + "." + key + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> unsigned_array(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string(key) + " must be an array");
  std::vector<std::uint64_t> out;
  for (const auto& e : v) {
    if (!e.is_number_unsigned()) throw ConfigError(std::string(key) + " must hold non-negative integers");
    out.push_back(e.get<std::uint64_t>());
  }
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown field '" + key + "' in " + std::string(where));
  }
}

Representation parse_representation(const std::string& s) {
  for (auto r : {Representation::None, Representation::TwoSquares, Representation::A2Plus3B2}) {
    if (to_string(r) == s) return r;
  }
  throw ConfigError("representation must be one of none, two_squares, a2_plus_3b2");
}

}  // namespace

LoadedConfig parse_config_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"name", "modulus", "p_residues", "include_primes", "exclude_primes", "search", "precision",
                  "representation"},
                 "config");
  for (const char* key : {"modulus", "p_residues"}) {
    if (!j.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
  }

  LoadedConfig out;
  PrimeClassConfig& c = out.config;
  c.name = j.value("name", std::string("custom"));
  c.modulus = unsigned_field(j, "modulus", "config");
  c.p_residues = unsigned_array(j, "p_residues");
  c.include_primes = j.contains("include_primes") ? unsigned_array(j, "include_primes")
                                                  : std::vector<std::uint64_t>{};
  c.exclude_primes = j.contains("exclude_primes") ? unsigned_array(j, "exclude_primes")
                                                  : std::vector<std::uint64_t>{};
  if (j.contains("representation")) {
    if (!j["representation"].is_string()) throw ConfigError("representation must be a string");
    c.representation = parse_representation(j["representation"].get<std::string>());
  }
  if (j.contains("search")) {
    const auto& s = j["search"];
    if (!s.is_object()) throw ConfigError("search must be an object");
    reject_unknown(s, {"max_k", "pk_minus_bound"}, "search");
    if (s.contains("max_k")) c.search.max_k = unsigned_field(s, "max_k", "search");
    if (s.contains("pk_minus_bound")) c.search.pk_minus_bound = unsigned_field(s, "pk_minus_bound", "search");
    if (c.search.max_k == 0 || c.search.pk_minus_bound == 0) throw ConfigError("search bounds must be positive");
  }
  if (j.contains("precision")) {
    const auto& p = j["precision"];
    if (!p.is_object()) throw ConfigError("precision must be an object");
    reject_unknown(p, {"schedule"}, "precision");
    if (p.contains("schedule")) {
      out.schedule.steps.clear();
      for (auto bits : unsigned_array(p, "schedule")) out.schedule.steps.push_back(static_cast<mpfr_prec_t>(bits));
    }
  }

  c.validate();
  try {
    out.schedule.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return out;
}

LoadedConfig load_config(const std::string& name_or_path) {
  if (auto builtin = PrimeClassConfig::builtin(name_or_path)) return {*builtin, PrecisionSchedule::standard()};
  std::error_code ec;
  if (!std::filesystem::is_regular_file(name_or_path, ec)) {
    throw ConfigError("'" + name_or_path + "' is neither a built-in config (mod4, a2plus3b2) nor a readable file");
  }
  std::ifstream in(name_or_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (!in && !in.eof()) throw ConfigError("cannot read " + name_or_path);
  return parse_config_json(buffer.str());
}

std::string config_json(const LoadedConfig& loaded) {
  const PrimeClassConfig& c = loaded.config;
  json j;
  j["name"] = c.name;
  j["modulus"] = c.modulus;
  j["p_residues"] = c.p_residues;
  j["include_primes"] = c.include_primes;
  j["exclude_primes"] = c.exclude_primes;
  j["search"] = {{"max_k", c.search.max_k}, {"pk_minus_bound", c.search.pk_minus_bound}};
  json steps = json::array();
  for (auto s : loaded.schedule.steps) steps.push_back(static_cast<std::int64_t>(s));
  j["precision"] = {{"schedule", steps}};
  j["representation"] = std::string(to_string(c.representation));
  return j.dump();
}

}  // namespace nicrob::cli
