/*
 * Copyright 2026 The atlas authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "atlas/config.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "atlas/errors.hpp"
#include "atlas/toml.hpp"
#include "atlas/util.hpp"

namespace atlas::config {

namespace {

corpus::YearRange year_range_from(const toml::Value& v, const std::string& key) {
  const auto years = v.as_integer_array();
  if (years.size() != 2)
    throw ValidationError(key + " must be a two-element [first, last] array");
  return {static_cast<int>(years[0]), static_cast<int>(years[1])};
}

std::vector<corpus::PartySpec> load_party_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw ValidationError("party file not found: " + path.string());
  auto j = nlohmann::json::parse(util::read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ValidationError("party file must be a JSON object of name -> country code list");
  std::vector<corpus::PartySpec> out;
  for (const auto& [name, members] : j.items()) {
    corpus::PartySpec spec;
    spec.name = name;
    if (!members.is_array() || members.empty())
      throw ValidationError("party " + name + " needs a non-empty country code array");
    for (const auto& m : members) spec.members.insert(m.get<std::string>());
    out.push_back(std::move(spec));
  }
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "run.parties", "run.disciplines", "run.years", "run.granularity", "run.representation",
      "run.offline", "run.out_dir", "run.fixtures_dir", "run.snapshot_root", "run.mailto",
      "run.rate_limit_rps", "run.year_filter_field", "run.party_file",
      "geometry.tetra_parties", "geometry.triangle_parties",
      "kfr.years", "kfr.aggregate",
      "scenarios.damping", "scenarios.peak_years", "scenarios.decline_rate",
      "scenarios.horizon_year",
  };
  return keys;
}

}  // namespace

const corpus::PartySpec& RunConfig::party(const std::string& name) const {
  return corpus::party(name, custom_parties);
}

RunConfig load(const std::filesystem::path& toml_path) {
  const toml::Table table = toml::parse_file(toml_path);
  for (const auto& [key, value] : table) {
    (void)value;
    if (known_keys().count(key) == 0)
      throw ValidationError("unknown config key: " + key);
  }

  RunConfig cfg;
  auto get = [&](const char* key) -> const toml::Value* {
    auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
  };

  if (auto* v = get("run.party_file"))
    cfg.custom_parties = load_party_file(toml_path.parent_path() / v->as_string());
  if (auto* v = get("run.parties")) cfg.parties = v->as_string_array();
  if (auto* v = get("run.disciplines")) cfg.disciplines = v->as_string_array();
  if (auto* v = get("run.years")) cfg.years = year_range_from(*v, "run.years");
  if (auto* v = get("run.granularity")) {
    const std::string& g = v->as_string();
    if (g == "annual")
      cfg.granularity = PeriodGranularity::annual;
    else if (g == "five-year")
      cfg.granularity = PeriodGranularity::five_year;
    else
      throw ValidationError("run.granularity must be \"annual\" or \"five-year\"");
  }
  if (auto* v = get("run.representation")) {
    const std::string& r = v->as_string();
    if (r == "raw")
      cfg.representation = scenarios::Representation::raw;
    else if (r == "rescaled")
      cfg.representation = scenarios::Representation::rescaled;
    else
      throw ValidationError("run.representation must be \"raw\" or \"rescaled\"");
  }
  if (auto* v = get("run.offline")) cfg.offline = v->as_boolean();
  if (auto* v = get("run.out_dir")) cfg.out_dir = v->as_string();
  if (auto* v = get("run.fixtures_dir")) cfg.fixtures_dir = v->as_string();
  if (auto* v = get("run.snapshot_root")) cfg.snapshot_root = v->as_string();
  if (auto* v = get("run.mailto")) cfg.mailto = v->as_string();
  if (cfg.mailto.empty())
    if (const char* env = std::getenv("ATLAS_MAILTO")) cfg.mailto = env;
  if (auto* v = get("run.rate_limit_rps")) cfg.rate_limit_rps = v->as_real();
  if (auto* v = get("run.year_filter_field")) cfg.year_filter_field = v->as_string();

  if (auto* v = get("geometry.tetra_parties")) cfg.tetra_parties = v->as_string_array();
  if (auto* v = get("geometry.triangle_parties")) cfg.triangle_parties = v->as_string_array();

  if (auto* v = get("kfr.years")) cfg.kfr_years = year_range_from(*v, "kfr.years");
  if (auto* v = get("kfr.aggregate")) {
    const std::string& a = v->as_string();
    if (a == "mean")
      cfg.kfr_aggregate = KfrAggregate::mean;
    else if (a == "pooled-cohort")
      cfg.kfr_aggregate = KfrAggregate::pooled_cohort;
    else
      throw ValidationError("kfr.aggregate must be \"mean\" or \"pooled-cohort\"");
  }

  if (auto* v = get("scenarios.damping")) cfg.scenario.damping = v->as_real();
  if (auto* v = get("scenarios.peak_years"))
    cfg.scenario.peak_years = static_cast<int>(v->as_integer());
  if (auto* v = get("scenarios.decline_rate")) cfg.scenario.decline_rate = v->as_real();
  if (auto* v = get("scenarios.horizon_year"))
    cfg.horizon_year = static_cast<int>(v->as_integer());

  validate(cfg);
  return cfg;
}

void validate(const RunConfig& config) {
  if (config.years.first > config.years.last)
    throw ValidationError("run.years range is empty");
  if (config.kfr_years.first >= config.kfr_years.last)
    throw ValidationError("kfr.years must span at least one transition");
  if (config.parties.size() < 2)
    throw ValidationError("at least two parties are required");
  if (config.disciplines.empty())
    throw ValidationError("at least one discipline is required");

  auto check_parties = [&](const std::vector<std::string>& names, const char* label) {
    std::set<std::string> seen;
    for (const auto& name : names) {
      config.party(name);  // throws on unknown
      if (!seen.insert(name).second)
        throw ValidationError(std::string(label) + " lists party twice: " + name);
    }
  };
  check_parties(config.parties, "run.parties");
  check_parties(config.tetra_parties, "geometry.tetra_parties");
  check_parties(config.triangle_parties, "geometry.triangle_parties");
  if (config.tetra_parties.size() != 4)
    throw ValidationError("geometry.tetra_parties must list exactly four parties");
  if (config.triangle_parties.size() != 3)
    throw ValidationError("geometry.triangle_parties must list exactly three parties");

  for (const auto& id : config.disciplines) corpus::discipline(id);  // throws on unknown

  if (!(config.scenario.damping > 0.0) || !(config.scenario.damping < 1.0))
    throw ValidationError("scenarios.damping must lie strictly inside (0,1)");
  if (config.scenario.peak_years < 1)
    throw ValidationError("scenarios.peak_years must be at least 1");
  if (config.horizon_year <= config.years.last)
    throw ValidationError("scenarios.horizon_year must be after the observed range");
  if (!(config.rate_limit_rps > 0.0))
    throw ValidationError("run.rate_limit_rps must be positive");
  if (config.year_filter_field != "publication_year" &&
      config.year_filter_field != "publication_date")
    throw ValidationError("run.year_filter_field must be publication_year or publication_date");
}

std::string config_hash(const RunConfig& config) {
  nlohmann::json j;
  j["parties"] = config.parties;
  j["disciplines"] = config.disciplines;
  j["years"] = {config.years.first, config.years.last};
  j["granularity"] = config.granularity == PeriodGranularity::annual ? "annual" : "five-year";
  j["representation"] =
      config.representation == scenarios::Representation::raw ? "raw" : "rescaled";
  j["tetra_parties"] = config.tetra_parties;
  j["triangle_parties"] = config.triangle_parties;
  j["kfr_years"] = {config.kfr_years.first, config.kfr_years.last};
  j["kfr_aggregate"] = config.kfr_aggregate == KfrAggregate::mean ? "mean" : "pooled-cohort";
  j["scenario"] = {{"damping", config.scenario.damping},
                   {"peak_years", config.scenario.peak_years},
                   {"decline_rate", config.scenario.decline_rate}};
  j["horizon_year"] = config.horizon_year;
  j["year_filter_field"] = config.year_filter_field;
  for (const auto& p : config.custom_parties)
    j["custom_parties"][p.name] = p.members;
  return util::sha256_hex(j.dump());
}

}  // namespace atlas::config
