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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/scenarios.hpp"

namespace atlas::config {

enum class PeriodGranularity { annual, five_year };
enum class KfrAggregate { mean, pooled_cohort };

/// Resolved run configuration; validated before any work starts.
struct RunConfig {
  // analysis grid
  std::vector<std::string> parties = {"US", "CN", "EU27", "GB", "JP"};
  std::vector<std::string> disciplines;  // concept ids
  corpus::YearRange years{2000, 2021};
  PeriodGranularity granularity = PeriodGranularity::annual;
  scenarios::Representation representation = scenarios::Representation::raw;

  // geometry grids
  std::vector<std::string> tetra_parties = {"US", "CN", "EU27&UK", "JP"};
  std::vector<std::string> triangle_parties = {"US", "CN", "RoW"};

  // knowledge-flow grid
  corpus::YearRange kfr_years{2000, 2021};
  KfrAggregate kfr_aggregate = KfrAggregate::mean;

  // scenario projection
  scenarios::Params scenario;
  int horizon_year = 2030;

  // plumbing
  bool offline = false;
  std::filesystem::path out_dir = "out";
  std::filesystem::path fixtures_dir = "fixtures";
  std::filesystem::path snapshot_root = "snapshots";
  std::string mailto;
  double rate_limit_rps = 5.0;
  std::string year_filter_field = "publication_year";
  std::vector<corpus::PartySpec> custom_parties;  // from party_file, if any

  const corpus::PartySpec& party(const std::string& name) const;
};

/// Parses and validates a TOML run config. Missing keys fall back to the
/// defaults above; unknown keys in known tables are rejected.
RunConfig load(const std::filesystem::path& toml_path);

/// Full validation (also called by load): non-empty year ranges, >= 2 known
/// parties, known discipline ids, scenario parameter ranges.
void validate(const RunConfig& config);

/// Stable hash of the semantic config content; recorded in output sidecars.
std::string config_hash(const RunConfig& config);

}  // namespace atlas::config
