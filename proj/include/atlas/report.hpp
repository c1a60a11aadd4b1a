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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atlas/config.hpp"
#include "atlas/distance.hpp"
#include "atlas/kflow.hpp"
#include "atlas/openalex.hpp"
#include "atlas/store.hpp"

namespace atlas::report {

/// Distance scopes of a run: the pooled natural-science pseudo-discipline
/// first, then each configured discipline.
std::vector<corpus::Discipline> distance_scopes(const config::RunConfig& config);

/// Consecutive five-year windows covering `years`; the last window is
/// truncated when the range is not a multiple of five.
std::vector<corpus::YearRange> five_year_periods(const corpus::YearRange& years);

/// Issues every query of the configured grid through `client` and
/// materializes the results. Record mode makes this resumable: anything
/// already in the fixture store is not refetched.
store::SnapshotData run_fetch(const config::RunConfig& config, openalex::Client& client);

/// Builds the client for a config (replay transportless when offline,
/// HTTPS otherwise), runs the fetch and saves the snapshot; returns its id.
std::string cmd_fetch(const config::RunConfig& config);

openalex::Client make_client(const config::RunConfig& config,
                             std::unique_ptr<openalex::HttpTransport> transport);

/// Author data served from a materialized snapshot; missing author-year
/// sets come back empty, missing cohorts are an error.
class SnapshotAuthorSource : public kflow::AuthorDataSource {
public:
  explicit SnapshotAuthorSource(const store::SnapshotData& snapshot) : snapshot_(snapshot) {}
  std::vector<openalex::GroupedCount> top_authors(const corpus::Discipline& discipline,
                                                  int year) override;
  std::set<std::string> country_set(const std::string& author_id, int year) override;

private:
  const store::SnapshotData& snapshot_;
};

/// Raw annual distance series for one party pair within a scope.
std::vector<distance::SeriesPoint> pair_series(const store::SnapshotData& snapshot,
                                               const corpus::Discipline& scope,
                                               const std::string& a, const std::string& b,
                                               const corpus::YearRange& years);

/// tau -> rates (nullopt = excluded transition) for one discipline.
std::map<int, std::optional<kflow::RateMatrix>> kfr_series(const store::SnapshotData& snapshot,
                                                           const config::RunConfig& config,
                                                           const corpus::Discipline& discipline);

/// Natural-science aggregate across exactly the ten built-in natural
/// science disciplines: either the unweighted mean of per-discipline rates
/// or the pooled-cohort alternative, per config.
std::map<int, std::optional<kflow::RateMatrix>> ns_average_kfr(const store::SnapshotData& snapshot,
                                                               const config::RunConfig& config);

// Compute-and-emit commands. All outputs are deterministic functions of
// (snapshot, config); wall-clock timestamps only ever land in the
// *.meta.json sidecars.
void cmd_distance(const store::SnapshotData& snapshot, const config::RunConfig& config);
void cmd_kfr(const store::SnapshotData& snapshot, const config::RunConfig& config);
void cmd_geometry(const store::SnapshotData& snapshot, const config::RunConfig& config);
void cmd_simulate(const store::SnapshotData& snapshot, const config::RunConfig& config);

}  // namespace atlas::report
