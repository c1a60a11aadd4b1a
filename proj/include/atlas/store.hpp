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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/openalex.hpp"

namespace atlas::store {

inline constexpr int kSchemaVersion = 1;

/// Everything a compute command needs, materialized: work-count aggregates,
/// top-author cohorts and author-year country sets, plus the canonical
/// query manifest and the fixture timestamp range they came from.
struct SnapshotData {
  std::vector<corpus::WorkCounts> work_counts;
  // (concept id, year) -> authors in stored (descending count) order
  std::map<std::pair<std::string, int>, std::vector<openalex::GroupedCount>> cohorts;
  // (author id, year) -> country codes
  std::map<std::pair<std::string, int>, std::set<std::string>> author_countries;
  std::vector<std::string> queries;  // canonical strings, sorted unique on save
  std::string source_earliest;       // fixture retrieval stamps; may be empty
  std::string source_latest;

  const corpus::WorkCounts* find_counts(const std::string& concept_id,
                                        const corpus::YearRange& period) const;
  corpus::WorkCounts& counts_for(const corpus::Discipline& discipline,
                                 const corpus::YearRange& period);
};

/// Content hash (snapshot id) of the serialized manifest and tables. The
/// creation timestamp lives in an unhashed sidecar, so identical inputs
/// always produce identical ids.
std::string snapshot_id(const SnapshotData& data);

/// Writes `root/<id>/` (manifest.json, tables/*.ndjson, meta.json sidecar)
/// and returns the id. Saving identical data twice is a no-op with the
/// same id.
std::string save_snapshot(const SnapshotData& data, const std::filesystem::path& root);

/// Loads and verifies a snapshot: recomputes the content hash against `id`
/// and checks the schema version. Corruption and schema mismatch raise
/// StoreError; a missing snapshot raises ValidationError.
SnapshotData load_snapshot(const std::filesystem::path& root, const std::string& id);

}  // namespace atlas::store
