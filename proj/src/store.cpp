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

#include "atlas/store.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "atlas/errors.hpp"
#include "atlas/util.hpp"

namespace atlas::store {

namespace {

using nlohmann::json;

constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kWorkCountsFile = "tables/work_counts.ndjson";
constexpr const char* kCohortsFile = "tables/cohorts.ndjson";
constexpr const char* kAuthorCountriesFile = "tables/author_countries.ndjson";

std::string domain_name(corpus::DomainClass d) {
  return d == corpus::DomainClass::natural_science ? "natural_science" : "hss";
}

corpus::DomainClass domain_from(const std::string& name) {
  if (name == "natural_science") return corpus::DomainClass::natural_science;
  if (name == "hss") return corpus::DomainClass::hss;
  throw StoreError("unknown domain class in snapshot: " + name);
}

std::string serialize_manifest(const SnapshotData& data) {
  json j;
  j["schema_version"] = kSchemaVersion;
  auto queries = data.queries;
  std::sort(queries.begin(), queries.end());
  queries.erase(std::unique(queries.begin(), queries.end()), queries.end());
  j["queries"] = queries;
  j["source_earliest"] = data.source_earliest;
  j["source_latest"] = data.source_latest;
  return j.dump(2) + "\n";
}

std::string serialize_work_counts(const SnapshotData& data) {
  auto rows = data.work_counts;
  std::sort(rows.begin(), rows.end(), [](const corpus::WorkCounts& a, const corpus::WorkCounts& b) {
    if (a.discipline().concept_id != b.discipline().concept_id)
      return a.discipline().concept_id < b.discipline().concept_id;
    return a.period() < b.period();
  });

  std::ostringstream out;
  for (const auto& wc : rows) {
    json row;
    row["discipline"] = {{"id", wc.discipline().concept_id},
                         {"label", wc.discipline().label},
                         {"level", wc.discipline().level},
                         {"domain", domain_name(wc.discipline().domain_class)}};
    row["period"] = {wc.period().first, wc.period().last};
    row["singles"] = json::object();
    for (const auto& [name, count] : wc.party_counts()) row["singles"][name] = count;
    json pairs = json::array();
    for (const auto& [key, count] : wc.joint_counts())
      pairs.push_back({key.first, key.second, count});
    row["pairs"] = pairs;
    out << row.dump() << "\n";
  }
  return out.str();
}

std::string serialize_cohorts(const SnapshotData& data) {
  std::ostringstream out;
  for (const auto& [key, authors] : data.cohorts) {
    json row;
    row["discipline"] = key.first;
    row["year"] = key.second;
    json list = json::array();
    for (const auto& a : authors) list.push_back({{"id", a.key}, {"count", a.count}});
    row["authors"] = list;
    out << row.dump() << "\n";
  }
  return out.str();
}

std::string serialize_author_countries(const SnapshotData& data) {
  std::ostringstream out;
  for (const auto& [key, countries] : data.author_countries) {
    json row;
    row["author"] = key.first;
    row["year"] = key.second;
    row["countries"] = countries;
    out << row.dump() << "\n";
  }
  return out.str();
}

std::string hash_files(const std::vector<std::pair<std::string, std::string>>& files) {
  std::string blob;
  for (const auto& [name, content] : files) {
    blob += name;
    blob += '\n';
    blob += content;
    blob += '\0';
  }
  return util::sha256_hex(blob);
}

std::vector<std::pair<std::string, std::string>> serialize_all(const SnapshotData& data) {
  return {
      {kManifestFile, serialize_manifest(data)},
      {kWorkCountsFile, serialize_work_counts(data)},
      {kCohortsFile, serialize_cohorts(data)},
      {kAuthorCountriesFile, serialize_author_countries(data)},
  };
}

json parse_line(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw StoreError("corrupt snapshot table row");
  return j;
}

}  // namespace

const corpus::WorkCounts* SnapshotData::find_counts(const std::string& concept_id,
                                                    const corpus::YearRange& period) const {
  for (const auto& wc : work_counts)
    if (wc.discipline().concept_id == concept_id && wc.period() == period) return &wc;
  return nullptr;
}

corpus::WorkCounts& SnapshotData::counts_for(const corpus::Discipline& discipline,
                                             const corpus::YearRange& period) {
  for (auto& wc : work_counts)
    if (wc.discipline().concept_id == discipline.concept_id && wc.period() == period) return wc;
  work_counts.emplace_back(discipline, period);
  return work_counts.back();
}

std::string snapshot_id(const SnapshotData& data) { return hash_files(serialize_all(data)); }

std::string save_snapshot(const SnapshotData& data, const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  const auto files = serialize_all(data);
  const std::string id = hash_files(files);
  const fs::path dir = root / id;
  if (fs::exists(dir / kManifestFile)) return id;  // identical content by construction

  static std::mt19937_64 rng{std::random_device{}()};
  const fs::path tmp = root / ("tmp-" + std::to_string(rng()));
  for (const auto& [name, content] : files) util::write_file_atomic(tmp / name, content);
  {
    nlohmann::json meta;
    meta["id"] = id;
    meta["created_at"] = util::iso8601_utc_now();
    util::write_file_atomic(tmp / "meta.json", meta.dump(2) + "\n");
  }

  std::error_code ec;
  fs::rename(tmp, dir, ec);
  if (ec) {
    // Lost a race with a concurrent identical save; the content is the same.
    if (fs::exists(dir / kManifestFile)) {
      fs::remove_all(tmp);
      return id;
    }
    throw StoreError("cannot move snapshot into place: " + ec.message());
  }
  return id;
}

SnapshotData load_snapshot(const std::filesystem::path& root, const std::string& id) {
  namespace fs = std::filesystem;
  const fs::path dir = root / id;
  if (!fs::exists(dir / kManifestFile))
    throw ValidationError("snapshot not found: " + id + " under " + root.string());

  std::vector<std::pair<std::string, std::string>> files;
  for (const char* name : {kManifestFile, kWorkCountsFile, kCohortsFile, kAuthorCountriesFile}) {
    if (!fs::exists(dir / name)) throw StoreError("snapshot is missing table file: " + std::string(name));
    files.emplace_back(name, util::read_file(dir / name));
  }
  if (hash_files(files) != id)
    throw StoreError("snapshot content hash mismatch for " + id + " (corrupt or tampered)");

  SnapshotData data;

  const json manifest = json::parse(files[0].second, nullptr, false);
  if (manifest.is_discarded()) throw StoreError("corrupt snapshot manifest");
  const int version = manifest.value("schema_version", -1);
  if (version != kSchemaVersion)
    throw StoreError("snapshot schema version mismatch: found " + std::to_string(version) +
                     ", expected " + std::to_string(kSchemaVersion) +
                     "; explicit migration required");
  data.queries = manifest.value("queries", std::vector<std::string>{});
  data.source_earliest = manifest.value("source_earliest", std::string{});
  data.source_latest = manifest.value("source_latest", std::string{});

  std::istringstream wc_lines(files[1].second);
  for (std::string line; std::getline(wc_lines, line);) {
    if (line.empty()) continue;
    const json row = parse_line(line);
    corpus::Discipline d{row["discipline"]["id"].get<std::string>(),
                         row["discipline"]["label"].get<std::string>(),
                         row["discipline"]["level"].get<int>(),
                         domain_from(row["discipline"]["domain"].get<std::string>())};
    corpus::YearRange period{row["period"][0].get<int>(), row["period"][1].get<int>()};
    corpus::WorkCounts wc(d, period);
    for (const auto& [name, count] : row["singles"].items())
      wc.set_party_count(name, count.get<std::uint64_t>());
    for (const auto& p : row["pairs"])
      wc.set_joint_count(p[0].get<std::string>(), p[1].get<std::string>(),
                         p[2].get<std::uint64_t>());
    data.work_counts.push_back(std::move(wc));
  }

  std::istringstream cohort_lines(files[2].second);
  for (std::string line; std::getline(cohort_lines, line);) {
    if (line.empty()) continue;
    const json row = parse_line(line);
    std::vector<openalex::GroupedCount> authors;
    for (const auto& a : row["authors"])
      authors.push_back({a["id"].get<std::string>(), a["count"].get<std::uint64_t>()});
    data.cohorts[{row["discipline"].get<std::string>(), row["year"].get<int>()}] =
        std::move(authors);
  }

  std::istringstream ac_lines(files[3].second);
  for (std::string line; std::getline(ac_lines, line);) {
    if (line.empty()) continue;
    const json row = parse_line(line);
    std::set<std::string> countries;
    for (const auto& c : row["countries"]) countries.insert(c.get<std::string>());
    data.author_countries[{row["author"].get<std::string>(), row["year"].get<int>()}] =
        std::move(countries);
  }

  return data;
}

}  // namespace atlas::store
