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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "atlas/errors.hpp"
#include "atlas/store.hpp"
#include "atlas/util.hpp"

using namespace atlas;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  static std::mt19937_64 rng{0x57073};
  const fs::path dir =
      fs::temp_directory_path() / ("atlas_store_" + tag + "_" + std::to_string(rng()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

store::SnapshotData sample_data() {
  store::SnapshotData data;
  corpus::WorkCounts wc(corpus::discipline("C33923547"), {2010, 2010});
  wc.set_party_count("US", 1000);
  wc.set_party_count("CN", 400);
  wc.set_joint_count("US", "CN", 25);
  data.work_counts.push_back(wc);
  data.cohorts[{"C33923547", 2010}] = {{"A1", 90}, {"A2", 80}};
  data.author_countries[{"A1", 2010}] = {"US", "CN"};
  data.author_countries[{"A1", 2011}] = {"US"};
  data.queries = {"works?filter.concepts.id=C33923547"};
  data.source_earliest = "2025-06-15T00:00:00Z";
  data.source_latest = "2025-06-15T00:00:00Z";
  return data;
}

bool snapshot_equal(const store::SnapshotData& a, const store::SnapshotData& b) {
  return store::snapshot_id(a) == store::snapshot_id(b);
}

}  // namespace

TEST_CASE("save/load round-trips losslessly") {
  const auto root = fresh_dir("roundtrip");
  const auto data = sample_data();
  const std::string id = store::save_snapshot(data, root);

  const auto loaded = store::load_snapshot(root, id);
  CHECK(snapshot_equal(data, loaded));
  CHECK(loaded.work_counts.size() == 1);
  CHECK(loaded.work_counts[0].party_count("US") == 1000);
  CHECK(loaded.work_counts[0].joint_count("CN", "US") == 25);
  CHECK(loaded.cohorts.at({"C33923547", 2010}).size() == 2);
  CHECK(loaded.author_countries.at({"A1", 2010}) == std::set<std::string>{"US", "CN"});
  CHECK(loaded.source_latest == "2025-06-15T00:00:00Z");
  fs::remove_all(root);
}

TEST_CASE("saving twice yields the same id and identical files") {
  const auto root = fresh_dir("twice");
  const auto data = sample_data();
  const std::string first = store::save_snapshot(data, root);
  const std::string second = store::save_snapshot(data, root);
  CHECK(first == second);

  // save/load/save: byte-identical table files
  const auto loaded = store::load_snapshot(root, first);
  const auto root2 = fresh_dir("twice2");
  const std::string third = store::save_snapshot(loaded, root2);
  CHECK(third == first);
  for (const char* name : {"manifest.json", "tables/work_counts.ndjson", "tables/cohorts.ndjson",
                           "tables/author_countries.ndjson"}) {
    CHECK(util::read_file(root / first / name) == util::read_file(root2 / third / name));
  }
  fs::remove_all(root);
  fs::remove_all(root2);
}

TEST_CASE("empty dataset saves to a valid snapshot") {
  const auto root = fresh_dir("empty");
  const std::string id = store::save_snapshot({}, root);
  const auto loaded = store::load_snapshot(root, id);
  CHECK(loaded.work_counts.empty());
  CHECK(loaded.cohorts.empty());
  CHECK(loaded.author_countries.empty());
  fs::remove_all(root);
}

TEST_CASE("corruption is detected on load") {
  const auto root = fresh_dir("corrupt");
  const std::string id = store::save_snapshot(sample_data(), root);

  // flip a byte in a table file
  const fs::path victim = root / id / "tables" / "work_counts.ndjson";
  std::string content = util::read_file(victim);
  content[content.size() / 2] = content[content.size() / 2] == '0' ? '1' : '0';
  {
    std::ofstream out(victim, std::ios::binary | std::ios::trunc);
    out << content;
  }
  CHECK_THROWS_AS(store::load_snapshot(root, id), StoreError);
  fs::remove_all(root);
}

TEST_CASE("missing snapshot is a validation error") {
  const auto root = fresh_dir("missing");
  CHECK_THROWS_AS(store::load_snapshot(root, "deadbeef"), ValidationError);
  fs::remove_all(root);
}

TEST_CASE("schema version mismatch is an explicit error") {
  const auto root = fresh_dir("schema");
  const std::string id = store::save_snapshot(sample_data(), root);

  // rewrite the manifest with a bumped schema version and re-hash so only
  // the version check can fail
  store::SnapshotData data = store::load_snapshot(root, id);
  const fs::path manifest = root / id / "manifest.json";
  std::string text = util::read_file(manifest);
  const std::string needle = "\"schema_version\": 1";
  const auto at = text.find(needle);
  REQUIRE(at != std::string::npos);
  text.replace(at, needle.size(), "\"schema_version\": 9");
  {
    std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
    out << text;
  }
  // recompute the directory name to keep the content hash valid
  std::string blob;
  for (const char* name : {"manifest.json", "tables/work_counts.ndjson", "tables/cohorts.ndjson",
                           "tables/author_countries.ndjson"}) {
    blob += name;
    blob += '\n';
    blob += util::read_file(root / id / name);
    blob += '\0';
  }
  const std::string new_id = util::sha256_hex(blob);
  fs::rename(root / id, root / new_id);

  CHECK_THROWS_AS(store::load_snapshot(root, new_id), StoreError);
  try {
    store::load_snapshot(root, new_id);
  } catch (const StoreError& e) {
    CHECK(std::string(e.what()).find("schema") != std::string::npos);
  }
  fs::remove_all(root);
}

TEST_CASE("ids are content hashes: different data, different id") {
  const auto root = fresh_dir("ids");
  auto data = sample_data();
  const std::string a = store::save_snapshot(data, root);
  data.work_counts[0].set_party_count("US", 1001);
  const std::string b = store::save_snapshot(data, root);
  CHECK(a != b);
  fs::remove_all(root);
}
