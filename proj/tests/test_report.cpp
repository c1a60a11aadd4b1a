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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "atlas/config.hpp"
#include "atlas/errors.hpp"
#include "atlas/report.hpp"
#include "atlas/toml.hpp"
#include "atlas/util.hpp"

using namespace atlas;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  static std::mt19937_64 rng{0x2E902};
  const fs::path dir =
      fs::temp_directory_path() / ("atlas_report_" + tag + "_" + std::to_string(rng()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

config::RunConfig test_config(const fs::path& out_dir) {
  config::RunConfig cfg;
  for (const auto& d : corpus::natural_science_disciplines())
    cfg.disciplines.push_back(d.concept_id);
  cfg.years = {2015, 2018};
  cfg.kfr_years = {2015, 2017};
  cfg.out_dir = out_dir;
  cfg.scenario.decline_rate = 0.002;
  config::validate(cfg);
  return cfg;
}

// Deterministic synthetic snapshot. Joint counts stay far below the single
// counts, which keeps every matrix realizable as an explicit set system.
store::SnapshotData synthetic_snapshot(const config::RunConfig& cfg) {
  store::SnapshotData snap;
  snap.source_earliest = "2025-06-15T00:00:00Z";
  snap.source_latest = "2025-06-15T00:00:00Z";

  auto single = [](const std::string& party, int year) -> std::uint64_t {
    return 20000 + 700 * (party.size() + static_cast<std::uint64_t>(party[0])) +
           97 * static_cast<std::uint64_t>(year - 2015);
  };
  auto joint = [](const std::string& a, const std::string& b, int year) -> std::uint64_t {
    return 60 + (a.size() * 13 + b.size() * 7 + static_cast<std::uint64_t>(year)) % 50;
  };

  auto fill = [&](corpus::WorkCounts& wc, const std::vector<std::string>& parties, int year) {
    for (const auto& p : parties)
      if (!wc.has_party(p)) wc.set_party_count(p, single(p, year));
    for (size_t i = 0; i < parties.size(); ++i)
      for (size_t j = i + 1; j < parties.size(); ++j)
        if (!wc.has_joint(parties[i], parties[j]))
          wc.set_joint_count(parties[i], parties[j], joint(parties[i], parties[j], year));
  };

  for (const auto& scope : report::distance_scopes(cfg))
    for (int y = cfg.years.first; y <= cfg.years.last; ++y)
      fill(snap.counts_for(scope, {y, y}), cfg.parties, y);

  const auto& pooled = corpus::pooled_natural_sciences();
  for (const auto& period : report::five_year_periods(cfg.years)) {
    auto& wc = snap.counts_for(pooled, period);
    fill(wc, cfg.tetra_parties, period.first);
    fill(wc, cfg.triangle_parties, period.first);
  }

  // twelve migrating authors per discipline keep sigma_off at 12
  for (const auto& id : cfg.disciplines)
    for (int tau = cfg.kfr_years.first; tau < cfg.kfr_years.last; ++tau) {
      std::vector<openalex::GroupedCount> authors;
      for (int a = 0; a < 12; ++a) {
        const std::string author = "A" + id.substr(1) + std::to_string(a);
        authors.push_back({author, static_cast<std::uint64_t>(200 - a)});
        snap.author_countries[{author, tau}] = {tau % 2 == 0 ? "US" : "CN"};
        snap.author_countries[{author, tau + 1}] = {tau % 2 == 0 ? "CN" : "US"};
      }
      snap.cohorts[{id, tau}] = std::move(authors);
    }
  return snap;
}

void run_all_commands(const store::SnapshotData& snap, const config::RunConfig& cfg) {
  report::cmd_distance(snap, cfg);
  report::cmd_kfr(snap, cfg);
  report::cmd_geometry(snap, cfg);
  report::cmd_simulate(snap, cfg);
}

std::map<std::string, std::string> data_files(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), root).string();
    if (rel.find(".meta.json") != std::string::npos) continue;  // timestamps live here
    out[rel] = util::read_file(entry.path());
  }
  return out;
}

}  // namespace

TEST_CASE("toml subset: tables, scalars, arrays, comments") {
  const auto table = toml::parse("top = 1\n"
                                 "[run]\n"
                                 "name = \"abc # not a comment\"  # trailing comment\n"
                                 "pi = 3.5\n"
                                 "flag = true\n"
                                 "years = [2000, 2021]\n"
                                 "codes = [\"US\", \"CN\"]\n"
                                 "empty = []\n");
  CHECK(table.at("top").as_integer() == 1);
  CHECK(table.at("run.name").as_string() == "abc # not a comment");
  CHECK(table.at("run.pi").as_real() == 3.5);
  CHECK(table.at("run.flag").as_boolean() == true);
  CHECK(table.at("run.years").as_integer_array() == std::vector<std::int64_t>{2000, 2021});
  CHECK(table.at("run.codes").as_string_array() == std::vector<std::string>{"US", "CN"});
  CHECK(table.at("run.empty").as_array().empty());

  // multi-line arrays with comments and a trailing comma
  const auto multi = toml::parse("[run]\nxs = [\n  1,  # one\n  2,\n  3,\n]\n");
  CHECK(multi.at("run.xs").as_integer_array() == std::vector<std::int64_t>{1, 2, 3});

  CHECK_THROWS_AS(toml::parse("a = 1\na = 2\n"), ValidationError);      // duplicate
  CHECK_THROWS_AS(toml::parse("a = \n"), ValidationError);              // missing value
  CHECK_THROWS_AS(toml::parse("[t\n"), ValidationError);                // broken header
  CHECK_THROWS_AS(toml::parse("a = [1, \"x\"]\n"), ValidationError);    // mixed array
  CHECK_THROWS_AS(toml::parse("a = \"unterminated\n"), ValidationError);
}

TEST_CASE("config load applies values and rejects bad input") {
  const auto dir = fresh_dir("config");
  const auto path = dir / "run.toml";
  {
    std::ofstream out(path);
    out << "[run]\n"
        << "parties = [\"US\", \"CN\"]\n"
        << "disciplines = [\"C33923547\"]\n"
        << "years = [2001, 2006]\n"
        << "granularity = \"five-year\"\n"
        << "representation = \"rescaled\"\n"
        << "offline = true\n"
        << "[kfr]\n"
        << "years = [2002, 2004]\n"
        << "[scenarios]\n"
        << "damping = 0.7\n";
  }
  const auto cfg = config::load(path);
  CHECK(cfg.parties == std::vector<std::string>{"US", "CN"});
  CHECK(cfg.years.first == 2001);
  CHECK(cfg.granularity == config::PeriodGranularity::five_year);
  CHECK(cfg.representation == scenarios::Representation::rescaled);
  CHECK(cfg.offline);
  CHECK(cfg.scenario.damping == 0.7);

  auto write_and_load = [&](const std::string& body) {
    const auto p = dir / "bad.toml";
    std::ofstream out(p, std::ios::trunc);
    out << body;
    out.close();
    return config::load(p);
  };
  CHECK_THROWS_AS(write_and_load("[run]\nparties = [\"US\"]\ndisciplines = [\"C33923547\"]\n"),
                  ValidationError);  // < 2 parties
  CHECK_THROWS_AS(write_and_load("[run]\ndisciplines = [\"C33923547\"]\nyears = [2020, 2010]\n"),
                  ValidationError);  // empty range
  CHECK_THROWS_AS(write_and_load("[run]\ndisciplines = [\"NOPE\"]\n"), ValidationError);
  CHECK_THROWS_AS(write_and_load("[run]\ndisciplines = [\"C33923547\"]\ntypo_key = 1\n"),
                  ValidationError);
  CHECK_THROWS_AS(write_and_load("[run]\ndisciplines = [\"C33923547\"]\nparties = [\"US\", \"Atlantis\"]\n"),
                  ValidationError);
  fs::remove_all(dir);
}

TEST_CASE("five-year periods partition the range with a truncated tail") {
  const auto periods = report::five_year_periods({1970, 1982});
  REQUIRE(periods.size() == 3);
  CHECK(periods[0] == corpus::YearRange{1970, 1974});
  CHECK(periods[1] == corpus::YearRange{1975, 1979});
  CHECK(periods[2] == corpus::YearRange{1980, 1982});
}

TEST_CASE("distance scopes put the pooled pseudo-discipline first") {
  const auto cfg = test_config(fs::temp_directory_path());
  const auto scopes = report::distance_scopes(cfg);
  REQUIRE(scopes.size() == 11);
  CHECK(scopes.front().label == corpus::pooled_natural_sciences().label);
}

TEST_CASE("pair_series recomputes per-year jaccard from snapshot counts") {
  const auto cfg = test_config(fs::temp_directory_path());
  const auto snap = synthetic_snapshot(cfg);
  const auto series = report::pair_series(snap, corpus::pooled_natural_sciences(), "US", "CN",
                                          cfg.years);
  REQUIRE(series.size() == 4);
  for (const auto& p : series) {
    const auto* wc = snap.find_counts(corpus::pooled_natural_sciences().concept_id,
                                      {p.year, p.year});
    REQUIRE(wc != nullptr);
    const double expected = 1.0 - static_cast<double>(wc->joint_count("US", "CN")) /
                                      static_cast<double>(corpus::union_size(*wc, "US", "CN"));
    CHECK(p.value == expected);
  }
}

TEST_CASE("snapshot author source: missing sets empty, missing cohorts error") {
  const auto cfg = test_config(fs::temp_directory_path());
  const auto snap = synthetic_snapshot(cfg);
  report::SnapshotAuthorSource source(snap);
  CHECK(source.country_set("A_nobody", 2015).empty());
  CHECK_THROWS_AS(source.top_authors(corpus::discipline("C33923547"), 1999), ValidationError);
  CHECK(source.top_authors(corpus::discipline("C33923547"), 2015).size() == 12);
}

TEST_CASE("ns average equals the hand-computed mean of per-discipline series") {
  const auto cfg = test_config(fs::temp_directory_path());
  const auto snap = synthetic_snapshot(cfg);

  const auto average = report::ns_average_kfr(snap, cfg);
  std::vector<std::map<int, std::optional<kflow::RateMatrix>>> per_discipline;
  for (const auto& d : corpus::natural_science_disciplines())
    per_discipline.push_back(report::kfr_series(snap, cfg, d));

  const int n = static_cast<int>(cfg.parties.size());
  for (const auto& [tau, rates] : average) {
    REQUIRE(rates.has_value());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double sum = 0.0;
        int included = 0;
        for (const auto& series : per_discipline) {
          const auto& cell = series.at(tau);
          if (!cell.has_value()) continue;
          sum += cell->at(i, j);
          ++included;
        }
        REQUIRE(included > 0);
        CHECK(rates->at(i, j) == doctest::Approx(sum / included).epsilon(1e-12));
      }
  }
}

TEST_CASE("ns average refuses a run missing one of the ten disciplines") {
  auto cfg = test_config(fs::temp_directory_path());
  const auto snap = synthetic_snapshot(cfg);
  cfg.disciplines.pop_back();
  CHECK_THROWS_AS(report::ns_average_kfr(snap, cfg), ValidationError);
}

TEST_CASE("emitters are deterministic: identical bytes across two runs") {
  const auto out1 = fresh_dir("emit1");
  const auto out2 = fresh_dir("emit2");
  auto cfg = test_config(out1);
  const auto snap = synthetic_snapshot(cfg);

  run_all_commands(snap, cfg);
  cfg.out_dir = out2;
  run_all_commands(snap, cfg);

  const auto files1 = data_files(out1);
  const auto files2 = data_files(out2);
  REQUIRE_FALSE(files1.empty());
  REQUIRE(files1.size() == files2.size());
  for (const auto& [rel, content] : files1) {
    REQUIRE(files2.count(rel) == 1);
    CHECK(files2.at(rel) == content);
  }

  // spot-check the expected artifacts exist
  CHECK(files1.count("distance/natural-sciences-pooled/series.csv") == 1);
  CHECK(files1.count("distance/mathematics/matrix_2015.csv") == 1);
  CHECK(files1.count("kfr/natural-sciences-average.csv") == 1);
  CHECK(files1.count("geometry/tetra_series.csv") == 1);
  CHECK(files1.count("geometry/triangle_series.csv") == 1);
  CHECK(files1.count("simulate/us-cn.csv") == 1);

  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("kfr csv marks excluded transitions instead of dropping them") {
  const auto out = fresh_dir("excluded");
  auto cfg = test_config(out);
  auto snap = synthetic_snapshot(cfg);

  // Starve one transition below the threshold for one discipline.
  const std::string id = cfg.disciplines.front();
  auto& cohort = snap.cohorts.at({id, 2015});
  cohort.resize(3);  // only 3 switching authors -> sigma_off = 3 < 10
  report::cmd_kfr(snap, cfg);

  const std::string csv =
      util::read_file(out / "kfr" / (util::slugify(corpus::discipline(id).label) + ".csv"));
  CHECK(csv.find("2015,US->CN,excluded") != std::string::npos);
  CHECK(csv.find("2016,US->CN,excluded") == std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("rescaled representation switches the rendered geometry edges only") {
  const auto out_raw = fresh_dir("georaw");
  const auto out_resc = fresh_dir("georesc");
  auto cfg = test_config(out_raw);
  const auto snap = synthetic_snapshot(cfg);
  report::cmd_geometry(snap, cfg);

  cfg.out_dir = out_resc;
  cfg.representation = scenarios::Representation::rescaled;
  report::cmd_geometry(snap, cfg);

  // metric outputs identical, rendered figures differ
  CHECK(util::read_file(out_raw / "geometry" / "tetra_series.csv") ==
        util::read_file(out_resc / "geometry" / "tetra_series.csv"));
  CHECK(util::read_file(out_raw / "geometry" / "triangle_series.csv") ==
        util::read_file(out_resc / "geometry" / "triangle_series.csv"));
  CHECK(util::read_file(out_raw / "geometry" / "tetra.svg") !=
        util::read_file(out_resc / "geometry" / "tetra.svg"));
  CHECK(util::read_file(out_raw / "geometry" / "triangle.svg") !=
        util::read_file(out_resc / "geometry" / "triangle.svg"));
  fs::remove_all(out_raw);
  fs::remove_all(out_resc);
}

TEST_CASE("simulate derives the decline rate or fails loudly") {
  const auto out = fresh_dir("simulate");
  auto cfg = test_config(out);
  const auto snap = synthetic_snapshot(cfg);
  cfg.scenario.decline_rate = 0.0;  // derivation window 2010-2018 missing from 2015-2018 data
  CHECK_THROWS_AS(report::cmd_simulate(snap, cfg), ValidationError);
  fs::remove_all(out);
}

TEST_CASE("config hash tracks semantic fields") {
  auto a = test_config(fs::temp_directory_path());
  auto b = a;
  CHECK(config::config_hash(a) == config::config_hash(b));
  b.kfr_aggregate = config::KfrAggregate::pooled_cohort;
  CHECK(config::config_hash(a) != config::config_hash(b));
  // out_dir is plumbing, not semantics
  b = a;
  b.out_dir = "elsewhere";
  CHECK(config::config_hash(a) == config::config_hash(b));
}
