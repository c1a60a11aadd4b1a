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

// Generates the recorded fixture corpus: a deterministic, OpenAlex-shaped
// world model served through the regular fetch pipeline in record mode, so
// the corpus covers exactly the query grid of the given config.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "atlas/config.hpp"
#include "atlas/corpus.hpp"
#include "atlas/errors.hpp"
#include "atlas/openalex.hpp"
#include "atlas/report.hpp"

namespace {

using atlas::corpus::Discipline;
using atlas::corpus::PartySpec;
using nlohmann::json;

// ---------------------------------------------------------------------------
// World model: party output sizes and pairwise joint counts per year, plus
// author cohorts with year-by-year affiliations. Everything is a pure
// function of (scope, year), so regeneration is reproducible.

struct Anchor {
  int year;
  double value;
};

double interpolate(const std::vector<Anchor>& anchors, int year) {
  if (year <= anchors.front().year) return anchors.front().value;
  if (year >= anchors.back().year) return anchors.back().value;
  for (size_t i = 1; i < anchors.size(); ++i)
    if (year <= anchors[i].year) {
      const auto& a = anchors[i - 1];
      const auto& b = anchors[i];
      const double t = double(year - a.year) / double(b.year - a.year);
      return a.value + t * (b.value - a.value);
    }
  return anchors.back().value;
}

// Per-party publication volumes (pooled natural sciences), in works/year.
double pooled_size(const std::string& party, int year) {
  const double dt = year - 2000;
  if (party == "US") return 380000.0 * std::pow(1.028, dt);
  if (party == "CN") return 90000.0 * std::pow(1.105, dt);
  if (party == "EU27") return 340000.0 * std::pow(1.027, dt);
  if (party == "GB") return 115000.0 * std::pow(1.028, dt);
  if (party == "JP") return 98000.0 * std::pow(1.012, dt);
  if (party == "EU27&UK")
    return pooled_size("EU27", year) + pooled_size("GB", year) - 26000.0 * std::pow(1.03, dt);
  if (party == "RoW") return 720000.0 * std::pow(1.038, dt);
  throw atlas::ValidationError("fixture model has no size for party " + party);
}

// Target Jaccard distances per pair (pooled). The US-CN trajectory carries
// the long convergence, one small 2004 bump, and the post-2019 reversal.
double pooled_distance(const std::string& a, const std::string& b, int year) {
  const std::string key = a < b ? a + "|" + b : b + "|" + a;
  static const std::map<std::string, std::vector<Anchor>> targets = {
      {"CN|US",
       {{1970, 0.99990}, {1980, 0.99975}, {1990, 0.99930}, {2000, 0.99680}, {2005, 0.99560},
        {2009, 0.99480}, {2010, 0.99430}, {2012, 0.99240}, {2015, 0.98950}, {2018, 0.98700},
        {2019, 0.98680}, {2020, 0.98760}, {2021, 0.98850}, {2030, 0.99150}}},
      {"EU27|US", {{1970, 0.99800}, {1990, 0.99550}, {2000, 0.99300}, {2010, 0.99050}, {2021, 0.98820}}},
      {"GB|US", {{1970, 0.99780}, {1990, 0.99500}, {2000, 0.99230}, {2010, 0.98980}, {2021, 0.98760}}},
      {"JP|US", {{1970, 0.99950}, {1990, 0.99800}, {2000, 0.99660}, {2010, 0.99500}, {2021, 0.99360}}},
      {"CN|EU27", {{1970, 0.99995}, {1990, 0.99950}, {2000, 0.99800}, {2010, 0.99600}, {2021, 0.99370}}},
      {"CN|GB", {{1970, 0.99995}, {1990, 0.99960}, {2000, 0.99820}, {2010, 0.99620}, {2021, 0.99390}}},
      {"CN|JP", {{1970, 0.99990}, {1990, 0.99940}, {2000, 0.99780}, {2010, 0.99640}, {2021, 0.99470}}},
      {"EU27|GB", {{1970, 0.99720}, {1990, 0.99400}, {2000, 0.99100}, {2010, 0.98820}, {2021, 0.98560}}},
      {"EU27|JP", {{1970, 0.99960}, {1990, 0.99880}, {2000, 0.99740}, {2010, 0.99600}, {2021, 0.99480}}},
      {"GB|JP", {{1970, 0.99970}, {1990, 0.99900}, {2000, 0.99760}, {2010, 0.99630}, {2021, 0.99500}}},
      {"EU27&UK|US", {{1970, 0.99760}, {1990, 0.99480}, {2000, 0.99200}, {2010, 0.98940}, {2021, 0.98700}}},
      {"CN|EU27&UK", {{1970, 0.99993}, {1990, 0.99945}, {2000, 0.99790}, {2010, 0.99580}, {2021, 0.99350}}},
      {"EU27&UK|JP", {{1970, 0.99955}, {1990, 0.99870}, {2000, 0.99720}, {2010, 0.99580}, {2021, 0.99450}}},
      {"RoW|US", {{1970, 0.99720}, {1990, 0.99400}, {2000, 0.99100}, {2010, 0.98800}, {2021, 0.98480}}},
      {"CN|RoW", {{1970, 0.99990}, {1990, 0.99930}, {2000, 0.99700}, {2010, 0.99350}, {2021, 0.99000}}},
  };

  double d;
  auto it = targets.find(key);
  if (it != targets.end()) {
    d = interpolate(it->second, year);
  } else {
    d = 0.99500 - 0.00005 * (year - 2000);  // fallback for unanchored pairs
  }
  if (key == "CN|US" && year == 2004) d = interpolate(targets.at("CN|US"), 2003) + 0.00004;
  return std::clamp(d, 0.9, 0.99995);
}

int discipline_index(const std::string& concept_id) {
  const auto& all = atlas::corpus::builtin_disciplines();
  for (size_t i = 0; i < all.size(); ++i)
    if (all[i].concept_id == concept_id) return static_cast<int>(i);
  throw atlas::ValidationError("fixture model: unknown concept " + concept_id);
}

double discipline_weight(int index) {
  static const double weights[] = {0.05, 0.07, 0.03, 0.16, 0.11, 0.12, 0.10, 0.06, 0.05, 0.22,
                                   0.06, 0.03, 0.03, 0.02, 0.02, 0.04, 0.02, 0.01, 0.01};
  return weights[index % 19];
}

bool is_pooled(const std::string& concept_value) {
  return concept_value == atlas::corpus::pooled_natural_sciences().concept_id;
}

std::uint64_t single_count(const std::string& concept_value, const std::string& party, int year) {
  double size = pooled_size(party, year);
  if (!is_pooled(concept_value)) size *= discipline_weight(discipline_index(concept_value));
  return static_cast<std::uint64_t>(std::llround(size));
}

std::uint64_t joint_count(const std::string& concept_value, const std::string& a,
                          const std::string& b, int year) {
  double d = pooled_distance(a, b, year);
  if (!is_pooled(concept_value)) {
    const int index = discipline_index(concept_value);
    d = std::clamp(d + ((index * 7) % 13 - 6) * 2e-4, 0.9, 0.99995);
  }
  const double total =
      double(single_count(concept_value, a, year)) + double(single_count(concept_value, b, year));
  // Joint size that realizes the target distance: I = (|A|+|B|)(1-D)/(2-D).
  return static_cast<std::uint64_t>(std::llround(total * (1.0 - d) / (2.0 - d)));
}

// ---------------------------------------------------------------------------
// Author cohort model. Each discipline has a stable pool of 26 productive
// authors: 25 with a single affiliation country and one with a standing
// US+CN dual affiliation. A per-year move plan swaps authors between
// parties; US<->CN swaps ramp up through 2018, turn asymmetric in 2019 and
// thin out in 2020.

constexpr int kPoolSize = 26;
constexpr int kDualIndex = 25;
constexpr int kAuthorYearFirst = 2005;
constexpr int kAuthorYearLast = 2030;

struct Move {
  const char* from;
  const char* to;
  int count;
};

std::vector<Move> move_plan(int tau, bool even_discipline) {
  std::vector<Move> moves;
  auto swap_pair = [&](const char* x, const char* y, int count) {
    moves.push_back({x, y, count});
    moves.push_back({y, x, count});
  };

  int k = 0;
  if (tau >= 2010 && tau <= 2018) k = 3 + (tau - 2010) / 2;
  if (even_discipline && tau >= 2014 && tau <= 2018) k += 1;

  if (tau <= 2018) {
    if (k > 0) swap_pair("US", "CN", k);
  } else if (tau == 2019) {
    moves.push_back({"US", "CN", 5});
    moves.push_back({"CN", "US", 3});
  } else {
    moves.push_back({"US", "CN", 3});
    moves.push_back({"CN", "US", 2});
  }

  swap_pair("EU27", "GB", 1);
  swap_pair("EU27", "JP", 1);
  swap_pair("GB", "JP", 1);
  if (tau <= 2012) {
    swap_pair("US", "EU27", 1);
    swap_pair("US", "GB", 1);
  } else if (tau <= 2015) {
    swap_pair("US", "EU27", 1);
  }
  return moves;
}

class CohortModel {
public:
  explicit CohortModel(int discipline_index) : index_(discipline_index) {
    // author i's party path over the modeled years
    std::vector<std::string> party(kPoolSize);
    for (int i = 0; i < 25; ++i) {
      if (i < 8)
        party[i] = "US";
      else if (i < 16)
        party[i] = "CN";
      else if (i < 19)
        party[i] = "EU27";
      else if (i < 22)
        party[i] = "GB";
      else
        party[i] = "JP";
    }
    party[kDualIndex] = "dual";

    for (int year = kAuthorYearFirst; year <= kAuthorYearLast; ++year) {
      for (int i = 0; i < kPoolSize; ++i) state_[{i, year}] = party[i];
      if (year < 2010 || year > 2020) continue;  // quiet outside the active window
      // apply the move plan for transition year -> year+1
      std::vector<std::string> next = party;
      std::set<int> moved;
      for (const auto& move : move_plan(year, index_ % 2 == 0)) {
        int remaining = move.count;
        for (int i = 0; i < 25 && remaining > 0; ++i) {
          if (party[i] != move.from || moved.count(i) != 0) continue;
          next[i] = move.to;
          moved.insert(i);
          --remaining;
        }
        if (remaining != 0)
          throw atlas::ValidationError("fixture cohort move plan infeasible at year " +
                                       std::to_string(year));
      }
      party = std::move(next);
    }
  }

  std::string author_id(int author_index) const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "A5%02d%02d01", index_, author_index);
    return buf;
  }

  /// ISO country codes of the author's institutions in `year`.
  std::vector<std::string> countries(int author_index, int year) const {
    auto it = state_.find({author_index, year});
    if (it == state_.end()) return {};
    static const std::map<std::string, std::string> iso = {
        {"US", "US"}, {"CN", "CN"}, {"EU27", "DE"}, {"GB", "GB"}, {"JP", "JP"}};
    if (it->second == "dual") return {"US", "CN"};
    return {iso.at(it->second)};
  }

  std::uint64_t work_count(int author_index, int tau) const {
    return 900 - 13 * static_cast<std::uint64_t>(author_index) -
           (static_cast<std::uint64_t>(index_) * 31 + author_index * 17 + tau * 7) % 9;
  }

private:
  int index_;
  std::map<std::pair<int, int>, std::string> state_;  // (author index, year) -> party
};

// ---------------------------------------------------------------------------
// Transport that serves the model in OpenAlex response shape.

class SynthTransport : public atlas::openalex::HttpTransport {
public:
  atlas::openalex::HttpResponse get(const std::string& target) override {
    return {200, body_for(target) + "\n"};
  }

private:
  struct Request {
    std::map<std::string, std::string> params;             // non-filter params
    std::vector<std::pair<std::string, std::string>> filters;
  };

  static Request parse_target(const std::string& target) {
    const auto question = target.find('?');
    if (target.substr(0, question) != "/works")
      throw atlas::ValidationError("fixture transport only models the works endpoint");
    Request request;
    std::string query = question == std::string::npos ? "" : target.substr(question + 1);
    size_t pos = 0;
    while (pos < query.size()) {
      const auto amp = query.find('&', pos);
      const std::string param = query.substr(pos, amp == std::string::npos ? amp : amp - pos);
      pos = amp == std::string::npos ? query.size() : amp + 1;
      const auto eq = param.find('=');
      const std::string key = param.substr(0, eq);
      const std::string value = eq == std::string::npos ? "" : param.substr(eq + 1);
      if (key == "filter") {
        size_t fpos = 0;
        while (fpos < value.size()) {
          const auto comma = value.find(',', fpos);
          const std::string clause =
              value.substr(fpos, comma == std::string::npos ? comma : comma - fpos);
          fpos = comma == std::string::npos ? value.size() : comma + 1;
          const auto colon = clause.find(':');
          request.filters.emplace_back(clause.substr(0, colon), clause.substr(colon + 1));
        }
      } else {
        request.params[key] = value;
      }
    }
    return request;
  }

  const PartySpec* party_from_filter(const std::string& value) const {
    for (const auto& p : atlas::corpus::builtin_parties())
      if (atlas::corpus::party_filter_value(p) == value) return &p;
    throw atlas::ValidationError("fixture transport: unknown country filter " + value);
  }

  static std::vector<int> years_from_filter(const std::string& value) {
    std::vector<int> years;
    size_t pos = 0;
    while (pos < value.size()) {
      const auto bar = value.find('|', pos);
      years.push_back(std::stoi(value.substr(pos, bar == std::string::npos ? bar : bar - pos)));
      pos = bar == std::string::npos ? value.size() : bar + 1;
    }
    return years;
  }

  const CohortModel& cohort_by_index(int index) {
    auto it = cohorts_.find(index);
    if (it == cohorts_.end()) it = cohorts_.emplace(index, CohortModel(index)).first;
    return it->second;
  }

  const CohortModel& cohort(const std::string& concept_id) {
    return cohort_by_index(discipline_index(concept_id));
  }

  std::string body_for(const std::string& target) {
    const Request request = parse_target(target);

    std::string concept_value, author_id;
    std::vector<int> years;
    std::vector<const PartySpec*> parties;
    for (const auto& [key, value] : request.filters) {
      if (key == "concepts.id") concept_value = value;
      else if (key == "publication_year") years = years_from_filter(value);
      else if (key == "institutions.country_code") parties.push_back(party_from_filter(value));
      else if (key == "authorships.author.id") author_id = value;
      else throw atlas::ValidationError("fixture transport: unmodeled filter " + key);
    }

    if (request.params.count("group_by") != 0) return cohort_body(concept_value, years.at(0));
    if (!author_id.empty()) return listing_body(author_id, years.at(0), request);
    return count_body(concept_value, years, parties);
  }

  std::string count_body(const std::string& concept_value, const std::vector<int>& years,
                         const std::vector<const PartySpec*>& parties) const {
    std::uint64_t count = 0;
    for (int year : years) {
      if (parties.size() == 1)
        count += single_count(concept_value, parties[0]->name, year);
      else if (parties.size() == 2)
        count += joint_count(concept_value, parties[0]->name, parties[1]->name, year);
      else
        throw atlas::ValidationError("fixture transport: unmodeled country filter arity");
    }
    json j;
    j["meta"] = {{"count", count}, {"db_response_time_ms", 13}, {"page", 1}, {"per_page", 25}};
    j["results"] = json::array();
    j["group_by"] = json::array();
    return j.dump();
  }

  std::string cohort_body(const std::string& concept_id, int tau) {
    const CohortModel& model = cohort(concept_id);
    std::vector<std::pair<std::uint64_t, int>> ranked;
    for (int i = 0; i < kPoolSize; ++i) ranked.emplace_back(model.work_count(i, tau), i);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });

    json groups = json::array();
    groups.push_back(
        {{"key", "unknown"}, {"key_display_name", "unknown"}, {"count", 4096}});
    for (const auto& [count, index] : ranked)
      groups.push_back({{"key", "https://openalex.org/" + model.author_id(index)},
                        {"key_display_name", "Author " + model.author_id(index)},
                        {"count", count}});

    json j;
    j["meta"] = {{"count", kPoolSize + 1}, {"db_response_time_ms", 21}, {"page", 1},
                 {"per_page", 200}};
    j["results"] = json::array();
    j["group_by"] = groups;
    return j.dump();
  }

  std::string listing_body(const std::string& author_id, int year, const Request& request) {
    json results = json::array();
    // Fixture listings always fit one page; only the first cursor is modeled.
    if (request.params.count("cursor") != 0 && request.params.at("cursor") != "%2A" &&
        request.params.at("cursor") != "*")
      throw atlas::ValidationError("fixture transport: unexpected cursor page");

    // id format: A5<disc:2><author:2>01
    if (author_id.size() != 8 || author_id.rfind("A5", 0) != 0)
      throw atlas::ValidationError("fixture transport: unmodeled author id " + author_id);
    const int disc_index = std::stoi(author_id.substr(2, 2));
    const int author_index = std::stoi(author_id.substr(4, 2));
    const CohortModel& model = cohort_by_index(disc_index);

    const auto countries = model.countries(author_index, year);
    if (!countries.empty()) {
      json institutions = json::array();
      for (size_t c = 0; c < countries.size(); ++c)
        institutions.push_back({{"id", "https://openalex.org/I9" + std::to_string(c)},
                                {"display_name", "Institution " + countries[c]},
                                {"country_code", countries[c]}});
      if ((author_index + year) % 5 == 0)
        institutions.push_back({{"id", "https://openalex.org/I999"},
                                {"display_name", "Unlisted institute"},
                                {"country_code", nullptr}});

      json authorships = json::array();
      authorships.push_back({{"author",
                              {{"id", "https://openalex.org/" + author_id},
                               {"display_name", "Author " + author_id}}},
                             {"institutions", institutions}});
      // A coauthor whose affiliation must never leak into the result.
      authorships.push_back({{"author",
                              {{"id", "https://openalex.org/A7770000001"},
                               {"display_name", "Coauthor"}}},
                             {"institutions", json::array({{{"id", "https://openalex.org/I777"},
                                                            {"display_name", "Somewhere else"},
                                                            {"country_code", "BR"}}})}});

      results.push_back({{"id", "https://openalex.org/W1" + author_id.substr(1) +
                                    std::to_string(year)},
                         {"authorships", authorships}});
      if ((author_index + year) % 3 == 0) {
        json second = json::array();
        second.push_back({{"author",
                           {{"id", "https://openalex.org/" + author_id},
                            {"display_name", "Author " + author_id}}},
                          {"institutions", json::array({institutions.at(0)})}});
        results.push_back({{"id", "https://openalex.org/W2" + author_id.substr(1) +
                                      std::to_string(year)},
                           {"authorships", second}});
      }
    }

    json j;
    j["meta"] = {{"count", results.size()}, {"db_response_time_ms", 17}, {"page", 1},
                 {"per_page", 200}, {"next_cursor", nullptr}};
    j["results"] = results;
    return j.dump();
  }

  std::map<int, CohortModel> cohorts_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the recorded fixture corpus for offline runs"};
  std::string config_path = "configs/fixture.toml";
  std::string stamp = "2025-06-15T00:00:00Z";
  app.add_option("--config", config_path, "run config whose query grid to record");
  app.add_option("--stamp", stamp, "retrieval timestamp written to fixture sidecars");
  CLI11_PARSE(app, argc, argv);

  try {
    atlas::config::RunConfig cfg = atlas::config::load(config_path);
    cfg.offline = false;

    atlas::openalex::FixtureStore store(cfg.fixtures_dir, atlas::openalex::FetchMode::record);
    store.set_fixed_timestamp(stamp);
    atlas::openalex::ClientOptions options;
    options.requests_per_second = 1e9;  // no throttling against the local model
    atlas::openalex::Client client(std::move(store), std::make_unique<SynthTransport>(), options);

    const auto snapshot = atlas::report::run_fetch(cfg, client);
    std::cout << "recorded " << client.issued_queries().size() << " queries under "
              << cfg.fixtures_dir.string() << "\n";
    std::cout << "snapshot id would be: " << atlas::store::snapshot_id(snapshot) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "fixture generation failed: " << e.what() << "\n";
    return 1;
  }
}
