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

// Shared test oracles. Everything here recomputes results through an
// independent route (explicit set enumeration, brute-force flow counting,
// direct coordinate generation) so the production code has something honest
// to be checked against.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/kflow.hpp"

namespace atlas::test {

// --- synthetic corpora -------------------------------------------------------

/// A work is just a set of contributor institution countries.
struct SyntheticWork {
  int id = 0;
  std::set<std::string> countries;
};

struct SyntheticCorpus {
  std::vector<SyntheticWork> works;
  std::vector<corpus::PartySpec> parties;
};

/// Random corpus over `parties`: each work samples 1..3 member countries,
/// sometimes spanning several parties (that is the point).
inline SyntheticCorpus random_corpus(std::mt19937& rng, const std::vector<corpus::PartySpec>& parties,
                                     int max_works) {
  SyntheticCorpus corpus;
  corpus.parties = parties;
  std::vector<std::string> all_codes;
  for (const auto& p : parties)
    for (const auto& c : p.members) all_codes.push_back(c);
  std::sort(all_codes.begin(), all_codes.end());

  std::uniform_int_distribution<int> count_dist(1, max_works);
  std::uniform_int_distribution<int> tags_dist(1, 3);
  std::uniform_int_distribution<size_t> code_dist(0, all_codes.size() - 1);
  const int n = count_dist(rng);
  for (int i = 0; i < n; ++i) {
    SyntheticWork w;
    w.id = i;
    const int tags = tags_dist(rng);
    for (int t = 0; t < tags; ++t) w.countries.insert(all_codes[code_dist(rng)]);
    corpus.works.push_back(std::move(w));
  }
  return corpus;
}

/// Oracle party set: ids of works with at least one contributor country in
/// the party, via plain std::set machinery.
inline std::set<int> oracle_party_set(const SyntheticCorpus& corpus,
                                      const corpus::PartySpec& party) {
  std::set<int> out;
  for (const auto& w : corpus.works)
    for (const auto& c : w.countries)
      if (party.members.count(c) != 0) {
        out.insert(w.id);
        break;
      }
  return out;
}

inline std::uint64_t oracle_intersection(const std::set<int>& a, const std::set<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

inline std::uint64_t oracle_union(const std::set<int>& a, const std::set<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

/// Production-path counting: WorkCounts filled through nationality_of.
inline corpus::WorkCounts counts_from_corpus(const SyntheticCorpus& synthetic,
                                             const corpus::Discipline& discipline,
                                             const corpus::YearRange& period) {
  corpus::WorkCounts wc(discipline, period);
  for (const auto& party : synthetic.parties) {
    std::uint64_t count = 0;
    for (const auto& w : synthetic.works)
      if (corpus::nationality_of(w.countries, party)) ++count;
    wc.set_party_count(party.name, count);
  }
  for (size_t i = 0; i < synthetic.parties.size(); ++i)
    for (size_t j = i + 1; j < synthetic.parties.size(); ++j) {
      std::uint64_t joint = 0;
      for (const auto& w : synthetic.works)
        if (corpus::nationality_of(w.countries, synthetic.parties[i]) &&
            corpus::nationality_of(w.countries, synthetic.parties[j]))
          ++joint;
      wc.set_joint_count(synthetic.parties[i].name, synthetic.parties[j].name, joint);
    }
  return wc;
}

/// Five disjoint single-country test parties.
inline std::vector<corpus::PartySpec> five_test_parties() {
  return {
      {"P1", {"AA"}}, {"P2", {"BB"}}, {"P3", {"CC"}}, {"P4", {"DD"}}, {"P5", {"EE"}},
  };
}

// --- geometry oracles --------------------------------------------------------

/// Random points in a ball of radius `scale` -> exact Euclidean distance
/// matrix (realizable by construction, entries well inside [0,1]).
inline Eigen::MatrixXd random_realizable_metric(std::mt19937& rng, int n, int dim,
                                                double scale = 0.45) {
  std::uniform_real_distribution<double> coord(-scale / 2.0, scale / 2.0);
  Eigen::MatrixXd points(n, dim);
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < dim; ++d) points(i, d) = coord(rng);
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dist(i, j) = dist(j, i) = (points.row(i) - points.row(j)).norm();
  return dist;
}

inline std::vector<std::string> point_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("P" + std::to_string(i + 1));
  return names;
}

/// Tetrahedron volume straight from 4 points: |det spanning vectors| / 6.
inline double oracle_tetra_volume_from_points(const Eigen::MatrixXd& points) {
  Eigen::Matrix3d span;
  for (int i = 0; i < 3; ++i) span.row(i) = points.row(i + 1) - points.row(0);
  return std::abs(span.determinant()) / 6.0;
}

// --- knowledge-flow oracle ---------------------------------------------------

/// Brute-force K-matrix as a (from, to) -> count map, enumerated with loops
/// that share nothing with the production FlowMatrix path.
inline std::map<std::pair<std::string, std::string>, std::uint64_t> oracle_k_matrix(
    const std::vector<std::pair<kflow::AuthorYearSet, kflow::AuthorYearSet>>& cohort) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> k;
  for (const auto& [at, next] : cohort)
    for (const auto& from : at.parties)
      for (const auto& to : next.parties) ++k[{from, to}];
  return k;
}

}  // namespace atlas::test
