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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/openalex.hpp"

namespace atlas::kflow {

/// Party names an author was affiliated with in one year, after mapping
/// institution country codes through the configured parties. May be empty
/// (no works, unknown-only countries, or countries outside every party).
struct AuthorYearSet {
  std::string author_id;
  int year = 0;
  std::set<std::string> parties;
};

/// Country codes -> party names; codes outside every configured party are
/// dropped rather than bucketed anywhere.
std::set<std::string> map_countries_to_parties(const std::set<std::string>& codes,
                                               const std::vector<corpus::PartySpec>& parties);

using Flow = std::pair<std::string, std::string>;  // ordered (from, to)

/// One flow i->j for every (i, j) in parties(t) x parties(t+1), diagonal
/// included. An empty side yields no flows.
std::vector<Flow> author_flows(const AuthorYearSet& at, const AuthorYearSet& next);

/// Minimum off-diagonal mass for a transition to enter the rate series.
inline constexpr std::uint64_t kMinSigmaOff = 10;

/// Year-transition K-matrix: K[i][j] counts flows from party i to party j
/// across tau -> tau+1. Diagonal cells are kept for diagnostics but never
/// enter the off-diagonal sum or the rates.
class FlowMatrix {
public:
  FlowMatrix() = default;
  FlowMatrix(std::vector<std::string> parties, int year_from);

  const std::vector<std::string>& parties() const { return parties_; }
  int year_from() const { return year_from_; }
  int size() const { return static_cast<int>(parties_.size()); }

  std::uint64_t at(int i, int j) const;
  void add(const std::string& from, const std::string& to, std::uint64_t n = 1);
  std::uint64_t sigma_off() const;
  int index_of(const std::string& party) const;  // -1 when absent

private:
  std::vector<std::string> parties_;
  int year_from_ = 0;
  std::vector<std::uint64_t> k_;  // row-major n*n
};

FlowMatrix build_k_matrix(const std::vector<std::pair<AuthorYearSet, AuthorYearSet>>& cohort,
                          const std::vector<std::string>& parties);

/// Off-diagonal rates K_ij / sigma_off, summing to 1. Diagonal entries are
/// unset (NaN). Emitters scale by 100 for percentage display.
struct RateMatrix {
  std::vector<std::string> parties;
  int year_from = 0;
  std::vector<double> rates;  // row-major n*n, NaN on the diagonal

  double at(int i, int j) const { return rates[static_cast<size_t>(i) * parties.size() + j]; }
};

/// nullopt marks an excluded transition (sigma_off below threshold); the
/// year is reported as excluded, never silently dropped.
std::optional<RateMatrix> kfr(const FlowMatrix& matrix);

/// Data access needed to assemble cohorts; implemented by the API client
/// wrapper and by the snapshot-backed offline source.
class AuthorDataSource {
public:
  virtual ~AuthorDataSource() = default;
  virtual std::vector<openalex::GroupedCount> top_authors(const corpus::Discipline& discipline,
                                                          int year) = 0;
  virtual std::set<std::string> country_set(const std::string& author_id, int year) = 0;
};

/// Per-transition flow matrices for `years.first .. years.last-1`. The tau
/// cohort is the top-production authors of (discipline, tau); a missing
/// author-year set is the empty set, not an error.
std::vector<FlowMatrix> cohort_series(const corpus::Discipline& discipline,
                                      corpus::YearRange years,
                                      const std::vector<corpus::PartySpec>& parties,
                                      AuthorDataSource& source);

}  // namespace atlas::kflow
