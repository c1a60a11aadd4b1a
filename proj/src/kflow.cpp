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

#include "atlas/kflow.hpp"

#include <limits>

#include "atlas/errors.hpp"

namespace atlas::kflow {

std::set<std::string> map_countries_to_parties(const std::set<std::string>& codes,
                                               const std::vector<corpus::PartySpec>& parties) {
  std::set<std::string> out;
  for (const auto& p : parties)
    if (corpus::nationality_of(codes, p)) out.insert(p.name);
  return out;
}

std::vector<Flow> author_flows(const AuthorYearSet& at, const AuthorYearSet& next) {
  if (at.author_id != next.author_id)
    throw ValidationError("author flow needs two year-sets of the same author");
  if (next.year != at.year + 1)
    throw ValidationError("author flow needs consecutive years");

  std::vector<Flow> flows;
  flows.reserve(at.parties.size() * next.parties.size());
  for (const auto& from : at.parties)
    for (const auto& to : next.parties) flows.emplace_back(from, to);
  return flows;
}

FlowMatrix::FlowMatrix(std::vector<std::string> parties, int year_from)
    : parties_(std::move(parties)), year_from_(year_from),
      k_(parties_.size() * parties_.size(), 0) {}

std::uint64_t FlowMatrix::at(int i, int j) const {
  return k_[static_cast<size_t>(i) * parties_.size() + j];
}

int FlowMatrix::index_of(const std::string& party) const {
  for (size_t i = 0; i < parties_.size(); ++i)
    if (parties_[i] == party) return static_cast<int>(i);
  return -1;
}

void FlowMatrix::add(const std::string& from, const std::string& to, std::uint64_t n) {
  const int i = index_of(from);
  const int j = index_of(to);
  if (i < 0 || j < 0)
    throw ValidationError("flow references a party outside the matrix: " + from + "->" + to);
  k_[static_cast<size_t>(i) * parties_.size() + j] += n;
}

std::uint64_t FlowMatrix::sigma_off() const {
  std::uint64_t sum = 0;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sum += at(i, j);
  return sum;
}

FlowMatrix build_k_matrix(const std::vector<std::pair<AuthorYearSet, AuthorYearSet>>& cohort,
                          const std::vector<std::string>& parties) {
  if (parties.size() < 2) throw ValidationError("a flow matrix needs at least two parties");

  int year_from = cohort.empty() ? 0 : cohort.front().first.year;
  FlowMatrix m(parties, year_from);
  for (const auto& [at, next] : cohort) {
    if (at.year != year_from || next.year != year_from + 1)
      throw ValidationError("cohort mixes different year transitions");
    for (const auto& [from, to] : author_flows(at, next)) m.add(from, to);
  }
  return m;
}

std::optional<RateMatrix> kfr(const FlowMatrix& matrix) {
  const std::uint64_t sigma = matrix.sigma_off();
  if (sigma < kMinSigmaOff) return std::nullopt;

  const int n = matrix.size();
  RateMatrix rates;
  rates.parties = matrix.parties();
  rates.year_from = matrix.year_from();
  rates.rates.assign(static_cast<size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        rates.rates[static_cast<size_t>(i) * n + j] =
            static_cast<double>(matrix.at(i, j)) / static_cast<double>(sigma);
  return rates;
}

std::vector<FlowMatrix> cohort_series(const corpus::Discipline& discipline,
                                      corpus::YearRange years,
                                      const std::vector<corpus::PartySpec>& parties,
                                      AuthorDataSource& source) {
  if (years.first >= years.last)
    throw ValidationError("cohort series needs at least two years");

  std::vector<std::string> party_names;
  party_names.reserve(parties.size());
  for (const auto& p : parties) party_names.push_back(p.name);

  std::vector<FlowMatrix> series;
  for (int tau = years.first; tau < years.last; ++tau) {
    std::vector<std::pair<AuthorYearSet, AuthorYearSet>> cohort;
    for (const auto& author : source.top_authors(discipline, tau)) {
      AuthorYearSet at{author.key, tau,
                       map_countries_to_parties(source.country_set(author.key, tau), parties)};
      AuthorYearSet next{author.key, tau + 1,
                         map_countries_to_parties(source.country_set(author.key, tau + 1),
                                                  parties)};
      cohort.emplace_back(std::move(at), std::move(next));
    }
    FlowMatrix m = build_k_matrix(cohort, party_names);
    if (cohort.empty()) m = FlowMatrix(party_names, tau);  // keep the year label
    series.push_back(std::move(m));
  }
  return series;
}

}  // namespace atlas::kflow
