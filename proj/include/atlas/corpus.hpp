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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace atlas::corpus {

/// Inclusive year range. A single year is the range [y, y].
struct YearRange {
  int first = 0;
  int last = 0;

  bool contains(int y) const { return y >= first && y <= last; }
  int size() const { return last - first + 1; }
  std::vector<int> years() const;
  std::string label() const;  // "2000" or "2000-2004"

  auto operator<=>(const YearRange&) const = default;
};

/// A named aggregation of ISO-3166 alpha-2 country codes. A "party" may be
/// a single country (US) or a bloc (EU27, top-50 rest of world).
struct PartySpec {
  std::string name;
  std::set<std::string> members;
};

enum class DomainClass { natural_science, hss };

struct Discipline {
  std::string concept_id;  // OpenAlex concept id, or a pipe-joined id list for pooled scopes
  std::string label;
  int level = 0;
  DomainClass domain_class = DomainClass::natural_science;
};

/// The seven built-in parties: US, CN, EU27, GB, JP plus the EU27&UK merge
/// and the top-50 rest-of-world bloc.
const std::vector<PartySpec>& builtin_parties();

/// Lookup by name among built-ins plus `extra`; throws ValidationError on
/// an unknown name.
const PartySpec& party(std::string_view name,
                       const std::vector<PartySpec>& extra = {});

/// The 19 level-0 disciplines.
const std::vector<Discipline>& builtin_disciplines();

/// The 10 level-0 natural-science disciplines.
std::vector<Discipline> natural_science_disciplines();

const Discipline& discipline(std::string_view concept_id);

/// Pseudo-discipline whose concept filter ORs together all 10 natural
/// science concept ids, so counts pool works across them at the API level.
const Discipline& pooled_natural_sciences();

/// True iff the work carries the party's nationality: at least one
/// contributor institution country is a member. Binary counting: the work
/// counts once per party no matter how many member-country contributors it
/// has, and an empty country set (unknown) matches no party.
bool nationality_of(const std::set<std::string>& work_countries, const PartySpec& party);

/// Per-(discipline, period) aggregate counts: |S_X| per party and
/// |S_X inter S_Y| per unordered party pair.
class WorkCounts {
public:
  WorkCounts() = default;
  WorkCounts(Discipline discipline, YearRange period)
      : discipline_(std::move(discipline)), period_(period) {}

  const Discipline& discipline() const { return discipline_; }
  const YearRange& period() const { return period_; }

  void set_party_count(const std::string& name, std::uint64_t count);
  void set_joint_count(const std::string& a, const std::string& b, std::uint64_t count);

  bool has_party(const std::string& name) const;
  bool has_joint(const std::string& a, const std::string& b) const;

  std::uint64_t party_count(const std::string& name) const;
  std::uint64_t joint_count(const std::string& a, const std::string& b) const;

  const std::map<std::string, std::uint64_t>& party_counts() const { return singles_; }
  const std::map<std::pair<std::string, std::string>, std::uint64_t>& joint_counts() const {
    return joints_;
  }

private:
  Discipline discipline_;
  YearRange period_;
  std::map<std::string, std::uint64_t> singles_;
  // key is the lexicographically sorted name pair
  std::map<std::pair<std::string, std::string>, std::uint64_t> joints_;
};

/// |S_X u S_Y| by inclusion-exclusion. Throws DataIntegrityError if the
/// stored counts violate |S_X inter S_Y| <= min(|S_X|, |S_Y|).
std::uint64_t union_size(const WorkCounts& counts, const std::string& x, const std::string& y);

/// Country-code list of a party joined with '|' in sorted order; the value
/// used in conjunctive country filters.
std::string party_filter_value(const PartySpec& party);

}  // namespace atlas::corpus
