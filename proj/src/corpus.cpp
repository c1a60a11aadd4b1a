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

#include "atlas/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "atlas/errors.hpp"

namespace atlas::corpus {

std::vector<int> YearRange::years() const {
  std::vector<int> out;
  for (int y = first; y <= last; ++y) out.push_back(y);
  return out;
}

std::string YearRange::label() const {
  if (first == last) return std::to_string(first);
  return std::to_string(first) + "-" + std::to_string(last);
}

namespace {

std::set<std::string> codes(std::initializer_list<const char*> list) {
  std::set<std::string> out;
  for (const char* c : list) out.insert(c);
  return out;
}

std::vector<PartySpec> make_builtin_parties() {
  std::vector<PartySpec> parties;
  parties.push_back({"US", codes({"US"})});
  parties.push_back({"CN", codes({"CN"})});
  // Post-Brexit EU membership.
  std::set<std::string> eu27 = codes({"AT", "BE", "BG", "HR", "CY", "CZ", "DK", "EE", "FI",
                                      "FR", "DE", "GR", "HU", "IE", "IT", "LV", "LT", "LU",
                                      "MT", "NL", "PL", "PT", "RO", "SK", "SI", "ES", "SE"});
  parties.push_back({"EU27", eu27});
  parties.push_back({"GB", codes({"GB"})});
  parties.push_back({"JP", codes({"JP"})});

  std::set<std::string> eu27_uk = eu27;
  eu27_uk.insert("GB");
  parties.push_back({"EU27&UK", eu27_uk});

  // The 50 highest-output countries after the US and China.
  parties.push_back({"RoW", codes({"GB", "JP", "DE", "FR", "CA", "IN", "IT", "AU", "ES", "BR",
                                   "RU", "KR", "NL", "PL", "CH", "ID", "SE", "IR", "TW", "BE",
                                   "TR", "DK", "IL", "MX", "AT", "NO", "FI", "ZA", "CZ", "PT",
                                   "GR", "MY", "SG", "EG", "NZ", "AR", "SA", "UA", "IE", "HU",
                                   "PK", "TH", "CO", "CL", "RO", "NG", "SK", "HR", "RS", "PH"})});
  return parties;
}

std::vector<Discipline> make_builtin_disciplines() {
  using D = DomainClass;
  return {
      {"C33923547", "Mathematics", 0, D::natural_science},
      {"C41008148", "Computer science", 0, D::natural_science},
      {"C205649164", "Geography", 0, D::natural_science},
      {"C86803240", "Biology", 0, D::natural_science},
      {"C121332964", "Physics", 0, D::natural_science},
      {"C185592680", "Chemistry", 0, D::natural_science},
      {"C127413603", "Engineering", 0, D::natural_science},
      {"C192562407", "Materials science", 0, D::natural_science},
      {"C39432304", "Environmental science", 0, D::natural_science},
      {"C71924100", "Medicine", 0, D::natural_science},
      {"C15744967", "Psychology", 0, D::hss},
      {"C144133560", "Business", 0, D::hss},
      {"C162324750", "Economics", 0, D::hss},
      {"C144024400", "Sociology", 0, D::hss},
      {"C17744445", "Political science", 0, D::hss},
      {"C127313418", "Geology", 0, D::hss},
      {"C95457728", "History", 0, D::hss},
      {"C138885662", "Philosophy", 0, D::hss},
      {"C142362112", "Art", 0, D::hss},
  };
}

}  // namespace

const std::vector<PartySpec>& builtin_parties() {
  static const std::vector<PartySpec> parties = make_builtin_parties();
  return parties;
}

const PartySpec& party(std::string_view name, const std::vector<PartySpec>& extra) {
  for (const auto& p : extra)
    if (p.name == name) return p;
  for (const auto& p : builtin_parties())
    if (p.name == name) return p;
  throw ValidationError("unknown party: " + std::string(name));
}

const std::vector<Discipline>& builtin_disciplines() {
  static const std::vector<Discipline> disciplines = make_builtin_disciplines();
  return disciplines;
}

std::vector<Discipline> natural_science_disciplines() {
  std::vector<Discipline> out;
  for (const auto& d : builtin_disciplines())
    if (d.domain_class == DomainClass::natural_science) out.push_back(d);
  return out;
}

const Discipline& discipline(std::string_view concept_id) {
  for (const auto& d : builtin_disciplines())
    if (d.concept_id == concept_id) return d;
  if (concept_id == pooled_natural_sciences().concept_id) return pooled_natural_sciences();
  throw ValidationError("unknown discipline concept id: " + std::string(concept_id));
}

const Discipline& pooled_natural_sciences() {
  static const Discipline pooled = [] {
    std::string ids;
    for (const auto& d : natural_science_disciplines()) {
      if (!ids.empty()) ids += '|';
      ids += d.concept_id;
    }
    return Discipline{ids, "Natural sciences (pooled)", 0, DomainClass::natural_science};
  }();
  return pooled;
}

bool nationality_of(const std::set<std::string>& work_countries, const PartySpec& party) {
  for (const auto& c : work_countries)
    if (party.members.count(c) != 0) return true;
  return false;
}

namespace {

std::pair<std::string, std::string> joint_key(const std::string& a, const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void WorkCounts::set_party_count(const std::string& name, std::uint64_t count) {
  singles_[name] = count;
}

void WorkCounts::set_joint_count(const std::string& a, const std::string& b, std::uint64_t count) {
  if (a == b) throw ValidationError("joint count requires two distinct parties");
  joints_[joint_key(a, b)] = count;
}

bool WorkCounts::has_party(const std::string& name) const { return singles_.count(name) != 0; }

bool WorkCounts::has_joint(const std::string& a, const std::string& b) const {
  return joints_.count(joint_key(a, b)) != 0;
}

std::uint64_t WorkCounts::party_count(const std::string& name) const {
  auto it = singles_.find(name);
  if (it == singles_.end())
    throw ValidationError("no work count recorded for party " + name + " (" +
                          discipline_.label + ", " + period_.label() + ")");
  return it->second;
}

std::uint64_t WorkCounts::joint_count(const std::string& a, const std::string& b) const {
  auto it = joints_.find(joint_key(a, b));
  if (it == joints_.end())
    throw ValidationError("no joint count recorded for pair " + a + "/" + b);
  return it->second;
}

std::uint64_t union_size(const WorkCounts& counts, const std::string& x, const std::string& y) {
  if (x == y) throw ValidationError("union_size requires two distinct parties");
  const std::uint64_t nx = counts.party_count(x);
  const std::uint64_t ny = counts.party_count(y);
  const std::uint64_t nxy = counts.joint_count(x, y);
  if (nxy > std::min(nx, ny)) {
    std::ostringstream msg;
    msg << "joint count exceeds a party count for " << x << "/" << y << ": |inter|=" << nxy
        << ", |" << x << "|=" << nx << ", |" << y << "|=" << ny;
    throw DataIntegrityError(msg.str());
  }
  return nx + ny - nxy;
}

std::string party_filter_value(const PartySpec& party) {
  std::string out;
  for (const auto& c : party.members) {  // std::set iterates sorted
    if (!out.empty()) out += '|';
    out += c;
  }
  return out;
}

}  // namespace atlas::corpus
