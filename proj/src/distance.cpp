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

#include "atlas/distance.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "atlas/errors.hpp"
#include "atlas/util.hpp"

namespace atlas::distance {

namespace {

// Exact check of D[i][k] <= D[i][j] + D[j][k] for Jaccard entries stored as
// (inter, union) pairs. With D = (U - I)/U the inequality multiplies out to
// integer products of three counts; 128-bit arithmetic holds them without
// overflow for counts up to ~10^12.
bool triangle_holds_exact(const ExactRatio& ik, const ExactRatio& ij, const ExactRatio& jk) {
  using i128 = __int128;
  const i128 lhs = i128(ik.uni - ik.inter) * i128(ij.uni) * i128(jk.uni);
  const i128 rhs = i128(ij.uni - ij.inter) * i128(ik.uni) * i128(jk.uni) +
                   i128(jk.uni - jk.inter) * i128(ik.uni) * i128(ij.uni);
  return lhs <= rhs;
}

void verify_triangle_exact(const DistanceMatrix& m) {
  const auto& exact = *m.exact();
  const int n = m.size();
  auto ratio = [&](int i, int j) { return exact[static_cast<size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (!triangle_holds_exact(ratio(i, k), ratio(i, j), ratio(j, k))) {
          std::ostringstream msg;
          msg << "triangle inequality violated for (" << m.parties()[i] << ", "
              << m.parties()[j] << ", " << m.parties()[k] << ")";
          throw DataIntegrityError(msg.str());
        }
      }
}

void verify_triangle_fp(const Eigen::MatrixXd& d, const std::vector<std::string>& parties) {
  // Double-precision inputs get a 1-ulp-scale slack; true metrics only miss
  // by representation error.
  constexpr double kSlack = 1e-12;
  const int n = static_cast<int>(d.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (d(i, k) > d(i, j) + d(j, k) + kSlack) {
          std::ostringstream msg;
          msg << "triangle inequality violated for (" << parties[i] << ", " << parties[j]
              << ", " << parties[k] << "): " << d(i, k) << " > " << d(i, j) + d(j, k);
          throw DataIntegrityError(msg.str());
        }
      }
}

}  // namespace

double jaccard_distance(const corpus::WorkCounts& counts, const std::string& x,
                        const std::string& y) {
  const std::uint64_t uni = corpus::union_size(counts, x, y);
  if (uni == 0)
    throw UndefinedDistanceError("distance undefined: empty work union for " + x + "/" + y);
  const std::uint64_t inter = counts.joint_count(x, y);
  // Integer counts all the way down; the single division happens here.
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

DistanceMatrix build_matrix(const corpus::WorkCounts& counts,
                            const std::vector<std::string>& parties) {
  const int n = static_cast<int>(parties.size());
  if (n < 2) throw ValidationError("a distance matrix needs at least two parties");

  DistanceMatrix m;
  m.parties_ = parties;
  m.discipline_ = counts.discipline();
  m.period_ = counts.period();
  m.values_ = Eigen::MatrixXd::Zero(n, n);
  std::vector<ExactRatio> exact(static_cast<size_t>(n) * n);

  for (int i = 0; i < n; ++i) {
    exact[static_cast<size_t>(i) * n + i] = ExactRatio{1, 1};  // D = 0
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t uni = corpus::union_size(counts, parties[i], parties[j]);
      if (uni == 0)
        throw UndefinedDistanceError("distance undefined: empty work union for " + parties[i] +
                                     "/" + parties[j]);
      const std::uint64_t inter = counts.joint_count(parties[i], parties[j]);
      const double d = 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
      m.values_(i, j) = d;
      m.values_(j, i) = d;
      exact[static_cast<size_t>(i) * n + j] = ExactRatio{inter, uni};
      exact[static_cast<size_t>(j) * n + i] = ExactRatio{inter, uni};
    }
  }
  m.exact_ = std::move(exact);
  verify_triangle_exact(m);
  return m;
}

DistanceMatrix matrix_from_values(std::vector<std::string> parties, const Eigen::MatrixXd& values) {
  const int n = static_cast<int>(parties.size());
  if (n < 2) throw ValidationError("a distance matrix needs at least two parties");
  if (values.rows() != n || values.cols() != n)
    throw ValidationError("distance matrix shape does not match the party list");

  for (int i = 0; i < n; ++i) {
    if (values(i, i) != 0.0)
      throw DataIntegrityError("distance matrix diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (values(i, j) != values(j, i))
        throw DataIntegrityError("distance matrix must be symmetric");
      if (values(i, j) < 0.0 || values(i, j) > 1.0)
        throw DataIntegrityError("distance entries must lie in [0,1]");
    }
  }
  verify_triangle_fp(values, parties);

  DistanceMatrix m;
  m.parties_ = std::move(parties);
  m.values_ = values;
  return m;
}

double rescale(double d) {
  if (d <= 0.0)
    throw ValidationError("rescale is undefined for non-positive distances (identical sets)");
  return -std::log(d);
}

RescaledSeries rescale_series(const std::string& pair_label,
                              const std::vector<SeriesPoint>& raw) {
  RescaledSeries out;
  out.pair_label = pair_label;
  out.points.reserve(raw.size());
  for (const auto& p : raw) out.points.push_back({p.year, rescale(p.value)});
  return out;
}

void write_csv(const DistanceMatrix& m, std::ostream& out) {
  out << "party";
  for (const auto& p : m.parties()) out << ',' << p;
  out << '\n';
  for (int i = 0; i < m.size(); ++i) {
    out << m.parties()[i];
    for (int j = 0; j < m.size(); ++j) out << ',' << util::fmt_g(m.at(i, j));
    out << '\n';
  }
}

std::string to_json(const DistanceMatrix& m, const std::string& source_stamp) {
  nlohmann::json j;
  j["parties"] = m.parties();
  j["scope"] = {{"concept_id", m.discipline().concept_id}, {"label", m.discipline().label}};
  j["period"] = {{"first", m.period().first}, {"last", m.period().last}};
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(m.size()) * m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j2 = 0; j2 < m.size(); ++j2) flat.push_back(m.at(i, j2));
  j["values"] = flat;
  if (!source_stamp.empty()) j["source_timestamp"] = source_stamp;
  return j.dump(2);
}

}  // namespace atlas::distance
