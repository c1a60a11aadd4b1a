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

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atlas/corpus.hpp"

namespace atlas::distance {

/// Exact integer (intersection, union) pair behind one matrix entry;
/// D = 1 - inter/uni. Kept so the triangle inequality can be verified in
/// integer arithmetic, free of rounding.
struct ExactRatio {
  std::uint64_t inter = 0;
  std::uint64_t uni = 1;
};

/// Symmetric zero-diagonal matrix of pairwise Jaccard distances for one
/// (discipline, period). All entries lie in [0,1] and every triple
/// satisfies the triangle inequality; construction verifies both.
class DistanceMatrix {
public:
  const std::vector<std::string>& parties() const { return parties_; }
  const corpus::Discipline& discipline() const { return discipline_; }
  const corpus::YearRange& period() const { return period_; }
  const Eigen::MatrixXd& values() const { return values_; }
  int size() const { return static_cast<int>(parties_.size()); }
  double at(int i, int j) const { return values_(i, j); }

  /// Exact ratios are present only for matrices built from work counts.
  const std::optional<std::vector<ExactRatio>>& exact() const { return exact_; }

private:
  friend DistanceMatrix build_matrix(const corpus::WorkCounts&, const std::vector<std::string>&);
  friend DistanceMatrix matrix_from_values(std::vector<std::string>, const Eigen::MatrixXd&);

  std::vector<std::string> parties_;
  corpus::Discipline discipline_;
  corpus::YearRange period_{0, 0};
  Eigen::MatrixXd values_;
  std::optional<std::vector<ExactRatio>> exact_;  // row-major n*n when present
};

/// Eq.-style Jaccard distance 1 - |inter|/|union| from aggregate counts.
/// Throws UndefinedDistanceError when the union is empty.
double jaccard_distance(const corpus::WorkCounts& counts, const std::string& x,
                        const std::string& y);

/// Builds the full pairwise matrix for `parties` and verifies the metric
/// invariants. Any undefined pair distance fails the whole matrix rather
/// than silently dropping a party.
DistanceMatrix build_matrix(const corpus::WorkCounts& counts,
                            const std::vector<std::string>& parties);

/// Wraps an already-computed matrix of distances (used for synthetic and
/// test inputs); validates symmetry, zero diagonal, range and the triangle
/// inequality at double precision.
DistanceMatrix matrix_from_values(std::vector<std::string> parties, const Eigen::MatrixXd& values);

/// The reporting transform d -> -ln d. Monotone decreasing; undefined at 0.
double rescale(double d);

struct SeriesPoint {
  int year = 0;
  double value = 0.0;
};

struct RescaledSeries {
  std::string pair_label;
  std::vector<SeriesPoint> points;
};

/// Applies `rescale` pointwise. Throws ValidationError if any input
/// distance is <= 0 (the degenerate identical-sets case).
RescaledSeries rescale_series(const std::string& pair_label,
                              const std::vector<SeriesPoint>& raw);

/// CSV export: header row of party names, then the full square matrix with
/// a leading row-label column.
void write_csv(const DistanceMatrix& m, std::ostream& out);

/// JSON export with parties, row-major values and scope/period metadata.
/// `source_stamp` is the fixture-timestamp annotation carried through from
/// the data snapshot (may be empty).
std::string to_json(const DistanceMatrix& m, const std::string& source_stamp);

}  // namespace atlas::distance
