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

#include "atlas/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "atlas/errors.hpp"

namespace atlas::geometry {

Eigen::MatrixXd Embedding::pairwise_distances() const {
  const int n = static_cast<int>(coordinates.rows());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d(i, j) = d(j, i) = (coordinates.row(i) - coordinates.row(j)).norm();
  return d;
}

Embedding embed(const distance::DistanceMatrix& matrix) {
  return embed_dissimilarity(matrix.parties(), matrix.values());
}

Embedding embed_dissimilarity(std::vector<std::string> parties, const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(parties.size());
  if (n < 2) throw ValidationError("an embedding needs at least two points");
  if (d.rows() != n || d.cols() != n)
    throw ValidationError("dissimilarity shape does not match the party list");
  for (int i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw ValidationError("dissimilarity diagonal must be zero");
    for (int j = 0; j < n; ++j)
      if (d(i, j) != d(j, i)) throw ValidationError("dissimilarity must be symmetric");
  }

  const Eigen::MatrixXd j_center =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd b = -0.5 * j_center * d.cwiseProduct(d) * j_center;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed on a centered distance matrix");

  // Eigenvalues come back ascending; keep the n-1 leading ones.
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  const Eigen::MatrixXd& eigenvectors = solver.eigenvectors();

  Embedding e;
  e.parties = std::move(parties);
  e.coordinates = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 0; k < n - 1; ++k) {
    const double lambda = eigenvalues(n - 1 - k);
    const double scale = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    e.coordinates.col(k) = scale * eigenvectors.col(n - 1 - k);
  }

  double negative_mass = 0.0;
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    negative_mass += std::max(-eigenvalues(i), 0.0);
    max_abs = std::max(max_abs, std::abs(eigenvalues(i)));
  }
  e.clamped_mass = negative_mass;
  e.realizable = negative_mass <= 1e-9 * std::max(max_abs, 1e-300);

  // B's row sums are zero so the kept eigenvectors are already orthogonal
  // to the ones vector; recenter anyway to pin the mean at the origin.
  e.coordinates.rowwise() -= e.coordinates.colwise().mean();

  const Eigen::MatrixXd embedded = e.pairwise_distances();
  e.residual = (embedded - d).cwiseAbs().maxCoeff();
  return e;
}

TriangleStats triangle_stats(double d_base, double d_side_a, double d_side_b) {
  if (!(d_base > 0.0) || !(d_side_a > 0.0) || !(d_side_b > 0.0))
    throw ValidationError("triangle sides must be positive");

  TriangleStats s;
  s.base = d_base;
  s.side_a = d_side_a;
  s.side_b = d_side_b;

  double a = d_base, b = d_side_a, c = d_side_b;
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  // a >= b >= c. Kahan's ordering keeps every factor non-negative for a
  // genuine triangle and exact for near-degenerate ones.
  const double t = c - (a - b);
  if (t <= 0.0) {
    s.degenerate = true;
    return s;
  }
  s.area = 0.25 * std::sqrt((a + (b + c)) * t * (c + (a - b)) * (a + (b - c)));
  s.height = 2.0 * s.area / d_base;
  return s;
}

namespace {

double cayley_menger_determinant(const Eigen::MatrixXd& d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(5, 5);
  m(0, 0) = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i + 1, j + 1) = d(i, j) * d(i, j);
  return m.determinant();
}

}  // namespace

TetraVolume tetra_volume(const distance::DistanceMatrix& matrix) {
  if (matrix.size() != 4)
    throw ValidationError("tetrahedron volume requires exactly four parties");

  const double det = cayley_menger_determinant(matrix.values());
  const double squared = det / 288.0;

  const double max_edge = matrix.values().maxCoeff();
  const double volume_floor = 1e-10 * max_edge * max_edge * max_edge;

  TetraVolume v;
  if (squared >= -volume_floor * volume_floor) {
    v.volume = std::sqrt(std::max(squared, 0.0));
    return v;
  }
  // Metric not realizable in 3-space: report the volume of the clamped
  // classical-scaling embedding instead.
  v.from_embedding = true;
  v.volume = embedding_volume(embed(matrix));
  return v;
}

double embedding_volume(const Embedding& e) {
  if (e.coordinates.rows() != 4 || e.coordinates.cols() != 3)
    throw ValidationError("embedding volume requires a 4-point, 3-dimensional embedding");
  Eigen::Matrix3d span;
  for (int i = 0; i < 3; ++i)
    span.row(i) = e.coordinates.row(i + 1) - e.coordinates.row(0);
  return std::abs(span.determinant()) / 6.0;
}

std::vector<SphereScale> sphere_radii(
    const std::vector<std::pair<std::string, std::uint64_t>>& counts,
    std::uint64_t reference_count, double reference_radius) {
  if (reference_count == 0) throw ValidationError("sphere reference count must be positive");
  if (!(reference_radius > 0.0)) throw ValidationError("sphere reference radius must be positive");

  std::vector<SphereScale> out;
  out.reserve(counts.size());
  for (const auto& [name, count] : counts) {
    const double ratio = static_cast<double>(count) / static_cast<double>(reference_count);
    out.push_back({name, count, std::cbrt(ratio) * reference_radius});
  }
  return out;
}

Eigen::MatrixXd procrustes_align(const Eigen::MatrixXd& reference, const Eigen::MatrixXd& target) {
  if (reference.rows() != target.rows() || reference.cols() != target.cols())
    throw ValidationError("procrustes alignment needs matching shapes");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(target.transpose() * reference,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd rotation = svd.matrixU() * svd.matrixV().transpose();
  return target * rotation;
}

}  // namespace atlas::geometry
