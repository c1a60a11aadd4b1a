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
#include <string>
#include <utility>
#include <vector>

#include "atlas/distance.hpp"

namespace atlas::geometry {

/// Result of embedding an n-party distance matrix into (n-1)-dimensional
/// Euclidean space via classical scaling. Only the pairwise distances of
/// the coordinates are contract-bearing; the frame is an arbitrary gauge.
struct Embedding {
  std::vector<std::string> parties;
  Eigen::MatrixXd coordinates;  // n x (n-1), one point per row, centered
  double residual = 0.0;        // max |embedded pairwise distance - input D|
  double clamped_mass = 0.0;    // |sum of clamped negative eigenvalues|
  bool realizable = true;       // clamped mass negligible relative to spectrum

  Eigen::MatrixXd pairwise_distances() const;
};

/// Classical (double-centering) scaling: B = -1/2 J D^2 J, eigendecompose,
/// keep the n-1 leading components, clamp negative eigenvalues to zero.
Embedding embed(const distance::DistanceMatrix& matrix);

/// Same scaling applied to an arbitrary symmetric dissimilarity (zero
/// diagonal required, triangle inequality not). Renderers use this to draw
/// figures with -ln D edge lengths, which need not form a metric; all
/// metric quantities stay on raw distances.
Embedding embed_dissimilarity(std::vector<std::string> parties, const Eigen::MatrixXd& values);

struct TriangleStats {
  double base = 0.0;    // US-CN side
  double side_a = 0.0;  // US-RoW
  double side_b = 0.0;  // CN-RoW
  double area = 0.0;
  double height = 0.0;  // 2*area/base
  bool degenerate = false;
  std::string period_label;
};

/// Heron's formula in Kahan's numerically stable ordering. Inputs must be
/// positive; a triangle-inequality failure flags the record degenerate with
/// zero area and height instead of erroring.
TriangleStats triangle_stats(double d_base, double d_side_a, double d_side_b);

struct TetraVolume {
  double volume = 0.0;
  // Set when the Cayley-Menger determinant came out negative (metric not
  // realizable in 3-space) and the clamped-embedding volume was used.
  bool from_embedding = false;
};

/// Simplex volume of a 4-party matrix from pairwise distances alone.
TetraVolume tetra_volume(const distance::DistanceMatrix& matrix);

/// Volume of the tetrahedron spanned by a 4-point embedding (scalar triple
/// product); the cross-check partner of the determinant route.
double embedding_volume(const Embedding& e);

struct SphereScale {
  std::string party;
  std::uint64_t count = 0;
  double radius = 0.0;
};

/// Radii with volume proportional to work count. The reference pair is held
/// fixed across snapshots so sizes stay comparable over time.
std::vector<SphereScale> sphere_radii(
    const std::vector<std::pair<std::string, std::uint64_t>>& counts,
    std::uint64_t reference_count, double reference_radius);

/// Orthogonal Procrustes: rotation/reflection of `target` onto `reference`
/// (both centered, same shape). Rendering-only; distances are unchanged.
Eigen::MatrixXd procrustes_align(const Eigen::MatrixXd& reference, const Eigen::MatrixXd& target);

}  // namespace atlas::geometry
