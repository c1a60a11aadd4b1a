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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "atlas/errors.hpp"
#include "atlas/geometry.hpp"
#include "support.hpp"

using namespace atlas;

TEST_CASE("embed: two points land at +-d/2 in distance terms") {
  Eigen::MatrixXd d(2, 2);
  d << 0.0, 0.6,
       0.6, 0.0;
  const auto e = geometry::embed(distance::matrix_from_values(test::point_names(2), d));
  CHECK(e.coordinates.rows() == 2);
  CHECK(e.coordinates.cols() == 1);
  CHECK(std::abs(e.coordinates(0, 0)) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(e.coordinates(1, 0)) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(e.pairwise_distances()(0, 1) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(e.residual < 1e-12);
  // centered
  CHECK(std::abs(e.coordinates.col(0).mean()) < 1e-12);
}

TEST_CASE("embed: equilateral triple reproduces all pairwise distances") {
  const double side = 0.8;
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(3, 3, side);
  d.diagonal().setZero();
  const auto e = geometry::embed(distance::matrix_from_values(test::point_names(3), d));
  const auto pd = e.pairwise_distances();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(pd(i, j) == doctest::Approx(side).epsilon(1e-12));
  CHECK(e.residual < 1e-12);
  CHECK(e.realizable);
}

TEST_CASE("embed: random realizable metrics come back with tiny residual") {
  std::mt19937 rng(4242);
  for (int round = 0; round < 50; ++round) {
    const auto d = test::random_realizable_metric(rng, 5, 4);
    const auto m = distance::matrix_from_values(test::point_names(5), d);
    const auto e = geometry::embed(m);
    CHECK(e.residual <= 1e-9 * d.maxCoeff());
    const auto pd = e.pairwise_distances();
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(std::abs(pd(i, j) - d(i, j)) <= 1e-9);
    CHECK(e.realizable);
  }
}

TEST_CASE("embed flags non-realizable metrics through clamping") {
  // A metric that satisfies the triangle inequality but is not embeddable
  // in Euclidean space: the four-point "star" with unit legs and long arms.
  Eigen::MatrixXd d(4, 4);
  d << 0.00, 0.99, 0.99, 0.50,
       0.99, 0.00, 0.99, 0.50,
       0.99, 0.99, 0.00, 0.50,
       0.50, 0.50, 0.50, 0.00;
  const auto m = distance::matrix_from_values(test::point_names(4), d);
  const auto e = geometry::embed(m);
  CHECK(e.clamped_mass > 0.0);
  CHECK_FALSE(e.realizable);
  // residual stays bounded by the clamped mass scale
  CHECK(e.residual < 1.0);
}

TEST_CASE("embed_dissimilarity accepts non-metric values, clamps and reports") {
  // -ln D style dissimilarities may violate the triangle inequality
  Eigen::MatrixXd r(3, 3);
  r << 0.0, 0.9, 0.2,
       0.9, 0.0, 0.2,
       0.2, 0.2, 0.0;
  const auto e = geometry::embed_dissimilarity(test::point_names(3), r);
  CHECK(e.coordinates.rows() == 3);
  CHECK(e.clamped_mass > 0.0);
  CHECK(std::isfinite(e.residual));

  Eigen::MatrixXd asym = r;
  asym(0, 1) = 0.8;
  CHECK_THROWS_AS(geometry::embed_dissimilarity(test::point_names(3), asym), ValidationError);
}

TEST_CASE("triangle_stats: right triangle, degenerate, argument errors") {
  const auto right = geometry::triangle_stats(3.0, 4.0, 5.0);
  CHECK(right.area == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(right.height == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_FALSE(right.degenerate);

  const auto flat = geometry::triangle_stats(1.0, 0.5, 0.5);
  CHECK(flat.degenerate);
  CHECK(flat.area == 0.0);
  CHECK(flat.height == 0.0);

  const auto broken = geometry::triangle_stats(1.0, 0.4, 0.5);
  CHECK(broken.degenerate);

  CHECK_THROWS_AS(geometry::triangle_stats(0.0, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(geometry::triangle_stats(1.0, -0.1, 1.0), ValidationError);
}

TEST_CASE("triangle_stats cross-checked against embedding + shoelace") {
  const double a = 0.98, b = 0.95, c = 0.96;  // base, sides
  const auto stats = geometry::triangle_stats(a, b, c);

  Eigen::MatrixXd d(3, 3);
  d << 0.0, a, b,
       a, 0.0, c,
       b, c, 0.0;
  const auto e = geometry::embed(distance::matrix_from_values({"L", "R", "Apex"}, d));
  const auto& p = e.coordinates;
  const double shoelace = 0.5 * std::abs((p(1, 0) - p(0, 0)) * (p(2, 1) - p(0, 1)) -
                                         (p(2, 0) - p(0, 0)) * (p(1, 1) - p(0, 1)));
  CHECK(stats.area == doctest::Approx(shoelace).epsilon(1e-9));
  CHECK(stats.height == doctest::Approx(2.0 * shoelace / a).epsilon(1e-9));
}

TEST_CASE("tetra_volume: regular tetrahedron closed form") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(4, 4, 1.0);
  d.diagonal().setZero();
  const auto v = geometry::tetra_volume(distance::matrix_from_values(test::point_names(4), d));
  // 1/(6 sqrt 2) to 20 digits
  CHECK(v.volume == doctest::Approx(0.11785113019775792073).epsilon(1e-12));
  CHECK_FALSE(v.from_embedding);
}

TEST_CASE("tetra_volume: coplanar points give zero") {
  // 3-4-5 right triangle with the fourth point coincident with the first;
  // all squared distances are small integers.
  Eigen::MatrixXd points(4, 2);
  points << 0, 0,
            3, 0,
            0, 4,
            0, 0;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = (points.row(i) - points.row(j)).norm();
  // scale into [0,1]
  d /= 10.0;
  const auto v = geometry::tetra_volume(distance::matrix_from_values(test::point_names(4), d));
  CHECK(v.volume == doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS_AS(
      geometry::tetra_volume(distance::matrix_from_values(
          test::point_names(3), Eigen::MatrixXd::Zero(3, 3))),
      ValidationError);
}

TEST_CASE("tetra_volume agrees with the embedding route on random tetrahedra") {
  std::mt19937 rng(777);
  int tested = 0;
  while (tested < 40) {
    std::uniform_real_distribution<double> coord(-0.22, 0.22);
    Eigen::MatrixXd points(4, 3);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 3; ++k) points(i, k) = coord(rng);
    const double oracle = test::oracle_tetra_volume_from_points(points);
    if (oracle < 1e-4) continue;  // keep relative comparisons well-posed
    ++tested;

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) d(i, j) = (points.row(i) - points.row(j)).norm();
    const auto m = distance::matrix_from_values(test::point_names(4), d);

    const auto cm = geometry::tetra_volume(m);
    CHECK_FALSE(cm.from_embedding);
    CHECK(cm.volume == doctest::Approx(oracle).epsilon(1e-9));

    const double via_embedding = geometry::embedding_volume(geometry::embed(m));
    CHECK(cm.volume == doctest::Approx(via_embedding).epsilon(1e-9));
  }
}

TEST_CASE("sphere radii follow the cube-root scaling") {
  const auto radii = geometry::sphere_radii({{"A", 8000}, {"B", 1000}, {"C", 0}}, 1000, 2.0);
  CHECK(radii[0].radius == doctest::Approx(4.0).epsilon(1e-12));  // 8x count -> 2x radius
  CHECK(radii[1].radius == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(radii[2].radius == 0.0);

  // radius ratios cubed equal count ratios
  const double ratio = radii[0].radius / radii[1].radius;
  CHECK(ratio * ratio * ratio == doctest::Approx(8.0).epsilon(1e-12));

  // same identity on year-2000 output counts from the recorded corpus
  const std::uint64_t us = 380000, jp = 98000;
  const auto recorded = geometry::sphere_radii({{"US", us}, {"JP", jp}}, us, 1.0);
  const double r = recorded[0].radius / recorded[1].radius;
  CHECK(r * r * r ==
        doctest::Approx(static_cast<double>(us) / static_cast<double>(jp)).epsilon(1e-12));

  CHECK_THROWS_AS(geometry::sphere_radii({{"A", 1}}, 0, 1.0), ValidationError);
}

TEST_CASE("procrustes alignment restores a rotated configuration") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Eigen::MatrixXd reference(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 3; ++k) reference(i, k) = coord(rng);
  reference.rowwise() -= reference.colwise().mean();

  // rotate by a known orthogonal matrix (Householder reflection times swap)
  Eigen::Matrix3d rot;
  rot << 0, -1, 0,
         1,  0, 0,
         0,  0, 1;
  const Eigen::MatrixXd rotated = reference * rot;
  const Eigen::MatrixXd aligned = geometry::procrustes_align(reference, rotated);
  CHECK((aligned - reference).cwiseAbs().maxCoeff() < 1e-10);
}
