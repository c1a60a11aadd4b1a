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

#include <cmath>

#include "atlas/errors.hpp"
#include "atlas/scenarios.hpp"

using namespace atlas;
using scenarios::ObservedPoint;
using scenarios::Representation;

namespace {

std::vector<ObservedPoint> ramp(int first_year, std::initializer_list<double> values) {
  std::vector<ObservedPoint> out;
  int y = first_year;
  for (double v : values) out.push_back({y++, v});
  return out;
}

}  // namespace

TEST_CASE("scenario A is a time reflection about the final year") {
  const auto observed = ramp(2018, {0.95, 0.92, 0.90, 0.91});
  const auto s = scenarios::project_a(observed, 3, Representation::raw);
  REQUIRE(s.projected.size() == 3);
  CHECK(s.projected[0].year == 2022);
  CHECK(s.projected[0].value == 0.90);  // mirrors 2020
  CHECK(s.projected[1].value == 0.92);  // mirrors 2019
  CHECK(s.projected[2].value == 0.95);  // mirrors 2018
  for (const auto& p : s.projected) CHECK(p.scenario == 'A');
}

TEST_CASE("scenario A on a symmetric V retraces the descent exactly") {
  const auto observed = ramp(2000, {0.9, 0.8, 0.7, 0.8, 0.9});
  const auto s = scenarios::project_a(observed, 4, Representation::raw);
  CHECK(s.projected[0].value == 0.8);
  CHECK(s.projected[1].value == 0.7);
  CHECK(s.projected[2].value == 0.8);
  CHECK(s.projected[3].value == 0.9);
}

TEST_CASE("scenario A holds the first value once the series is exhausted") {
  const auto observed = ramp(2019, {0.5, 0.6});
  const auto s = scenarios::project_a(observed, 4, Representation::raw);
  CHECK(s.projected[0].value == 0.5);
  CHECK(s.projected[1].value == 0.5);
  CHECK(s.projected[3].value == 0.5);
}

TEST_CASE("scenario A of a monotone series is monotone-reversed") {
  const auto observed = ramp(2010, {0.99, 0.97, 0.94, 0.90, 0.85});
  const auto s = scenarios::project_a(observed, 4, Representation::raw);
  for (size_t i = 1; i < s.projected.size(); ++i)
    CHECK(s.projected[i].value >= s.projected[i - 1].value);
}

TEST_CASE("scenario B: geometrically damped continuation of the last increment") {
  const auto observed = ramp(2019, {0.90, 0.90, 0.91});  // last increment 0.01
  const auto s = scenarios::project_b(observed, 3, 0.5, Representation::raw);
  CHECK(s.projected[0].value == doctest::Approx(0.915).epsilon(1e-15));
  CHECK(s.projected[1].value == doctest::Approx(0.9175).epsilon(1e-15));
  CHECK(s.projected[2].value == doctest::Approx(0.91875).epsilon(1e-15));
}

TEST_CASE("scenario B near the damping->1 limit approaches linear continuation") {
  const auto observed = ramp(2019, {0.80, 0.81});
  const auto s = scenarios::project_b(observed, 5, 0.999999, Representation::raw);
  for (int k = 0; k < 5; ++k)
    CHECK(s.projected[k].value == doctest::Approx(0.81 + 0.01 * (k + 1)).epsilon(1e-4));
}

TEST_CASE("scenario B is monotone with decreasing increments on growth") {
  const auto observed = ramp(2015, {0.90, 0.905, 0.912});
  const auto s = scenarios::project_b(observed, 8, 0.8, Representation::raw);
  double last_step = 1e9;
  double last_value = observed.back().value;
  for (const auto& p : s.projected) {
    const double step = p.value - last_value;
    CHECK(step > 0.0);
    CHECK(step < last_step);
    last_step = step;
    last_value = p.value;
  }
}

TEST_CASE("scenario B clamps raw distances at 1") {
  const auto observed = ramp(2019, {0.90, 0.998});  // huge increment
  const auto s = scenarios::project_b(observed, 3, 0.9, Representation::raw);
  for (const auto& p : s.projected) CHECK(p.value <= 1.0);
  CHECK(s.projected.back().value == 1.0);
}

TEST_CASE("scenario C has exactly one local maximum when horizon passes the peak") {
  const auto observed = ramp(2018, {0.96, 0.965, 0.971});
  const auto s =
      scenarios::project_c(observed, 9, 2, 0.004, 0.8, Representation::raw);
  // count strict local maxima over observed tail + projection
  std::vector<double> values = {observed.back().value};
  for (const auto& p : s.projected) values.push_back(p.value);
  int maxima = 0;
  for (size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) ++maxima;
  CHECK(maxima == 1);
}

TEST_CASE("scenario C with a short horizon stays in the growth segment") {
  const auto observed = ramp(2018, {0.96, 0.965, 0.971});
  const auto s = scenarios::project_c(observed, 2, 3, 0.004, 0.8, Representation::raw);
  CHECK(s.projected.size() == 2);
  for (size_t i = 0; i < s.projected.size(); ++i) {
    const double prev = i == 0 ? observed.back().value : s.projected[i - 1].value;
    CHECK(s.projected[i].value > prev);
  }
}

TEST_CASE("scenario C post-peak slope equals the decline rate") {
  const auto observed = ramp(2018, {0.96, 0.965, 0.971});
  const double rate = 0.0035;
  const auto s = scenarios::project_c(observed, 6, 2, rate, 0.8, Representation::raw);
  for (size_t i = 3; i < s.projected.size(); ++i)
    CHECK(s.projected[i - 1].value - s.projected[i].value == doctest::Approx(rate).epsilon(1e-12));
}

TEST_CASE("projections are deterministic") {
  const auto observed = ramp(2010, {0.99, 0.97, 0.96, 0.955, 0.957});
  const auto once = scenarios::project_b(observed, 9, 0.8, Representation::raw);
  const auto twice = scenarios::project_b(observed, 9, 0.8, Representation::raw);
  REQUIRE(once.projected.size() == twice.projected.size());
  for (size_t i = 0; i < once.projected.size(); ++i)
    CHECK(once.projected[i].value == twice.projected[i].value);
}

TEST_CASE("parameter validation") {
  const auto observed = ramp(2019, {0.9, 0.91});
  CHECK_THROWS_AS(scenarios::project_a(observed, 0, Representation::raw), ValidationError);
  CHECK_THROWS_AS(scenarios::project_a({{2019, 0.9}}, 3, Representation::raw), ValidationError);
  CHECK_THROWS_AS(scenarios::project_b(observed, 3, 0.0, Representation::raw), ValidationError);
  CHECK_THROWS_AS(scenarios::project_b(observed, 3, 1.0, Representation::raw), ValidationError);
  CHECK_THROWS_AS(scenarios::project_c(observed, 3, 0, 0.01, 0.8, Representation::raw),
                  ValidationError);
  CHECK_THROWS_AS(scenarios::project_c(observed, 3, 2, -0.1, 0.8, Representation::raw),
                  ValidationError);
  // non-contiguous observed years
  CHECK_THROWS_AS(scenarios::project_a({{2010, 0.9}, {2012, 0.8}}, 2, Representation::raw),
                  ValidationError);
}

TEST_CASE("rescaled representation clamps at zero instead of one") {
  const auto observed = ramp(2019, {0.05, 0.01});  // -ln D style values falling toward 0
  const auto s = scenarios::project_b(observed, 5, 0.9, Representation::rescaled);
  for (const auto& p : s.projected) CHECK(p.value >= 0.0);
  CHECK(s.projected.back().value == 0.0);
}

TEST_CASE("mean decline between anchor years") {
  const auto observed = ramp(2010, {1.0, 0.99, 0.98, 0.97, 0.96, 0.95, 0.94, 0.93, 0.92});
  const auto rate = scenarios::mean_decline(observed, 2010, 2018);
  REQUIRE(rate.has_value());
  CHECK(*rate == doctest::Approx(0.01).epsilon(1e-12));
  CHECK_FALSE(scenarios::mean_decline(observed, 2000, 2018).has_value());
  CHECK_THROWS_AS(scenarios::mean_decline(observed, 2018, 2010), ValidationError);
}
