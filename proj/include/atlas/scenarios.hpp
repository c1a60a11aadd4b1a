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

#include <optional>
#include <string>
#include <vector>

namespace atlas::scenarios {

/// Which representation the series values live in. Raw distances are
/// clamped to [0,1]; rescaled (-ln D) values are clamped to [0, inf).
enum class Representation { raw, rescaled };

struct ObservedPoint {
  int year = 0;
  double value = 0.0;
};

struct ProjectedPoint {
  int year = 0;
  double value = 0.0;
  char scenario = '?';  // 'A', 'B' or 'C'
};

struct Params {
  double damping = 0.8;       // scenario B/C geometric factor, in (0,1)
  int peak_years = 3;         // scenario C growth phase length
  double decline_rate = 0.0;  // scenario C post-peak slope; <= 0 means derive
};

/// Observed values plus one scenario's projection. Projections are pure
/// functions of (observed, params): model output, not data.
struct TrajectorySeries {
  std::string pair_label;
  std::vector<ObservedPoint> observed;
  std::vector<ProjectedPoint> projected;
  Representation representation = Representation::raw;
  Params params;
};

/// Scenario A: time reflection about the last observed year; the series
/// retraces itself. Projections past the series start hold the first value.
TrajectorySeries project_a(const std::vector<ObservedPoint>& observed, int horizon,
                           Representation representation);

/// Scenario B: the last observed increment continues, geometrically damped
/// by `damping` each year.
TrajectorySeries project_b(const std::vector<ObservedPoint>& observed, int horizon,
                           double damping, Representation representation);

/// Scenario C: scenario-B growth for `peak_years` years, then a linear
/// decline of `decline_rate` per year.
TrajectorySeries project_c(const std::vector<ObservedPoint>& observed, int horizon,
                           int peak_years, double decline_rate, double damping,
                           Representation representation);

/// Mean annual decline of the observed series between two anchor years
/// (positive when the series decreases). nullopt when either anchor is
/// missing from the series.
std::optional<double> mean_decline(const std::vector<ObservedPoint>& observed, int from_year,
                                   int to_year);

}  // namespace atlas::scenarios
