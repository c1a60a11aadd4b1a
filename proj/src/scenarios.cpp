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

#include "atlas/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "atlas/errors.hpp"

namespace atlas::scenarios {

namespace {

void check_observed(const std::vector<ObservedPoint>& observed) {
  if (observed.size() < 2)
    throw ValidationError("projections need at least two observed points");
  for (size_t i = 1; i < observed.size(); ++i)
    if (observed[i].year != observed[i - 1].year + 1)
      throw ValidationError("observed series must cover contiguous ascending years");
}

double clamp_value(double v, Representation representation) {
  if (representation == Representation::raw) return std::clamp(v, 0.0, 1.0);
  return std::max(v, 0.0);
}

TrajectorySeries make_series(const std::vector<ObservedPoint>& observed,
                             Representation representation) {
  TrajectorySeries s;
  s.observed = observed;
  s.representation = representation;
  return s;
}

}  // namespace

TrajectorySeries project_a(const std::vector<ObservedPoint>& observed, int horizon,
                           Representation representation) {
  check_observed(observed);
  if (horizon <= 0) throw ValidationError("projection horizon must be positive");

  TrajectorySeries s = make_series(observed, representation);
  const int last = static_cast<int>(observed.size()) - 1;
  const int end_year = observed[last].year;
  for (int k = 1; k <= horizon; ++k) {
    const int mirror = std::max(last - k, 0);
    s.projected.push_back(
        {end_year + k, clamp_value(observed[mirror].value, representation), 'A'});
  }
  return s;
}

TrajectorySeries project_b(const std::vector<ObservedPoint>& observed, int horizon,
                           double damping, Representation representation) {
  check_observed(observed);
  if (horizon <= 0) throw ValidationError("projection horizon must be positive");
  if (!(damping > 0.0) || !(damping < 1.0))
    throw ValidationError("damping factor must lie strictly inside (0,1)");

  TrajectorySeries s = make_series(observed, representation);
  s.params.damping = damping;

  const size_t n = observed.size();
  const double last_increment = observed[n - 1].value - observed[n - 2].value;
  const int end_year = observed[n - 1].year;
  double value = observed[n - 1].value;
  double step = last_increment;
  for (int k = 1; k <= horizon; ++k) {
    step *= damping;  // increment at step k is damping^k * last_increment
    value += step;
    s.projected.push_back({end_year + k, clamp_value(value, representation), 'B'});
  }
  return s;
}

TrajectorySeries project_c(const std::vector<ObservedPoint>& observed, int horizon,
                           int peak_years, double decline_rate, double damping,
                           Representation representation) {
  check_observed(observed);
  if (horizon <= 0) throw ValidationError("projection horizon must be positive");
  if (peak_years < 1) throw ValidationError("peak length must be at least one year");
  if (!(decline_rate > 0.0)) throw ValidationError("decline rate must be positive");
  if (!(damping > 0.0) || !(damping < 1.0))
    throw ValidationError("damping factor must lie strictly inside (0,1)");

  TrajectorySeries s = make_series(observed, representation);
  s.params.damping = damping;
  s.params.peak_years = peak_years;
  s.params.decline_rate = decline_rate;

  const size_t n = observed.size();
  const double last_increment = observed[n - 1].value - observed[n - 2].value;
  const int end_year = observed[n - 1].year;
  double value = observed[n - 1].value;
  double step = last_increment;
  for (int k = 1; k <= horizon; ++k) {
    if (k <= peak_years) {
      step *= damping;
      value += step;
    } else {
      value -= decline_rate;
    }
    s.projected.push_back({end_year + k, clamp_value(value, representation), 'C'});
  }
  return s;
}

std::optional<double> mean_decline(const std::vector<ObservedPoint>& observed, int from_year,
                                   int to_year) {
  if (to_year <= from_year) throw ValidationError("decline window must span at least one year");
  const ObservedPoint* from = nullptr;
  const ObservedPoint* to = nullptr;
  for (const auto& p : observed) {
    if (p.year == from_year) from = &p;
    if (p.year == to_year) to = &p;
  }
  if (from == nullptr || to == nullptr) return std::nullopt;
  return (from->value - to->value) / static_cast<double>(to_year - from_year);
}

}  // namespace atlas::scenarios
