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

#include "atlas/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "atlas/errors.hpp"
#include "atlas/geometry.hpp"
#include "atlas/scenarios.hpp"
#include "atlas/svg.hpp"
#include "atlas/util.hpp"

namespace atlas::report {

namespace {

using config::RunConfig;
using corpus::Discipline;
using corpus::YearRange;

std::string year_filter_value(const YearRange& period) {
  std::string out;
  for (int y = period.first; y <= period.last; ++y) {
    if (!out.empty()) out += '|';
    out += std::to_string(y);
  }
  return out;
}

openalex::ApiQuery count_query(const RunConfig& cfg, const Discipline& scope,
                               const YearRange& period,
                               const std::vector<const corpus::PartySpec*>& parties) {
  openalex::ApiQuery q;
  q.endpoint = openalex::Endpoint::works;
  q.filter("concepts.id", scope.concept_id);
  if (cfg.year_filter_field == "publication_year") {
    q.filter("publication_year", year_filter_value(period));
  } else {
    q.filter("from_publication_date", std::to_string(period.first) + "-01-01");
    q.filter("to_publication_date", std::to_string(period.last) + "-12-31");
  }
  for (const auto* p : parties)
    q.filter("institutions.country_code", corpus::party_filter_value(*p));
  return q;
}

openalex::ApiQuery cohort_query(const RunConfig& cfg, const Discipline& discipline, int year) {
  openalex::ApiQuery q;
  q.endpoint = openalex::Endpoint::works;
  q.filter("concepts.id", discipline.concept_id);
  if (cfg.year_filter_field == "publication_year") {
    q.filter("publication_year", std::to_string(year));
  } else {
    q.filter("from_publication_date", std::to_string(year) + "-01-01");
    q.filter("to_publication_date", std::to_string(year) + "-12-31");
  }
  q.group_by = "authorships.author.id";
  return q;
}

void fill_counts(const RunConfig& cfg, openalex::Client& client, corpus::WorkCounts& wc,
                 const Discipline& scope, const YearRange& period,
                 const std::vector<std::string>& party_names) {
  std::vector<const corpus::PartySpec*> specs;
  specs.reserve(party_names.size());
  for (const auto& name : party_names) specs.push_back(&cfg.party(name));

  for (size_t i = 0; i < specs.size(); ++i) {
    if (!wc.has_party(party_names[i]))
      wc.set_party_count(party_names[i],
                         client.fetch_work_count(count_query(cfg, scope, period, {specs[i]})));
    for (size_t j = i + 1; j < specs.size(); ++j) {
      if (wc.has_joint(party_names[i], party_names[j])) continue;
      wc.set_joint_count(
          party_names[i], party_names[j],
          client.fetch_work_count(count_query(cfg, scope, period, {specs[i], specs[j]})));
    }
  }
}

std::string pair_label(const std::string& a, const std::string& b, const char* sep) {
  return a + sep + b;
}

std::string scope_slug(const Discipline& scope) {
  if (scope.concept_id == corpus::pooled_natural_sciences().concept_id)
    return "natural-sciences-pooled";
  return util::slugify(scope.label);
}

std::string representation_name(scenarios::Representation r) {
  return r == scenarios::Representation::raw ? "raw" : "rescaled";
}

double represent(double raw_value, scenarios::Representation r) {
  return r == scenarios::Representation::raw ? raw_value : distance::rescale(raw_value);
}

void write_meta_sidecar(const RunConfig& cfg, const store::SnapshotData& snapshot,
                        const std::string& command) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["created_at"] = util::iso8601_utc_now();
  meta["snapshot_id"] = store::snapshot_id(snapshot);
  meta["config_hash"] = config::config_hash(cfg);
  meta["source_earliest"] = snapshot.source_earliest;
  meta["source_latest"] = snapshot.source_latest;
  util::write_file_atomic(cfg.out_dir / (command + ".meta.json"), meta.dump(2) + "\n");
}

const corpus::WorkCounts& counts_or_fail(const store::SnapshotData& snapshot,
                                         const Discipline& scope, const YearRange& period) {
  const corpus::WorkCounts* wc = snapshot.find_counts(scope.concept_id, period);
  if (wc == nullptr)
    throw ValidationError("snapshot has no counts for " + scope.label + " " + period.label());
  return *wc;
}

}  // namespace

std::vector<Discipline> distance_scopes(const RunConfig& config) {
  std::vector<Discipline> scopes;
  scopes.push_back(corpus::pooled_natural_sciences());
  for (const auto& id : config.disciplines) scopes.push_back(corpus::discipline(id));
  return scopes;
}

std::vector<YearRange> five_year_periods(const YearRange& years) {
  std::vector<YearRange> periods;
  for (int start = years.first; start <= years.last; start += 5)
    periods.push_back({start, std::min(start + 4, years.last)});
  return periods;
}

openalex::Client make_client(const RunConfig& config,
                             std::unique_ptr<openalex::HttpTransport> transport) {
  openalex::FixtureStore store(config.fixtures_dir, config.offline
                                                        ? openalex::FetchMode::replay
                                                        : openalex::FetchMode::record);
  openalex::ClientOptions options;
  options.requests_per_second = config.rate_limit_rps;
  options.mailto = config.mailto;
  return openalex::Client(std::move(store), std::move(transport), options);
}

store::SnapshotData run_fetch(const RunConfig& config, openalex::Client& client) {
  store::SnapshotData snapshot;
  const auto scopes = distance_scopes(config);

  // Annual grid for the pairwise time series and annual matrices.
  for (const auto& scope : scopes)
    for (int y = config.years.first; y <= config.years.last; ++y) {
      const YearRange period{y, y};
      fill_counts(config, client, snapshot.counts_for(scope, period), scope, period,
                  config.parties);
    }

  // Five-year aggregates when matrices are emitted at that cadence.
  if (config.granularity == config::PeriodGranularity::five_year)
    for (const auto& scope : scopes)
      for (const auto& period : five_year_periods(config.years))
        fill_counts(config, client, snapshot.counts_for(scope, period), scope, period,
                    config.parties);

  // Geometry always runs on pooled natural sciences at five-year cadence.
  const Discipline& pooled = corpus::pooled_natural_sciences();
  for (const auto& period : five_year_periods(config.years)) {
    auto& wc = snapshot.counts_for(pooled, period);
    fill_counts(config, client, wc, pooled, period, config.tetra_parties);
    fill_counts(config, client, wc, pooled, period, config.triangle_parties);
  }

  // Author cohorts and their year-by-year country sets.
  for (const auto& id : config.disciplines) {
    const Discipline& d = corpus::discipline(id);
    for (int tau = config.kfr_years.first; tau < config.kfr_years.last; ++tau) {
      auto authors = client.fetch_top_authors(cohort_query(config, d, tau));
      for (const auto& author : authors)
        for (int year : {tau, tau + 1}) {
          const auto key = std::make_pair(author.key, year);
          if (snapshot.author_countries.count(key) == 0)
            snapshot.author_countries[key] = client.fetch_author_country_set(author.key, year);
        }
      snapshot.cohorts[{d.concept_id, tau}] = std::move(authors);
    }
  }

  snapshot.queries = client.issued_queries();
  for (const auto& q : snapshot.queries)
    if (auto stamp = client.store().retrieved_at(q)) {
      if (snapshot.source_earliest.empty() || *stamp < snapshot.source_earliest)
        snapshot.source_earliest = *stamp;
      if (snapshot.source_latest.empty() || *stamp > snapshot.source_latest)
        snapshot.source_latest = *stamp;
    }
  return snapshot;
}

std::string cmd_fetch(const RunConfig& config) {
  std::unique_ptr<openalex::HttpTransport> transport;
  if (!config.offline) transport = openalex::make_https_transport("api.openalex.org");
  openalex::Client client = make_client(config, std::move(transport));
  const store::SnapshotData snapshot = run_fetch(config, client);
  return store::save_snapshot(snapshot, config.snapshot_root);
}

std::vector<openalex::GroupedCount> SnapshotAuthorSource::top_authors(
    const Discipline& discipline, int year) {
  auto it = snapshot_.cohorts.find({discipline.concept_id, year});
  if (it == snapshot_.cohorts.end())
    throw ValidationError("snapshot has no author cohort for " + discipline.label + " " +
                          std::to_string(year));
  return it->second;
}

std::set<std::string> SnapshotAuthorSource::country_set(const std::string& author_id, int year) {
  auto it = snapshot_.author_countries.find({author_id, year});
  if (it == snapshot_.author_countries.end()) return {};
  return it->second;
}

std::vector<distance::SeriesPoint> pair_series(const store::SnapshotData& snapshot,
                                               const Discipline& scope, const std::string& a,
                                               const std::string& b, const YearRange& years) {
  std::vector<distance::SeriesPoint> out;
  for (int y = years.first; y <= years.last; ++y) {
    const auto& wc = counts_or_fail(snapshot, scope, {y, y});
    out.push_back({y, distance::jaccard_distance(wc, a, b)});
  }
  return out;
}

std::map<int, std::optional<kflow::RateMatrix>> kfr_series(const store::SnapshotData& snapshot,
                                                           const RunConfig& config,
                                                           const Discipline& discipline) {
  SnapshotAuthorSource source(snapshot);
  std::vector<corpus::PartySpec> parties;
  for (const auto& name : config.parties) parties.push_back(config.party(name));

  std::map<int, std::optional<kflow::RateMatrix>> out;
  for (auto& matrix : kflow::cohort_series(discipline, config.kfr_years, parties, source))
    out[matrix.year_from()] = kflow::kfr(matrix);
  return out;
}

std::map<int, std::optional<kflow::RateMatrix>> ns_average_kfr(const store::SnapshotData& snapshot,
                                                               const RunConfig& config) {
  const auto ns = corpus::natural_science_disciplines();
  for (const auto& d : ns)
    if (std::find(config.disciplines.begin(), config.disciplines.end(), d.concept_id) ==
        config.disciplines.end())
      throw ValidationError(
          "the natural-science aggregate needs all ten natural-science disciplines in the run; "
          "missing " +
          d.label);

  std::vector<corpus::PartySpec> parties;
  for (const auto& name : config.parties) parties.push_back(config.party(name));
  const int n = static_cast<int>(config.parties.size());

  std::map<int, std::optional<kflow::RateMatrix>> out;

  if (config.kfr_aggregate == config::KfrAggregate::pooled_cohort) {
    // Sum the K matrices across disciplines, then normalize once.
    SnapshotAuthorSource source(snapshot);
    std::map<int, kflow::FlowMatrix> pooled;
    for (const auto& d : ns)
      for (auto& matrix : kflow::cohort_series(d, config.kfr_years, parties, source)) {
        auto it = pooled.find(matrix.year_from());
        if (it == pooled.end()) {
          pooled.emplace(matrix.year_from(), std::move(matrix));
        } else {
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              if (matrix.at(i, j) > 0)
                it->second.add(config.parties[i], config.parties[j], matrix.at(i, j));
        }
      }
    for (const auto& [tau, matrix] : pooled) out[tau] = kflow::kfr(matrix);
    return out;
  }

  // Unweighted mean of the per-discipline rate series; a year is excluded
  // only when every discipline excluded it.
  std::vector<std::map<int, std::optional<kflow::RateMatrix>>> series;
  series.reserve(ns.size());
  for (const auto& d : ns) series.push_back(kfr_series(snapshot, config, d));

  for (int tau = config.kfr_years.first; tau < config.kfr_years.last; ++tau) {
    std::vector<const kflow::RateMatrix*> included;
    for (const auto& s : series) {
      auto it = s.find(tau);
      if (it != s.end() && it->second.has_value()) included.push_back(&*it->second);
    }
    if (included.empty()) {
      out[tau] = std::nullopt;
      continue;
    }
    kflow::RateMatrix mean;
    mean.parties = config.parties;
    mean.year_from = tau;
    mean.rates.assign(static_cast<size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double sum = 0.0;
        for (const auto* r : included) sum += r->at(i, j);
        mean.rates[static_cast<size_t>(i) * n + j] = sum / static_cast<double>(included.size());
      }
    out[tau] = std::move(mean);
  }
  return out;
}

// --- emitters ---------------------------------------------------------------

namespace {

void emit_matrix_files(const store::SnapshotData& snapshot, const RunConfig& cfg,
                       const Discipline& scope, const YearRange& period) {
  const auto& wc = counts_or_fail(snapshot, scope, period);
  const distance::DistanceMatrix m = distance::build_matrix(wc, cfg.parties);
  const auto dir = cfg.out_dir / "distance" / scope_slug(scope);

  std::ostringstream csv;
  distance::write_csv(m, csv);
  util::write_file_atomic(dir / ("matrix_" + period.label() + ".csv"), csv.str());
  util::write_file_atomic(dir / ("matrix_" + period.label() + ".json"),
                          distance::to_json(m, snapshot.source_latest) + "\n");
}

void emit_series_files(const store::SnapshotData& snapshot, const RunConfig& cfg,
                       const Discipline& scope) {
  const auto dir = cfg.out_dir / "distance" / scope_slug(scope);

  std::vector<std::pair<std::string, std::vector<distance::SeriesPoint>>> columns;
  for (size_t i = 0; i < cfg.parties.size(); ++i)
    for (size_t j = i + 1; j < cfg.parties.size(); ++j) {
      auto series = pair_series(snapshot, scope, cfg.parties[i], cfg.parties[j], cfg.years);
      columns.emplace_back(pair_label(cfg.parties[i], cfg.parties[j], "-"), std::move(series));
    }

  std::ostringstream csv;
  csv << "# scope: " << scope.label << "\n";
  csv << "# representation: " << representation_name(cfg.representation) << "\n";
  csv << "year";
  for (const auto& [label, series] : columns) csv << ',' << label;
  csv << '\n';
  for (int y = cfg.years.first; y <= cfg.years.last; ++y) {
    csv << y;
    for (const auto& [label, series] : columns) {
      const auto& point = series[static_cast<size_t>(y - cfg.years.first)];
      csv << ',' << util::fmt_g(represent(point.value, cfg.representation));
    }
    csv << '\n';
  }
  util::write_file_atomic(dir / "series.csv", csv.str());

  svg::LineChart chart;
  chart.title = scope.label + ": pairwise collaboration distance";
  chart.x_label = "year";
  chart.y_label = cfg.representation == scenarios::Representation::raw ? "distance D"
                                                                       : "-ln D";
  for (const auto& [label, series] : columns) {
    svg::Series s;
    s.label = label;
    for (const auto& point : series)
      s.points.emplace_back(point.year, represent(point.value, cfg.representation));
    chart.series.push_back(std::move(s));
  }
  util::write_file_atomic(dir / "series.svg", svg::render_line_chart(chart));
}

std::string rate_cell(const std::optional<kflow::RateMatrix>& rates, int i, int j) {
  if (!rates.has_value()) return "excluded";
  return util::fmt_g(rates->at(i, j) * 100.0);
}

void emit_kfr_series(const RunConfig& cfg,
                     const std::map<int, std::optional<kflow::RateMatrix>>& series,
                     const std::string& label, const std::filesystem::path& csv_path) {
  const int n = static_cast<int>(cfg.parties.size());
  std::ostringstream csv;
  csv << "# scope: " << label << "\n";
  csv << "year,pair,rate_percent\n";
  for (const auto& [tau, rates] : series)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        csv << tau << ',' << pair_label(cfg.parties[i], cfg.parties[j], "->") << ','
            << rate_cell(rates, i, j) << '\n';
      }
  util::write_file_atomic(csv_path, csv.str());
}

void emit_kfr_chart(const RunConfig& cfg,
                    const std::map<int, std::optional<kflow::RateMatrix>>& series,
                    const std::string& title, const std::filesystem::path& svg_path,
                    const std::vector<std::pair<int, int>>& pairs) {
  svg::LineChart chart;
  chart.title = title;
  chart.x_label = "year";
  chart.y_label = "knowledge flow rate (%)";
  for (const auto& [i, j] : pairs) {
    svg::Series s;
    s.label = pair_label(cfg.parties[i], cfg.parties[j], "->");
    for (const auto& [tau, rates] : series)
      if (rates.has_value()) s.points.emplace_back(tau, rates->at(i, j) * 100.0);
    chart.series.push_back(std::move(s));
  }
  util::write_file_atomic(svg_path, svg::render_line_chart(chart));
}

}  // namespace

void cmd_distance(const store::SnapshotData& snapshot, const RunConfig& config) {
  std::vector<YearRange> periods;
  if (config.granularity == config::PeriodGranularity::annual) {
    for (int y = config.years.first; y <= config.years.last; ++y) periods.push_back({y, y});
  } else {
    periods = five_year_periods(config.years);
  }

  for (const auto& scope : distance_scopes(config)) {
    for (const auto& period : periods) emit_matrix_files(snapshot, config, scope, period);
    emit_series_files(snapshot, config, scope);
  }
  write_meta_sidecar(config, snapshot, "distance");
}

void cmd_kfr(const store::SnapshotData& snapshot, const RunConfig& config) {
  const auto dir = config.out_dir / "kfr";
  const int n = static_cast<int>(config.parties.size());

  std::vector<std::pair<int, int>> all_pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) all_pairs.emplace_back(i, j);

  for (const auto& id : config.disciplines) {
    const Discipline& d = corpus::discipline(id);
    const auto series = kfr_series(snapshot, config, d);
    emit_kfr_series(config, series, d.label, dir / (scope_slug(d) + ".csv"));
    emit_kfr_chart(config, series, d.label + ": knowledge flow rate",
                   dir / (scope_slug(d) + ".svg"), all_pairs);
  }

  // Natural-science aggregate, when the run covers all ten disciplines.
  const auto ns = corpus::natural_science_disciplines();
  const bool complete = std::all_of(ns.begin(), ns.end(), [&](const Discipline& d) {
    return std::find(config.disciplines.begin(), config.disciplines.end(), d.concept_id) !=
           config.disciplines.end();
  });
  if (complete) {
    const auto average = ns_average_kfr(snapshot, config);
    const char* mode =
        config.kfr_aggregate == config::KfrAggregate::mean ? "mean" : "pooled-cohort";
    emit_kfr_series(config, average, std::string("Natural sciences (") + mode + ")",
                    dir / "natural-sciences-average.csv");

    std::vector<std::pair<int, int>> headline, others;
    for (const auto& [i, j] : all_pairs)
      if ((i == 0 && j == 1) || (i == 1 && j == 0))
        headline.emplace_back(i, j);
      else
        others.emplace_back(i, j);
    emit_kfr_chart(config, average, "Natural sciences: knowledge flow rate (average)",
                   dir / "natural-sciences-average.svg", headline);
    emit_kfr_chart(config, average, "Natural sciences: remaining pairs (average)",
                   dir / "natural-sciences-average-others.svg", others);
  }
  write_meta_sidecar(config, snapshot, "kfr");
}

void cmd_geometry(const store::SnapshotData& snapshot, const RunConfig& config) {
  const auto dir = config.out_dir / "geometry";
  const Discipline& pooled = corpus::pooled_natural_sciences();
  const auto periods = five_year_periods(config.years);

  // Volumes, heights and areas always come from raw distances (a metric);
  // the flag only switches the *rendered* edge lengths to -ln D.
  const bool rescaled_render = config.representation == scenarios::Representation::rescaled;
  auto render_length = [&](double d) { return std::max(distance::rescale(d), 1e-9); };

  // --- tetrahedron series ---
  std::uint64_t reference_count = 0;
  for (const auto& period : periods) {
    const auto& wc = counts_or_fail(snapshot, pooled, period);
    for (const auto& name : config.tetra_parties)
      reference_count = std::max(reference_count, wc.party_count(name));
  }
  if (reference_count == 0) reference_count = 1;

  std::ostringstream tetra_csv;
  tetra_csv << "period,volume,from_embedding,residual,clamped_mass";
  for (size_t i = 0; i < config.tetra_parties.size(); ++i)
    for (size_t j = i + 1; j < config.tetra_parties.size(); ++j)
      tetra_csv << ",d_" << pair_label(config.tetra_parties[i], config.tetra_parties[j], "-");
  tetra_csv << '\n';

  std::vector<svg::TetraPanel> tetra_panels;
  Eigen::MatrixXd previous_coordinates;
  Eigen::MatrixXd previous_render_coordinates;
  for (const auto& period : periods) {
    const auto& wc = counts_or_fail(snapshot, pooled, period);
    const auto matrix = distance::build_matrix(wc, config.tetra_parties);
    geometry::Embedding embedding = geometry::embed(matrix);
    const geometry::TetraVolume volume = geometry::tetra_volume(matrix);

    // Align to the previous snapshot so the rendered sequence does not spin.
    if (previous_coordinates.size() != 0)
      embedding.coordinates = geometry::procrustes_align(previous_coordinates,
                                                         embedding.coordinates);
    previous_coordinates = embedding.coordinates;

    Eigen::MatrixXd render_coordinates = embedding.coordinates;
    if (rescaled_render) {
      Eigen::MatrixXd rescaled = Eigen::MatrixXd::Zero(matrix.size(), matrix.size());
      for (int i = 0; i < matrix.size(); ++i)
        for (int j = 0; j < matrix.size(); ++j)
          if (i != j) rescaled(i, j) = render_length(matrix.at(i, j));
      render_coordinates =
          geometry::embed_dissimilarity(config.tetra_parties, rescaled).coordinates;
      if (previous_render_coordinates.size() != 0)
        render_coordinates =
            geometry::procrustes_align(previous_render_coordinates, render_coordinates);
      previous_render_coordinates = render_coordinates;
    }

    std::vector<std::pair<std::string, std::uint64_t>> counts;
    for (const auto& name : config.tetra_parties) counts.emplace_back(name, wc.party_count(name));
    const auto radii = geometry::sphere_radii(counts, reference_count, 1.0);

    tetra_csv << period.label() << ',' << util::fmt_g(volume.volume) << ','
              << (volume.from_embedding ? 1 : 0) << ',' << util::fmt_g(embedding.residual) << ','
              << util::fmt_g(embedding.clamped_mass);
    for (int i = 0; i < matrix.size(); ++i)
      for (int j = i + 1; j < matrix.size(); ++j) tetra_csv << ',' << util::fmt_g(matrix.at(i, j));
    tetra_csv << '\n';

    nlohmann::json j;
    j["parties"] = config.tetra_parties;
    j["period"] = period.label();
    std::vector<std::vector<double>> coords;
    for (int r = 0; r < 4; ++r)
      coords.push_back({embedding.coordinates(r, 0), embedding.coordinates(r, 1),
                        embedding.coordinates(r, 2)});
    j["coordinates"] = coords;
    j["volume"] = volume.volume;
    j["volume_from_embedding"] = volume.from_embedding;
    j["residual"] = embedding.residual;
    j["clamped_mass"] = embedding.clamped_mass;
    nlohmann::json radii_json = nlohmann::json::object();
    for (const auto& r : radii) radii_json[r.party] = r.radius;
    j["sphere_radii"] = radii_json;
    if (!snapshot.source_latest.empty()) j["source_timestamp"] = snapshot.source_latest;
    util::write_file_atomic(dir / ("tetra_" + period.label() + ".json"), j.dump(2) + "\n");

    tetra_panels.push_back({period.label(), render_coordinates, radii});
  }
  util::write_file_atomic(dir / "tetra_series.csv", tetra_csv.str());
  util::write_file_atomic(dir / "tetra.svg",
                          svg::render_tetra_series(tetra_panels, config.tetra_parties));

  // --- triangle series ---
  const auto& left = config.triangle_parties[0];
  const auto& right = config.triangle_parties[1];
  const auto& apex = config.triangle_parties[2];

  std::ostringstream tri_csv;
  tri_csv << "period,base_" << pair_label(left, right, "-") << ",side_"
          << pair_label(left, apex, "-") << ",side_" << pair_label(right, apex, "-")
          << ",height,area,degenerate\n";
  std::vector<svg::TrianglePanel> tri_panels;
  for (const auto& period : periods) {
    const auto& wc = counts_or_fail(snapshot, pooled, period);
    const double base = distance::jaccard_distance(wc, left, right);
    const double side_a = distance::jaccard_distance(wc, left, apex);
    const double side_b = distance::jaccard_distance(wc, right, apex);
    const auto stats = geometry::triangle_stats(base, side_a, side_b);
    tri_csv << period.label() << ',' << util::fmt_g(stats.base) << ',' << util::fmt_g(stats.side_a)
            << ',' << util::fmt_g(stats.side_b) << ',' << util::fmt_g(stats.height) << ','
            << util::fmt_g(stats.area) << ',' << (stats.degenerate ? 1 : 0) << '\n';

    auto render_stats = stats;
    if (rescaled_render)
      render_stats = geometry::triangle_stats(render_length(base), render_length(side_a),
                                              render_length(side_b));
    tri_panels.push_back({period.label(), render_stats});
  }
  util::write_file_atomic(dir / "triangle_series.csv", tri_csv.str());
  util::write_file_atomic(dir / "triangle.svg",
                          svg::render_triangle_series(tri_panels, left, right, apex));

  write_meta_sidecar(config, snapshot, "geometry");
}

void cmd_simulate(const store::SnapshotData& snapshot, const RunConfig& config) {
  const auto dir = config.out_dir / "simulate";
  const Discipline& pooled = corpus::pooled_natural_sciences();
  const std::string& a = config.parties[0];
  const std::string& b = config.parties[1];

  std::vector<scenarios::ObservedPoint> observed;
  for (const auto& point : pair_series(snapshot, pooled, a, b, config.years))
    observed.push_back({point.year, represent(point.value, config.representation)});

  const int horizon = config.horizon_year - config.years.last;

  double decline_rate = config.scenario.decline_rate;
  if (!(decline_rate > 0.0)) {
    const auto derived = scenarios::mean_decline(observed, 2010, 2018);
    if (!derived.has_value() || !(*derived > 0.0))
      throw ValidationError(
          "cannot derive a positive decline rate from the observed series; set "
          "scenarios.decline_rate");
    decline_rate = *derived;
  }

  const auto series_a = scenarios::project_a(observed, horizon, config.representation);
  const auto series_b =
      scenarios::project_b(observed, horizon, config.scenario.damping, config.representation);
  const auto series_c =
      scenarios::project_c(observed, horizon, config.scenario.peak_years, decline_rate,
                           config.scenario.damping, config.representation);

  const std::string pair = pair_label(a, b, "-");
  std::ostringstream csv;
  csv << "# pair: " << pair << "\n";
  csv << "# representation: " << representation_name(config.representation) << "\n";
  csv << "# scenario_b_damping: " << util::fmt_g(config.scenario.damping) << "\n";
  csv << "# scenario_c_peak_years: " << config.scenario.peak_years << "\n";
  csv << "# scenario_c_decline_rate: " << util::fmt_g(decline_rate) << "\n";
  csv << "# note: projected rows are model output, not observations\n";
  csv << "year,series,value\n";
  for (const auto& point : observed)
    csv << point.year << ",observed," << util::fmt_g(point.value) << '\n';
  for (const auto* s : {&series_a, &series_b, &series_c})
    for (const auto& point : s->projected)
      csv << point.year << ',' << point.scenario << ',' << util::fmt_g(point.value) << '\n';
  util::write_file_atomic(dir / (util::slugify(pair) + ".csv"), csv.str());

  nlohmann::json j;
  j["pair"] = pair;
  j["representation"] = representation_name(config.representation);
  j["params"] = {{"damping", config.scenario.damping},
                 {"peak_years", config.scenario.peak_years},
                 {"decline_rate", decline_rate},
                 {"horizon_year", config.horizon_year}};
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& point : observed) obs.push_back({point.year, point.value});
  j["observed"] = obs;
  for (const auto* s : {&series_a, &series_b, &series_c}) {
    nlohmann::json proj = nlohmann::json::array();
    for (const auto& point : s->projected) proj.push_back({point.year, point.value});
    j["projected"][std::string(1, s->projected.front().scenario)] = proj;
  }
  util::write_file_atomic(dir / (util::slugify(pair) + ".json"), j.dump(2) + "\n");

  svg::LineChart chart;
  chart.title = pair + " distance: observed and scenario projections";
  chart.footnote = "projected curves are model output, not observed data";
  chart.x_label = "year";
  chart.y_label = config.representation == scenarios::Representation::raw ? "distance D"
                                                                          : "-ln D";
  svg::Series obs_series;
  obs_series.label = "observed";
  for (const auto& point : observed) obs_series.points.emplace_back(point.year, point.value);
  chart.series.push_back(std::move(obs_series));
  for (const auto* s : {&series_a, &series_b, &series_c}) {
    svg::Series proj;
    proj.label = std::string("scenario ") + s->projected.front().scenario + " (model)";
    proj.dashed = true;
    proj.points.emplace_back(observed.back().year, observed.back().value);
    for (const auto& point : s->projected) proj.points.emplace_back(point.year, point.value);
    chart.series.push_back(std::move(proj));
  }
  util::write_file_atomic(dir / (util::slugify(pair) + ".svg"), svg::render_line_chart(chart));

  write_meta_sidecar(config, snapshot, "simulate");
}

}  // namespace atlas::report
