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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "atlas/config.hpp"
#include "atlas/errors.hpp"
#include "atlas/report.hpp"
#include "atlas/store.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitFetch = 3;
constexpr int kExitDataIntegrity = 4;

struct CliFlags {
  std::string config_path;
  std::string snapshot_id;
  std::string out_dir;
  bool offline = false;
  bool rescaled = false;
};

atlas::config::RunConfig resolve_config(const CliFlags& flags) {
  atlas::config::RunConfig cfg = atlas::config::load(flags.config_path);
  if (flags.offline) cfg.offline = true;
  if (flags.rescaled) cfg.representation = atlas::scenarios::Representation::rescaled;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  atlas::config::validate(cfg);
  return cfg;
}

atlas::store::SnapshotData load_snapshot_for(const atlas::config::RunConfig& cfg,
                                             const CliFlags& flags) {
  if (flags.snapshot_id.empty())
    throw atlas::ValidationError("compute commands need --snapshot <id> (run `atlas fetch` first)");
  return atlas::store::load_snapshot(cfg.snapshot_root, flags.snapshot_id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collaboration-distance and knowledge-flow analytics over OpenAlex data"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CliFlags flags;
  app.add_option("--config", flags.config_path, "run config (TOML)")->required();
  app.add_flag("--offline", flags.offline, "force fixture replay; never touch the network");
  app.add_option("--snapshot", flags.snapshot_id, "snapshot id produced by `atlas fetch`");
  app.add_flag("--rescaled", flags.rescaled, "emit -ln D instead of raw distances");
  app.add_option("--out", flags.out_dir, "output directory (overrides config)");

  auto* fetch = app.add_subcommand("fetch", "fetch the configured query grid into a snapshot");
  auto* dist = app.add_subcommand("distance", "emit distance matrices and pairwise series");
  auto* kfr = app.add_subcommand("kfr", "emit knowledge-flow-rate series");
  auto* geom = app.add_subcommand("geometry", "emit simplex geometry (tetrahedron + triangle)");
  auto* sim = app.add_subcommand("simulate", "emit observed + scenario trajectory projections");

  CLI11_PARSE(app, argc, argv);

  try {
    const atlas::config::RunConfig cfg = resolve_config(flags);
    if (fetch->parsed()) {
      std::cout << atlas::report::cmd_fetch(cfg) << "\n";
    } else if (dist->parsed()) {
      atlas::report::cmd_distance(load_snapshot_for(cfg, flags), cfg);
    } else if (kfr->parsed()) {
      atlas::report::cmd_kfr(load_snapshot_for(cfg, flags), cfg);
    } else if (geom->parsed()) {
      atlas::report::cmd_geometry(load_snapshot_for(cfg, flags), cfg);
    } else if (sim->parsed()) {
      atlas::report::cmd_simulate(load_snapshot_for(cfg, flags), cfg);
    }
    return 0;
  } catch (const atlas::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const atlas::FetchError& e) {
    std::cerr << "fetch error: " << e.what() << "\n";
    return kExitFetch;
  } catch (const atlas::DataIntegrityError& e) {
    std::cerr << "data integrity error: " << e.what() << "\n";
    return kExitDataIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
