// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ks/assembly.hpp"
#include "ks/config.hpp"
#include "ks/diagnostics.hpp"
#include "ks/mesh.hpp"
#include "ks/model.hpp"
#include "ks/sim.hpp"
#include "ks/stepper.hpp"

namespace {

void run_one(const ks::SimConfig& cfg) {
  const ks::RunResult result = ks::run(cfg);
  const ks::EnergyRecord& first = result.records.front();
  const ks::EnergyRecord& last = result.records.back();
  const double mass_drift =
      std::abs(last.mass_u - first.mass_u) / std::max(std::abs(first.mass_u), 1e-300);
  std::printf("steps            %zu\n", result.records.size() - 1);
  std::printf("final time       %.6g\n", last.t);
  std::printf("energy           %.6g -> %.6g\n", first.E, last.E);
  std::printf("mass drift       %.3e (relative)\n", mass_drift);
  std::printf("u range          [%.6g, %.6g]\n", last.min_u, last.max_u);
  std::printf("r                %.6g (sqrt E1 %.6g)\n", last.r, last.sqrt_E1);
  if (result.energy_violations > 0) {
    std::printf("energy decay violations: %d (flagged in the CSV)\n", result.energy_violations);
  }
  if (result.r_sign_violations > 0) {
    std::printf("r positivity violations: %d\n", result.r_sign_violations);
  }
  std::printf("output           %s\n", cfg.output_dir.c_str());
}

void check_one(const std::string& path) {
  ks::SimConfig cfg = ks::load_config(path);
  const ks::Mesh mesh = ks::mesh_from(cfg);
  const ks::MeshMetrics metrics = ks::compute_metrics(mesh);
  const ks::AssembledOperators ops = ks::assemble_operators(mesh);
  const ks::ModelParams params = ks::params_from(cfg);

  const ks::State s0 = ks::initial_state(cfg, mesh, ops, params);
  const ks::SparseMatrix a0 = ks::assemble_mobility_stiffness(
      mesh, s0.u, [](double v) { return ks::phi(v); });
  const double sqrt_e1 = ks::r_init(s0.u, ops.M_l, params);
  const ks::StabilityReport rep =
      ks::stability_conditions(s0.c, s0.r, sqrt_e1, metrics, a0, params, cfg.dt);

  std::printf("config OK: %s\n", path.c_str());
  std::printf("mesh       dim=%d nodes=%d elements=%d |Omega|=%.17g\n", mesh.dim,
              mesh.n_nodes(), mesh.n_elements(), mesh.total_measure());
  std::printf("quality    h=%.17g kappa_h=%.17g G_h=%d acute=%s\n", metrics.h,
              metrics.kappa_h, metrics.G_h, ks::check_acute(mesh) ? "yes" : "no");
  std::printf("peclet     %.17g  [%s]\n", rep.peclet, rep.peclet_ok ? "ok" : "violated");
  std::printf("b_inf(0)   %.17g\n", rep.b_inf);
  std::printf("cond_pos   %.17g  [%s]\n", rep.cond_pos, rep.pos_ok ? "ok" : "violated");
  std::printf("cond_diff  %.17g  [%s]\n", rep.cond_diff, rep.diff_ok ? "ok" : "violated");
  std::printf("initial    mass=%.17g r=%.17g E=%.17g\n", ks::mass(s0.u, ops.M_l), s0.r,
              ks::discrete_energy(s0, ops, params));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keller-Segel chemotaxis simulator: P1 finite elements with an "
               "energy-stable SAV time discretization"};
  app.require_subcommand(1);

  std::string run_config;
  std::string out_override;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  int snap_override = 0;
  auto* run_cmd = app.add_subcommand("run", "run one configured experiment");
  run_cmd->add_option("config", run_config, "config file")->required();
  run_cmd->add_option("--out", out_override, "override output_dir");
  run_cmd->add_option("--seed", seed_override, "override rng_seed")
      ->each([&seed_given](const std::string&) { seed_given = true; });
  run_cmd->add_option("--snapshot-every", snap_override, "override snapshot_every");

  std::vector<std::string> sweep_configs;
  auto* sweep_cmd = app.add_subcommand("sweep", "run several configs in sequence");
  sweep_cmd->add_option("configs", sweep_configs, "config files")->required();

  std::string check_config;
  auto* check_cmd =
      app.add_subcommand("check", "validate a config and print mesh metrics and "
                                   "stability-condition estimates without running");
  check_cmd->add_option("config", check_config, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      ks::SimConfig cfg = ks::load_config(run_config);
      if (!out_override.empty()) cfg.output_dir = out_override;
      if (seed_given) cfg.rng_seed = seed_override;
      if (snap_override > 0) cfg.snapshot_every = snap_override;
      run_one(cfg);
    } else if (sweep_cmd->parsed()) {
      for (const std::string& path : sweep_configs) {
        std::printf("== %s ==\n", path.c_str());
        run_one(ks::load_config(path));
      }
    } else if (check_cmd->parsed()) {
      check_one(check_config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
