// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <utility>

#include "ks/rng.hpp"

namespace ks {

namespace {

constexpr double kEnergyTol = 1e-9;  // decay slack: kEnergyTol * max(1, |E^n|)

void minmax(std::span<const double> v, double& lo, double& hi) {
  lo = v[0];
  hi = v[0];
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
}

EnergyRecord make_record(const State& state, const AssembledOperators& ops,
                         const ModelParams& params, double diss) {
  EnergyRecord rec;
  rec.t = state.t;
  rec.E = discrete_energy(state, ops, params);
  rec.diss = diss;
  rec.mass_u = mass(state.u, ops.M_l);
  minmax(state.u, rec.min_u, rec.max_u);
  minmax(state.c, rec.min_c, rec.max_c);
  rec.r = state.r;
  rec.sqrt_E1 = energy_E1(state.u, ops.M_l, params).sqrt_E1;
  rec.drift = std::abs(rec.r - rec.sqrt_E1);
  return rec;
}

void write_snapshot(const std::string& path, const Mesh& mesh, const State& state,
                    std::vector<std::string>& files) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  char buf[200];
  out << (mesh.dim == 1 ? "node_id,x,u,c\n" : "node_id,x,y,u,c\n");
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    if (mesh.dim == 1) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", i, mesh.x(i), state.u[i],
                    state.c[i]);
    } else {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", i, mesh.x(i), mesh.y(i),
                    state.u[i], state.c[i]);
    }
    out << buf;
  }
  files.push_back(path);
}

void write_timeseries(const std::string& path, const RunResult& result,
                      std::vector<std::string>& files) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "t,E,diss,mass_u,min_u,max_u,min_c,max_c,r,sqrt_E1,drift,peclet,cond_pos,cond_diff,flags\n";
  char buf[512];
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const EnergyRecord& r = result.records[k];
    const StabilityReport& s = result.stability[k];
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%d\n",
                  r.t, r.E, r.diss, r.mass_u, r.min_u, r.max_u, r.min_c, r.max_c, r.r,
                  r.sqrt_E1, r.drift, s.peclet, s.cond_pos, s.cond_diff, result.flags[k]);
    out << buf;
  }
  files.push_back(path);
}

}  // namespace

State initial_state(const SimConfig& cfg, const Mesh& mesh, const AssembledOperators& ops,
                    const ModelParams& params) {
  State state;
  const int n = mesh.n_nodes();
  state.u.resize(n);
  state.c.assign(n, cfg.c0_value);
  SplitMix64 rng(cfg.rng_seed);
  for (int i = 0; i < n; ++i) {
    state.u[i] = cfg.u0_mean + cfg.perturb_amp * (2.0 * rng.next_unit() - 1.0);
  }
  state.r = r_init(state.u, ops.M_l, params);
  state.t = 0.0;
  state.step = 0;
  return state;
}

long planned_steps(double T_final, double dt) {
  const double q = T_final / dt;
  return static_cast<long>(std::ceil(q - 1e-9 * std::max(1.0, q)));
}

RunResult run(const SimConfig& cfg_in) {
  SimConfig cfg = cfg_in;
  validate_config(cfg);

  const Mesh mesh = mesh_from(cfg);
  const MeshMetrics metrics = compute_metrics(mesh);
  const AssembledOperators ops = assemble_operators(mesh);
  const ModelParams params = params_from(cfg);

  std::filesystem::create_directories(cfg.output_dir);
  const auto in_dir = [&cfg](const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
  };

  RunResult result;
  export_mesh_csv(mesh, in_dir("mesh_nodes.csv"), in_dir("mesh_elements.csv"));
  result.files.push_back(in_dir("mesh_nodes.csv"));
  result.files.push_back(in_dir("mesh_elements.csv"));

  State state = initial_state(cfg, mesh, ops, params);
  const COperator c_op = build_c_operator(ops, params, cfg.dt);
  StepWorkspace ws(mesh, ops);

  const long n_steps = planned_steps(cfg.T_final, cfg.dt);
  result.records.reserve(n_steps + 1);
  result.stability.reserve(n_steps + 1);
  result.flags.reserve(n_steps + 1);

  result.records.push_back(make_record(state, ops, params, 0.0));
  StabilityReport initial_stab;
  initial_stab.peclet = params.chi_c * metrics.kappa_h / (2.0 * params.D_u);
  initial_stab.peclet_ok = initial_stab.peclet < 1.0;
  initial_stab.pos_ok = true;
  initial_stab.diff_ok = true;
  result.stability.push_back(initial_stab);
  result.flags.push_back((initial_stab.peclet_ok ? kFlagPeclet : 0) | kFlagPos | kFlagDiff |
                         kFlagEnergy);

  write_snapshot(in_dir("snapshot_0.csv"), mesh, state, result.files);

  for (long k = 1; k <= n_steps; ++k) {
    StepResult res = step(state, ops, c_op, params, cfg.dt, ws);

    const std::vector<double> mu1 = compute_mu1(res.state, state, ws.s(), params);
    const std::vector<double> mu2 = compute_mu2(res.state, state, params, cfg.dt);
    const double diss = dissipation(mu1, mu2, ws.mobility(), ops.M_l);
    const StabilityReport stab = stability_conditions(
        state.c, res.state.r, ws.entropy().sqrt_E1, metrics, ws.mobility(), params, cfg.dt);

    EnergyRecord rec = make_record(res.state, ops, params, diss);
    const double e_prev = result.records.back().E;
    const bool energy_ok = rec.E <= e_prev + kEnergyTol * std::max(1.0, std::abs(e_prev));
    if (!energy_ok) {
      ++result.energy_violations;
      std::cerr << "warning: energy increased beyond tolerance at step " << k << " (E "
                << e_prev << " -> " << rec.E << ")\n";
    }
    if (!(res.state.r > 0.0)) {
      ++result.r_sign_violations;
      std::cerr << "warning: scalar variable r is not positive at step " << k << " (r = "
                << res.state.r << ")\n";
    }

    result.records.push_back(rec);
    result.stability.push_back(stab);
    result.flags.push_back((stab.peclet_ok ? kFlagPeclet : 0) | (stab.pos_ok ? kFlagPos : 0) |
                           (stab.diff_ok ? kFlagDiff : 0) | (energy_ok ? kFlagEnergy : 0));

    state = std::move(res.state);
    if (k % cfg.snapshot_every == 0 || k == n_steps) {
      write_snapshot(in_dir("snapshot_" + std::to_string(k) + ".csv"), mesh, state,
                     result.files);
    }
  }

  write_timeseries(in_dir("timeseries.csv"), result, result.files);
  result.final_state = std::move(state);
  return result;
}

}  // namespace ks
