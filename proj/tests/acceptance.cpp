// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: every project-level requirement is exercised end to end
// and reported as exactly one PASS/FAIL line. The binary exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "ks/assembly.hpp"
#include "ks/config.hpp"
#include "ks/diagnostics.hpp"
#include "ks/mesh.hpp"
#include "ks/model.hpp"
#include "ks/rng.hpp"
#include "ks/sim.hpp"
#include "ks/stepper.hpp"

namespace fs = std::filesystem;
using namespace ks;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Harness {
  int failed = 0;
  int total = 0;

  void criterion(int id, const std::string& name, const std::function<std::string()>& body) {
    ++total;
    try {
      const std::string detail = body();
      std::printf("[PASS] criterion %2d: %s (%s)\n", id, name.c_str(), detail.c_str());
    } catch (const std::exception& e) {
      ++failed;
      std::printf("[FAIL] criterion %2d: %s -- %s\n", id, name.c_str(), e.what());
    }
    std::fflush(stdout);
  }
};

// Shared artifacts of the shipped 1D experiment, reused by criteria 1, 2, 8, 10.
struct ShippedRun {
  SimConfig cfg;
  RunResult result;
  double wall_seconds = 0.0;
};

ShippedRun run_shipped(const fs::path& out_dir) {
  ShippedRun shipped;
  shipped.cfg = load_config(std::string(KS_EXPERIMENTS_DIR) + "/ks1d.cfg");
  shipped.cfg.output_dir = out_dir.string();
  const double t0 = now_seconds();
  shipped.result = run(shipped.cfg);
  shipped.wall_seconds = now_seconds() - t0;
  return shipped;
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "ks_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  Harness h;
  ShippedRun shipped = run_shipped(work / "ks1d_run1");

  h.criterion(1, "mass conservation on the shipped 1D run", [&] {
    const auto& records = shipped.result.records;
    require(records.size() == 10001, "expected 10001 records");
    const double mass0 = records.front().mass_u;
    double worst = 0.0;
    for (const EnergyRecord& rec : records) {
      worst = std::max(worst, std::abs(rec.mass_u - mass0) / mass0);
    }
    require(worst <= 1e-11, format("mass drift %.3e exceeds 1e-11", worst));
    require(shipped.wall_seconds <= 10.0,
            format("runtime %.2f s exceeds 10 s", shipped.wall_seconds));
    return format("max relative drift %.2e, runtime %.2f s", worst, shipped.wall_seconds);
  });

  h.criterion(2, "modified-energy monotonicity and dissipation bound", [&] {
    const auto& records = shipped.result.records;
    double worst_gap = -1e300;
    for (std::size_t k = 1; k < records.size(); ++k) {
      const double e_prev = records[k - 1].E;
      const double tol = 1e-9 * std::max(1.0, std::abs(e_prev));
      require(records[k].E <= e_prev + tol,
              format("energy rose at t %.4f by %.3e", records[k].t, records[k].E - e_prev));
      const double gap =
          (records[k].E - e_prev) + shipped.cfg.dt * records[k].diss - tol;
      require(gap <= 0.0, format("dissipation bound violated at t %.4f", records[k].t));
      worst_gap = std::max(worst_gap, gap);
    }
    require(records.back().E < records.front().E, "energy did not decrease overall");
    return format("E %.4f -> %.4f, decay slack >= %.1e", records.front().E, records.back().E,
                  -worst_gap);
  });

  h.criterion(3, "bounds preservation under the monitored conditions", [&] {
    SimConfig cfg;
    cfg.dim = 1;
    cfg.x_min = 0.0;
    cfg.x_max = 1.0;
    cfg.nx = 50;
    cfg.dt = 1e-4;
    cfg.T_final = 0.05;
    cfg.D_u = 1.0;
    cfg.chi_c = 2.0;
    cfg.alpha = 0.5;
    cfg.delta = 1.0;
    cfg.tau = 1.0;
    cfg.u0_mean = 0.5;
    cfg.perturb_amp = 0.01;
    cfg.rng_seed = 7;
    cfg.snapshot_every = 1000;
    cfg.output_dir = (work / "bounds1d").string();
    const RunResult result = run(cfg);

    for (std::size_t k = 0; k < result.stability.size(); ++k) {
      const StabilityReport& s = result.stability[k];
      require(s.peclet_ok && s.pos_ok && s.diff_ok,
              format("condition flags violated at record %g", static_cast<double>(k)));
    }
    double min_u = 1e300, max_u = -1e300, min_c = 1e300;
    for (const EnergyRecord& rec : result.records) {
      min_u = std::min(min_u, rec.min_u);
      max_u = std::max(max_u, rec.max_u);
      min_c = std::min(min_c, rec.min_c);
    }
    require(min_u >= -1e-12, format("min u %.3e dropped below -1e-12", min_u));
    require(max_u <= 1.0 + 1e-12, format("max u %.6f exceeded 1 + 1e-12", max_u));
    require(min_c >= -1e-12, format("min c %.3e dropped below -1e-12", min_c));
    return format("u stayed in [%.4f, %.4f], c >= %.4f, all flags ok", min_u, max_u, min_c);
  });

  h.criterion(4, "dense-oracle equivalence of one full step", [&] {
    const ModelParams params = make_params(1.0, 40.0, 0.5, 1.0, 0.01);
    const oracle::Params op{params.D_u, params.chi_c, params.B, params.alpha,
                            params.delta, params.tau, params.C_shift, params.eps_reg};
    const double dts[3] = {1e-3, 1e-2, 1e-1};
    SplitMix64 rng(20260808);
    double worst = 0.0;
    for (int n_elem = 2; n_elem <= 4; ++n_elem) {
      const Mesh mesh = build_interval_mesh(0.0, 1.0, n_elem);
      const AssembledOperators ops = assemble_operators(mesh);
      std::vector<double> x(mesh.n_nodes());
      for (int i = 0; i < mesh.n_nodes(); ++i) x[i] = mesh.x(i);
      StepWorkspace ws(mesh, ops);
      for (int trial = 0; trial < 50; ++trial) {
        const double dt = dts[trial % 3];
        State state;
        state.u.resize(mesh.n_nodes());
        state.c.resize(mesh.n_nodes());
        for (double& v : state.u) v = 0.1 + 0.8 * rng.next_unit();
        for (double& v : state.c) v = rng.next_unit();
        state.r =
            std::sqrt(oracle::oracle_E1(state.u, oracle::dense_lumped(x), op)) *
            (0.8 + 0.4 * rng.next_unit());

        const COperator c_op = build_c_operator(ops, params, dt);
        const StepResult res = step(state, ops, c_op, params, dt, ws);
        const oracle::StepOutput ref = oracle::dense_step(x, state.u, state.c, state.r, dt, op);
        for (int i = 0; i < mesh.n_nodes(); ++i) {
          worst = std::max(worst, std::abs(res.state.u[i] - ref.u[i]));
          worst = std::max(worst, std::abs(res.state.c[i] - ref.c[i]));
        }
        worst = std::max(worst, std::abs(res.state.r - ref.r));
        worst = std::max(worst, std::abs(res.report.theta - ref.theta));
      }
    }
    require(worst <= 1e-12, format("max deviation %.3e exceeds 1e-12", worst));
    return format("150 random states on 3-5 nodes, max deviation %.2e", worst);
  });

  h.criterion(5, "unconditional solvability of the scalar reduction", [&] {
    const Mesh mesh = build_interval_mesh(0.0, 10.0, 100);
    const AssembledOperators ops = assemble_operators(mesh);
    const ModelParams params = make_params(1.0, 40.0, 0.5, 1.0, 0.01);
    StepWorkspace ws(mesh, ops);
    SplitMix64 rng(5);
    double min_denom = 1e300;
    for (const double dt : {1e-4, 1e-2, 1.0, 100.0}) {
      const COperator c_op = build_c_operator(ops, params, dt);
      for (int trial = 0; trial < 10; ++trial) {
        State state;
        state.u.resize(mesh.n_nodes());
        state.c.resize(mesh.n_nodes());
        for (double& v : state.u) v = rng.next_unit();
        for (double& v : state.c) v = 2.0 * rng.next_unit();
        state.r = r_init(state.u, ops.M_l, params) * (0.5 + rng.next_unit());
        const StepResult res = step(state, ops, c_op, params, dt, ws);
        require(res.report.denom >= 1.0,
                format("denominator %.17g fell below 1 at dt %.1e", res.report.denom, dt));
        min_denom = std::min(min_denom, res.report.denom);
      }
    }
    return format("denominator >= 1 for dt in {1e-4..100}, min %.6f", min_denom);
  });

  h.criterion(6, "sign and row-sum structure of the assembled operators", [&] {
    SplitMix64 rng(66);
    int meshes = 0;
    double worst_row = 0.0, worst_offdiag = -1e300, worst_balance = 0.0, worst_lump = 0.0;
    const auto inspect = [&](const Mesh& mesh) {
      ++meshes;
      require(check_acute(mesh), "constructed mesh is not acute");
      const AssembledOperators ops = assemble_operators(mesh);
      std::vector<double> u(mesh.n_nodes());
      for (double& v : u) v = 0.05 + 0.9 * rng.next_unit();
      const SparseMatrix a =
          assemble_mobility_stiffness(mesh, u, [](double v) { return phi(v); });
      for (const SparseMatrix* m : {&ops.K, &a}) {
        const auto rp = m->row_offsets();
        const auto ci = m->col_indices();
        const auto mv = m->values();
        for (int i = 0; i < m->rows(); ++i) {
          double offsum = 0.0;
          for (int k = rp[i]; k < rp[i + 1]; ++k) {
            if (ci[k] == i) continue;
            worst_offdiag = std::max(worst_offdiag, mv[k]);
            offsum += std::abs(mv[k]);
          }
          worst_row = std::max(worst_row, std::abs(m->row_sum(i)));
          worst_balance = std::max(worst_balance, std::abs(m->entry(i, i) - offsum));
        }
      }
      double lump_total = 0.0;
      for (double v : ops.M_l) lump_total += v;
      worst_lump = std::max(
          worst_lump, std::abs(lump_total - mesh.total_measure()) / mesh.total_measure());
    };
    inspect(build_interval_mesh(0.0, 1.0, 1));
    inspect(build_interval_mesh(0.0, 1.0, 7));
    inspect(build_interval_mesh(0.0, 10.0, 100));
    inspect(build_interval_mesh(-2.0, 3.0, 13));
    inspect(build_rect_mesh(1.0, 1.0, 1, 1));
    inspect(build_rect_mesh(1.0, 1.0, 3, 3));
    inspect(build_rect_mesh(2.0, 1.0, 4, 2));
    inspect(build_rect_mesh(1.5, 0.7, 5, 3));
    require(worst_row <= 1e-12, format("row sum %.3e exceeds 1e-12", worst_row));
    require(worst_offdiag <= 1e-14, format("off-diagonal %.3e exceeds 1e-14", worst_offdiag));
    require(worst_balance <= 1e-12, format("row balance %.3e exceeds 1e-12", worst_balance));
    require(worst_lump <= 1e-12, format("lumped mass total off by %.3e", worst_lump));
    return format("%g meshes: |row sums| <= %.1e, diagonal balance <= %.1e",
                  static_cast<double>(meshes), worst_row, worst_balance);
  });

  h.criterion(7, "first-order self-convergence in time", [&] {
    const double t0 = now_seconds();
    const Mesh mesh = build_interval_mesh(0.0, 1.0, 200);
    const AssembledOperators ops = assemble_operators(mesh);
    const ModelParams params = make_params(0.01, 0.04, 0.5, 1.0, 1.0);
    State s0;
    s0.u.resize(mesh.n_nodes());
    s0.c.assign(mesh.n_nodes(), 1.0);
    for (int i = 0; i < mesh.n_nodes(); ++i) {
      s0.u[i] = 0.5 + 0.1 * std::cos(std::numbers::pi * mesh.x(i));
    }
    s0.r = r_init(s0.u, ops.M_l, params);

    const auto advance = [&](double dt, long n) {
      const COperator c_op = build_c_operator(ops, params, dt);
      StepWorkspace ws(mesh, ops);
      State s = s0;
      for (long k = 0; k < n; ++k) s = step(s, ops, c_op, params, dt, ws).state;
      return s;
    };
    const State ref = advance(1e-6, 100000);
    const double dts[3] = {4e-4, 2e-4, 1e-4};
    double errs[3];
    for (int k = 0; k < 3; ++k) {
      const State s = advance(dts[k], std::lround(0.1 / dts[k]));
      double e2 = 0.0;
      for (int i = 0; i < mesh.n_nodes(); ++i) {
        const double d = s.u[i] - ref.u[i];
        e2 += ops.M_l[i] * d * d;
      }
      errs[k] = std::sqrt(e2);
    }
    // least-squares slope of log err against log dt
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double lx = std::log(dts[k]);
      const double ly = std::log(errs[k]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double order = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
    const double elapsed = now_seconds() - t0;
    require(errs[0] > errs[1] && errs[1] > errs[2], "errors are not decreasing with dt");
    require(order >= 0.9, format("observed order %.3f below 0.9", order));
    require(elapsed <= 60.0, format("runtime %.1f s exceeds 60 s", elapsed));
    return format("order %.3f (errors %.2e..%.2e)", order, errs[0], errs[2]);
  });

  h.criterion(8, "pattern formation with plateaus at the volume-filling bounds", [&] {
    const auto& records = shipped.result.records;
    const EnergyRecord& last = records.back();
    require(last.max_u >= 0.9, format("final max u %.4f below 0.9", last.max_u));
    require(last.min_u <= 0.1, format("final min u %.4f above 0.1", last.min_u));
    const double omega = shipped.cfg.x_max - shipped.cfg.x_min;
    const double r_cap = 3.0 * std::sqrt(shipped.cfg.C_shift * omega);
    double r_min = 1e300, r_max = -1e300;
    for (const EnergyRecord& rec : records) {
      r_min = std::min(r_min, rec.r);
      r_max = std::max(r_max, rec.r);
    }
    require(r_min > 0.0, format("r dropped to %.3e", r_min));
    require(r_max <= r_cap, format("r reached %.3f beyond the %.3f cap", r_max, r_cap));
    require(shipped.result.r_sign_violations == 0, "r positivity violations were reported");
    return format("final u in [%.3f, %.3f], r in (0, %.3f]", last.min_u, last.max_u, r_max);
  });

  h.criterion(9, "calculus identities of the regularized entropy", [&] {
    const ModelParams p = make_params(1.0, 40.0, 0.5, 1.0, 0.01);
    double worst_fd = 0.0, worst_phi = 0.0;
    const double h_fd = 1e-5;
    for (double u = 2.0 * p.eps_reg; u <= 1.0 - 2.0 * p.eps_reg + 1e-12; u += 0.005) {
      const double fd = (F_reg(u + h_fd, p) - F_reg(u - h_fd, p)) / (2.0 * h_fd);
      const double um = std::min(u - h_fd, 1.0 - u - h_fd);
      const double bound = (4.0 / (um * um * um)) / 6.0 * h_fd * h_fd + 1e-11;
      const double err = std::abs(g_reg(u, p) - fd);
      require(err <= bound, format("F' mismatch %.3e at u %.3f", err, u));
      worst_fd = std::max(worst_fd, err);

      const double h2 = 3e-5;
      const double d1 = (g_reg(u + h2, p) - g_reg(u - h2, p)) / (2.0 * h2);
      const double d2 = (g_reg(u + h2 / 2.0, p) - g_reg(u - h2 / 2.0, p)) / h2;
      const double gp = (4.0 * d2 - d1) / 3.0;
      const double rel = std::abs(1.0 / gp - phi(u)) / phi(u);
      require(rel <= 1e-10, format("1/g' vs phi off by %.3e at u %.3f", rel, u));
      worst_phi = std::max(worst_phi, rel);
    }
    return format("|g - dF| <= C h^2 (max %.1e), 1/g' = phi to %.1e", worst_fd, worst_phi);
  });

  h.criterion(10, "deterministic byte-identical outputs", [&] {
    ShippedRun second = run_shipped(work / "ks1d_run2");
    const std::string a = slurp(fs::path(shipped.cfg.output_dir) / "timeseries.csv");
    const std::string b = slurp(fs::path(second.cfg.output_dir) / "timeseries.csv");
    require(a == b, "timeseries.csv differs between identical runs");
    const std::string sa = slurp(fs::path(shipped.cfg.output_dir) / "snapshot_10000.csv");
    const std::string sb = slurp(fs::path(second.cfg.output_dir) / "snapshot_10000.csv");
    require(sa == sb, "snapshot_10000.csv differs between identical runs");
    return format("timeseries.csv identical across runs (%g bytes)",
                  static_cast<double>(a.size()));
  });

  std::printf("%d/%d criteria passed\n", h.total - h.failed, h.total);
  fs::remove_all(work);
  return h.failed == 0 ? 0 : 1;
}
