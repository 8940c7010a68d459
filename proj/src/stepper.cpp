// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/stepper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ks {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::runtime_error(std::string("step: non-finite ") + what);
  }
}

}  // namespace

COperator::COperator(const AssembledOperators& ops, const ModelParams& params, double dt)
    : dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("COperator: dt must be positive");
  }
  const int n = ops.K.rows();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(ops.K.nnz()) + n);
  const auto rp = ops.K.row_offsets();
  const auto ci = ops.K.col_indices();
  const auto kv = ops.K.values();
  for (int i = 0; i < n; ++i) {
    for (int k = rp[i]; k < rp[static_cast<std::size_t>(i) + 1]; ++k) {
      triplets.push_back({i, ci[k], kv[k]});
    }
    triplets.push_back({i, i, (params.tau / dt + params.alpha) * ops.M_l[i]});
  }
  s_ = SparseMatrix::from_triplets(n, n, triplets, true);
  chol_ = BandCholesky::factor(s_);
}

COperator::SolveInfo COperator::solve(std::span<const double> b, std::span<double> x) const {
  chol_.solve(b, x);
  // true relative residual, reported per step
  std::vector<double> ax(b.size());
  s_.matvec(x, ax);
  double rr = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double r = b[i] - ax[i];
    rr += r * r;
    bb += b[i] * b[i];
  }
  SolveInfo info;
  info.iters = 0;
  info.residual = bb > 0.0 ? std::sqrt(rr / bb) : std::sqrt(rr);
  return info;
}

COperator build_c_operator(const AssembledOperators& ops, const ModelParams& params, double dt) {
  return COperator(ops, params, dt);
}

StepWorkspace::StepWorkspace(const Mesh& mesh, const AssembledOperators& ops)
    : assembler_(mesh, [](double v) { return phi(v); }) {
  const std::size_t n = ops.M_l.size();
  s_.resize(n);
  a_c_.resize(n);
  a_s_.resize(n);
  rhs_.resize(n);
  c_rhs_.resize(n);
}

struct StepAccess {
  static StepResult run(const State& state, const AssembledOperators& ops,
                        const COperator& c_op, const ModelParams& p, double dt,
                        StepWorkspace& ws) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw std::invalid_argument("step: dt must be positive");
    }
    if (c_op.dt() != dt) {
      throw std::invalid_argument("step: COperator was built for a different dt");
    }
    const std::size_t n = ops.M_l.size();
    if (state.u.size() != n || state.c.size() != n) {
      throw std::invalid_argument("step: state size does not match operators");
    }

    ws.entropy_ = energy_E1(state.u, ops.M_l, p);
    for (std::size_t i = 0; i < n; ++i) {
      ws.s_[i] = ws.entropy_.g_nodal[i] / ws.entropy_.sqrt_E1;
    }

    const SparseMatrix& a = ws.assembler_.assemble(state.u);
    a.matvec(state.c, ws.a_c_);
    a.matvec(ws.s_, ws.a_s_);

    const double s_ml_u = weighted_dot(ops.M_l, ws.s_, state.u);
    double s_a_s = dot(ws.s_, ws.a_s_);
    // s^T A s is a quadratic form of a PSD operator; clamp FP roundoff so the
    // denominator stays >= 1 exactly
    if (s_a_s < 0.0) s_a_s = 0.0;
    const double denom = 1.0 + 0.5 * p.D_u * dt * s_a_s;

    const double drift_coef = dt * p.D_u * (0.5 * s_ml_u - state.r);
    for (std::size_t i = 0; i < n; ++i) {
      ws.rhs_[i] = ops.M_l[i] * state.u[i] + dt * p.chi_c * ws.a_c_[i] + drift_coef * ws.a_s_[i];
    }
    const double theta = dot(ws.s_, ws.rhs_) / denom;
    if (!std::isfinite(theta) || !std::isfinite(denom)) {
      throw std::runtime_error("step: non-finite scalar solve");
    }

    State next;
    next.u.resize(n);
    next.c.resize(n);
    const double corr = 0.5 * p.D_u * dt * theta;
    for (std::size_t i = 0; i < n; ++i) {
      next.u[i] = (ws.rhs_[i] - corr * ws.a_s_[i]) / ops.M_l[i];
    }
    next.r = state.r + 0.5 * (theta - s_ml_u);

    const double tau_dt = p.tau / dt;
    for (std::size_t i = 0; i < n; ++i) {
      ws.c_rhs_[i] = ops.M_l[i] * (tau_dt * state.c[i] + p.delta * next.u[i]);
    }
    const COperator::SolveInfo info = c_op.solve(ws.c_rhs_, next.c);
    if (info.residual > 1e-10) {
      throw std::runtime_error("step: chemoattractant solve missed its tolerance");
    }

    require_finite(next.u, "cell density");
    require_finite(next.c, "chemoattractant");
    if (!std::isfinite(next.r)) throw std::runtime_error("step: non-finite scalar variable");

    next.t = state.t + dt;
    next.step = state.step + 1;
    return {std::move(next), StepReport{theta, denom, info.iters, info.residual}};
  }
};

StepResult step(const State& state, const AssembledOperators& ops, const COperator& c_op,
                const ModelParams& params, double dt, StepWorkspace& ws) {
  return StepAccess::run(state, ops, c_op, params, dt, ws);
}

std::vector<double> compute_mu1(const State& state_next, const State& state_prev,
                                std::span<const double> s, const ModelParams& params) {
  if (s.size() != state_prev.c.size()) {
    throw std::invalid_argument("compute_mu1: size mismatch");
  }
  std::vector<double> mu1(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    mu1[i] = params.B * state_next.r * s[i] - state_prev.c[i];
  }
  return mu1;
}

std::vector<double> compute_mu2(const State& state_next, const State& state_prev,
                                const ModelParams& params, double dt) {
  if (state_next.c.size() != state_prev.c.size()) {
    throw std::invalid_argument("compute_mu2: size mismatch");
  }
  std::vector<double> mu2(state_next.c.size());
  for (std::size_t i = 0; i < mu2.size(); ++i) {
    mu2[i] = -params.tau * (state_next.c[i] - state_prev.c[i]) / dt;
  }
  return mu2;
}

}  // namespace ks
