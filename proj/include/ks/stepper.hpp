// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "ks/assembly.hpp"
#include "ks/mesh.hpp"
#include "ks/model.hpp"
#include "ks/sparse.hpp"

namespace ks {

/// Nodal solution state: cell density u, chemoattractant c, the scalar
/// auxiliary variable r, the simulation time and step index.
struct State {
  std::vector<double> u;
  std::vector<double> c;
  double r = 0.0;
  double t = 0.0;
  long step = 0;
};

struct StepReport {
  double theta = 0.0;        // lumped inner product (s^n, u^{n+1})
  double denom = 0.0;        // 1 + (D_u dt / 2) s^T A s, always >= 1
  int c_solver_iters = 0;    // 0 on the direct solve path
  double c_residual = 0.0;   // relative residual of the chemoattractant solve
};

/// Factored handle for the constant SPD chemoattractant operator
/// tau M_l / dt + K + alpha M_l. Valid only for the dt it was built with.
class COperator {
public:
  COperator(const AssembledOperators& ops, const ModelParams& params, double dt);

  double dt() const { return dt_; }
  const SparseMatrix& matrix() const { return s_; }

  struct SolveInfo {
    int iters = 0;
    double residual = 0.0;
  };
  SolveInfo solve(std::span<const double> b, std::span<double> x) const;

private:
  SparseMatrix s_;
  BandCholesky chol_;
  double dt_ = 0.0;
};

COperator build_c_operator(const AssembledOperators& ops, const ModelParams& params, double dt);

/// Per-run scratch for step(): the mobility matrix pattern is built once and
/// only its values are refreshed each step. After a step the buffers expose
/// A^n, s^n and E1[u^n] for the diagnostics of that transition.
class StepWorkspace {
public:
  StepWorkspace(const Mesh& mesh, const AssembledOperators& ops);

  const SparseMatrix& mobility() const { return assembler_.matrix(); }
  std::span<const double> s() const { return s_; }
  const EntropyEval& entropy() const { return entropy_; }

private:
  friend struct StepAccess;
  MobilityAssembler assembler_;
  EntropyEval entropy_;
  std::vector<double> s_;
  std::vector<double> a_c_;
  std::vector<double> a_s_;
  std::vector<double> rhs_;
  std::vector<double> c_rhs_;
};

struct StepResult {
  State state;
  StepReport report;
};

/// One time step of the linear energy-stable scheme.
///
/// With A = mobility stiffness of u^n, s = g(u^n)/sqrt(E1[u^n]) and the
/// lumped mass M_l, the discrete system per step is
///
///   M_l (U^{n+1} - U^n) / dt = -chi_c A mu1,   mu1 = B r^{n+1} s - C^n,
///   r^{n+1} - r^n            = (s^T M_l (U^{n+1} - U^n)) / 2,
///   (tau M_l / dt + K + alpha M_l) C^{n+1} = (tau M_l / dt) C^n + delta M_l U^{n+1}.
///
/// Eliminating r^{n+1} couples U^{n+1} to the single scalar
/// theta = s^T M_l U^{n+1}, which has the closed form
///
///   theta = s^T rhs / (1 + (D_u dt / 2) s^T A s),
///   rhs   = M_l U^n + dt chi_c A C^n + dt D_u (s^T M_l U^n / 2 - r^n) A s,
///
/// after which U^{n+1} = M_l^{-1} (rhs - (D_u dt / 2) theta A s) is a diagonal
/// inversion and the c update is one SPD solve. A 1 = 0 makes the cell mass
/// s^T-independent and exactly conserved.
StepResult step(const State& state, const AssembledOperators& ops, const COperator& c_op,
                const ModelParams& params, double dt, StepWorkspace& ws);

/// Nodal mu1 = B r^{n+1} s - c^n, used by the dissipation diagnostic.
std::vector<double> compute_mu1(const State& state_next, const State& state_prev,
                                std::span<const double> s, const ModelParams& params);

/// Nodal mu2 = -tau (c^{n+1} - c^n) / dt; satisfies
/// M_l mu2 = K c^{n+1} + alpha M_l c^{n+1} - delta M_l u^{n+1} up to the
/// c-solver residual.
std::vector<double> compute_mu2(const State& state_next, const State& state_prev,
                                const ModelParams& params, double dt);

}  // namespace ks
