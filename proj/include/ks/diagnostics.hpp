// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "ks/assembly.hpp"
#include "ks/mesh.hpp"
#include "ks/model.hpp"
#include "ks/sparse.hpp"
#include "ks/stepper.hpp"

namespace ks {

/// Per-step diagnostics row.
struct EnergyRecord {
  double t = 0.0;
  double E = 0.0;        // modified discrete energy
  double diss = 0.0;     // dissipation of the transition into this state
  double mass_u = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double min_c = 0.0;
  double max_c = 0.0;
  double r = 0.0;
  double sqrt_E1 = 0.0;  // sqrt of E1 at this state's u
  double drift = 0.0;    // |r - sqrt_E1|
};

/// Dimensionless positivity monitors; the conditions are sufficient, not
/// necessary, so the flags are advisory.
struct StabilityReport {
  double peclet = 0.0;     // chi_c kappa_h / (2 D_u)
  double b_inf = 0.0;      // max over edges of |A_ij| |c_j - c_i|
  double cond_pos = 0.0;   // dt chi_c G_h b_inf / kappa_h
  double cond_diff = 0.0;  // dt D_u G_h r^{n+1} / (kappa_h^2 sqrt(E1[u^n]))
  bool peclet_ok = false;  // peclet < 1
  bool pos_ok = false;     // cond_pos <= 1
  bool diff_ok = false;    // cond_diff <= 1
};

/// E = (c^T K c + alpha c^T M_l c) / 2 + B r^2 - c^T M_l u.
double discrete_energy(const State& state, const AssembledOperators& ops,
                       const ModelParams& params);

/// ||mu2||^2_{M_l} + mu1^T A mu1; nonnegative up to roundoff.
double dissipation(std::span<const double> mu1, std::span<const double> mu2,
                   const SparseMatrix& A, std::span<const double> M_l);

/// Total cell mass sum_i M_l[i] u_i.
double mass(std::span<const double> u_nodal, std::span<const double> M_l);

StabilityReport stability_conditions(std::span<const double> c_prev, double r_next,
                                     double sqrt_E1_prev, const MeshMetrics& metrics,
                                     const SparseMatrix& A, const ModelParams& params,
                                     double dt);

}  // namespace ks
