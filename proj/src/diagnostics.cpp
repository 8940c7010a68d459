// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ks {

double discrete_energy(const State& state, const AssembledOperators& ops,
                       const ModelParams& params) {
  std::vector<double> kc(state.c.size());
  ops.K.matvec(state.c, kc);
  const double grad_c = dot(state.c, kc);
  const double c_sq = weighted_dot(ops.M_l, state.c, state.c);
  const double cross = weighted_dot(ops.M_l, state.c, state.u);
  return 0.5 * (grad_c + params.alpha * c_sq) + params.B * state.r * state.r - cross;
}

double dissipation(std::span<const double> mu1, std::span<const double> mu2,
                   const SparseMatrix& A, std::span<const double> M_l) {
  std::vector<double> a_mu1(mu1.size());
  A.matvec(mu1, a_mu1);
  return weighted_dot(M_l, mu2, mu2) + dot(mu1, a_mu1);
}

double mass(std::span<const double> u_nodal, std::span<const double> M_l) {
  if (u_nodal.size() != M_l.size()) throw std::invalid_argument("mass: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < u_nodal.size(); ++i) acc += M_l[i] * u_nodal[i];
  return acc;
}

StabilityReport stability_conditions(std::span<const double> c_prev, double r_next,
                                     double sqrt_E1_prev, const MeshMetrics& metrics,
                                     const SparseMatrix& A, const ModelParams& params,
                                     double dt) {
  StabilityReport rep;
  rep.peclet = params.chi_c * metrics.kappa_h / (2.0 * params.D_u);

  const auto rp = A.row_offsets();
  const auto ci = A.col_indices();
  const auto av = A.values();
  double b_inf = 0.0;
  for (int i = 0; i < A.rows(); ++i) {
    for (int k = rp[i]; k < rp[static_cast<std::size_t>(i) + 1]; ++k) {
      const int j = ci[k];
      if (j == i) continue;
      b_inf = std::max(b_inf, std::abs(av[k]) * std::abs(c_prev[j] - c_prev[i]));
    }
  }
  rep.b_inf = b_inf;
  rep.cond_pos = dt * params.chi_c * metrics.G_h * b_inf / metrics.kappa_h;
  rep.cond_diff = dt * params.D_u * metrics.G_h * r_next /
                  (metrics.kappa_h * metrics.kappa_h * sqrt_E1_prev);
  rep.peclet_ok = rep.peclet < 1.0;
  rep.pos_ok = rep.cond_pos <= 1.0;
  rep.diff_ok = rep.cond_diff <= 1.0;
  return rep;
}

}  // namespace ks
