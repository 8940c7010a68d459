// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace ks {

/// Physical constants of the chemotaxis model.
///
/// The cell flux is D_u grad u - chi_c phi(u) grad c; the chemoattractant
/// obeys tau dc/dt = lap c - alpha c + delta u. B = D_u / chi_c weighs the
/// entropic part of the energy.
struct ModelParams {
  double D_u = 1.0;      // cell diffusion coefficient
  double chi_c = 1.0;    // chemotactic sensitivity
  double B = 1.0;        // D_u / chi_c
  double alpha = 0.0;    // chemoattractant decay rate
  double delta = 1.0;    // chemoattractant production rate
  double tau = 1.0;      // chemoattractant time scale
  double C_shift = 1.0;  // additive constant keeping F > 0 on [0, 1]
  double eps_reg = 0.01; // entropy regularization, in (0, 1/2)
};

/// Validates ranges and derives B; throws std::invalid_argument naming the
/// offending field.
ModelParams make_params(double D_u, double chi_c, double alpha, double delta,
                        double tau, double C_shift = 1.0, double eps_reg = 0.01);

/// Volume-filling mobility u(1-u), evaluated at clamp(u, 0, 1); range [0, 1/4].
double phi(double u);

/// Free energy density F(u) = u ln u + (1-u) ln(1-u) + C_shift, evaluated at
/// clamp(u, eps_reg, 1-eps_reg). Strictly positive since C_shift > ln 2.
double F_reg(double u, const ModelParams& p);

/// g = F', i.e. ln(u/(1-u)) at the regularized argument; odd about u = 1/2,
/// and g' = 1/phi on the unclamped range.
double g_reg(double u, const ModelParams& p);

struct EntropyEval {
  double E1 = 0.0;               // lumped quadrature of F_reg
  std::vector<double> g_nodal;   // g_reg at each node
  double sqrt_E1 = 0.0;
};

/// E1 = sum_i M_l[i] F_reg(u_i) together with the nodal g values.
EntropyEval energy_E1(std::span<const double> u_nodal, std::span<const double> M_l,
                      const ModelParams& p);

/// s_i = g_nodal_i / sqrt(E1), the nodal realization of the normalized
/// entropy variation used by the scalar update.
std::vector<double> s_vector(const EntropyEval& e);

/// Initial scalar variable r(0) = sqrt(E1[u0]).
double r_init(std::span<const double> u0_nodal, std::span<const double> M_l,
              const ModelParams& p);

}  // namespace ks
