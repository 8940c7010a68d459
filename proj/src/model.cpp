// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ks {

ModelParams make_params(double D_u, double chi_c, double alpha, double delta,
                        double tau, double C_shift, double eps_reg) {
  if (!(D_u > 0.0) || !std::isfinite(D_u)) throw std::invalid_argument("ModelParams: D_u must be positive");
  if (!(chi_c > 0.0) || !std::isfinite(chi_c)) throw std::invalid_argument("ModelParams: chi_c must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("ModelParams: alpha must be >= 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("ModelParams: delta must be >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("ModelParams: tau must be positive");
  if (!(C_shift > std::numbers::ln2)) throw std::invalid_argument("ModelParams: C_shift must exceed ln 2");
  if (!(eps_reg > 0.0 && eps_reg < 0.5)) throw std::invalid_argument("ModelParams: eps_reg must lie in (0, 1/2)");
  ModelParams p;
  p.D_u = D_u;
  p.chi_c = chi_c;
  p.B = D_u / chi_c;
  p.alpha = alpha;
  p.delta = delta;
  p.tau = tau;
  p.C_shift = C_shift;
  p.eps_reg = eps_reg;
  return p;
}

double phi(double u) {
  const double v = std::clamp(u, 0.0, 1.0);
  return v * (1.0 - v);
}

double F_reg(double u, const ModelParams& p) {
  const double v = std::clamp(u, p.eps_reg, 1.0 - p.eps_reg);
  return v * std::log(v) + (1.0 - v) * std::log(1.0 - v) + p.C_shift;
}

double g_reg(double u, const ModelParams& p) {
  const double v = std::clamp(u, p.eps_reg, 1.0 - p.eps_reg);
  return std::log(v) - std::log(1.0 - v);
}

EntropyEval energy_E1(std::span<const double> u_nodal, std::span<const double> M_l,
                      const ModelParams& p) {
  if (u_nodal.size() != M_l.size()) {
    throw std::invalid_argument("energy_E1: nodal vector and lumped mass length mismatch");
  }
  EntropyEval e;
  e.g_nodal.resize(u_nodal.size());
  for (std::size_t i = 0; i < u_nodal.size(); ++i) {
    if (!std::isfinite(u_nodal[i])) throw std::invalid_argument("energy_E1: non-finite nodal value");
    e.E1 += M_l[i] * F_reg(u_nodal[i], p);
    e.g_nodal[i] = g_reg(u_nodal[i], p);
  }
  if (!std::isfinite(e.E1) || !(e.E1 > 0.0)) {
    throw std::runtime_error("energy_E1: entropy is not positive");
  }
  e.sqrt_E1 = std::sqrt(e.E1);
  return e;
}

std::vector<double> s_vector(const EntropyEval& e) {
  if (!(e.E1 > 0.0)) throw std::invalid_argument("s_vector: requires E1 > 0");
  std::vector<double> s(e.g_nodal.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = e.g_nodal[i] / e.sqrt_E1;
  }
  return s;
}

double r_init(std::span<const double> u0_nodal, std::span<const double> M_l,
              const ModelParams& p) {
  return energy_E1(u0_nodal, M_l, p).sqrt_E1;
}

}  // namespace ks
