// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "ks/mesh.hpp"
#include "ks/model.hpp"

namespace ks {

/// One experiment, as read from a `key = value` config file.
struct SimConfig {
  int dim = 0;

  // dim == 1
  double x_min = 0.0;
  double x_max = 0.0;
  // dim == 2, domain [0, Lx] x [0, Ly]
  double Lx = 0.0;
  double Ly = 0.0;
  int nx = 0;
  int ny = 0;

  double dt = 0.0;
  double T_final = 0.0;

  double D_u = 1.0;
  double chi_c = 1.0;
  double alpha = 0.0;
  double delta = 1.0;
  double tau = 1.0;
  double C_shift = 1.0;
  double eps_reg = 0.01;

  double u0_mean = 0.5;
  double perturb_amp = 0.01;
  std::uint64_t rng_seed = 1;
  double c0_value = 0.0;
  bool c0_given = false;

  int snapshot_every = 1000;
  std::string output_dir = "out";
};

/// Parses the line-oriented `key = value` format; `#` starts a comment.
/// Unknown keys and malformed values are rejected with the line number.
SimConfig load_config(const std::string& path);

/// Checks all invariants (naming the offending field) and fills the c0
/// default: the uniform steady state delta u0_mean / alpha when alpha > 0,
/// otherwise u0_mean.
void validate_config(SimConfig& cfg);

ModelParams params_from(const SimConfig& cfg);
Mesh mesh_from(const SimConfig& cfg);

}  // namespace ks
