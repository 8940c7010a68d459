// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ks/assembly.hpp"
#include "ks/config.hpp"
#include "ks/diagnostics.hpp"
#include "ks/mesh.hpp"
#include "ks/model.hpp"
#include "ks/stepper.hpp"

namespace ks {

/// Row-health flags written to the time series: bit 0 peclet < 1,
/// bit 1 cond_pos <= 1, bit 2 cond_diff <= 1, bit 3 energy decayed within
/// tolerance. A healthy row reads 15.
enum RowFlag : int {
  kFlagPeclet = 1,
  kFlagPos = 2,
  kFlagDiff = 4,
  kFlagEnergy = 8,
};

struct RunResult {
  State final_state;
  std::vector<EnergyRecord> records;      // one per step, plus the initial one
  std::vector<StabilityReport> stability; // aligned with records
  std::vector<int> flags;                 // aligned with records
  std::vector<std::string> files;         // everything written
  int energy_violations = 0;              // decay-tolerance misses (warned, not fatal)
  int r_sign_violations = 0;              // steps with r <= 0 (warned, not fatal)
};

/// u_i = u0_mean + perturb_amp (2 xi_i - 1) with xi_i drawn per node from
/// SplitMix64(rng_seed); c = c0_value; r = sqrt(E1[u0]).
State initial_state(const SimConfig& cfg, const Mesh& mesh, const AssembledOperators& ops,
                    const ModelParams& params);

/// Number of steps a run executes: ceil(T_final / dt), robust to the
/// quotient landing a rounding error above an integer.
long planned_steps(double T_final, double dt);

/// Runs the configured experiment and writes timeseries.csv, field snapshots
/// and the mesh CSVs into cfg.output_dir. Diagnostics warnings (energy decay
/// beyond tolerance, r <= 0) go to stderr and the flags column; hard errors
/// throw.
RunResult run(const SimConfig& cfg);

}  // namespace ks
