// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace ks {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

double to_double(std::string_view v, const std::string& path, int line, const std::string& key) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    parse_fail(path, line, "invalid number for key '" + key + "'");
  }
  return out;
}

long to_long(std::string_view v, const std::string& path, int line, const std::string& key) {
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    parse_fail(path, line, "invalid integer for key '" + key + "'");
  }
  return out;
}

std::uint64_t to_u64(std::string_view v, const std::string& path, int line, const std::string& key) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    parse_fail(path, line, "invalid unsigned integer for key '" + key + "'");
  }
  return out;
}

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config: field '" + field + "' " + why);
}

}  // namespace

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);

  SimConfig cfg;
  bool seen_dim = false, seen_nx = false, seen_ny = false;
  bool seen_xmin = false, seen_xmax = false, seen_lx = false, seen_ly = false;
  bool seen_dt = false, seen_T = false;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(path, lineno, "expected 'key = value'");
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(path, lineno, "empty key");
    if (value.empty()) parse_fail(path, lineno, "empty value for key '" + key + "'");

    if (key == "dim") {
      cfg.dim = static_cast<int>(to_long(value, path, lineno, key));
      seen_dim = true;
    } else if (key == "x_min") {
      cfg.x_min = to_double(value, path, lineno, key);
      seen_xmin = true;
    } else if (key == "x_max") {
      cfg.x_max = to_double(value, path, lineno, key);
      seen_xmax = true;
    } else if (key == "Lx") {
      cfg.Lx = to_double(value, path, lineno, key);
      seen_lx = true;
    } else if (key == "Ly") {
      cfg.Ly = to_double(value, path, lineno, key);
      seen_ly = true;
    } else if (key == "nx") {
      cfg.nx = static_cast<int>(to_long(value, path, lineno, key));
      seen_nx = true;
    } else if (key == "ny") {
      cfg.ny = static_cast<int>(to_long(value, path, lineno, key));
      seen_ny = true;
    } else if (key == "dt") {
      cfg.dt = to_double(value, path, lineno, key);
      seen_dt = true;
    } else if (key == "T_final") {
      cfg.T_final = to_double(value, path, lineno, key);
      seen_T = true;
    } else if (key == "D_u") {
      cfg.D_u = to_double(value, path, lineno, key);
    } else if (key == "chi_c") {
      cfg.chi_c = to_double(value, path, lineno, key);
    } else if (key == "alpha") {
      cfg.alpha = to_double(value, path, lineno, key);
    } else if (key == "delta") {
      cfg.delta = to_double(value, path, lineno, key);
    } else if (key == "tau") {
      cfg.tau = to_double(value, path, lineno, key);
    } else if (key == "C_shift") {
      cfg.C_shift = to_double(value, path, lineno, key);
    } else if (key == "eps_reg") {
      cfg.eps_reg = to_double(value, path, lineno, key);
    } else if (key == "u0_mean") {
      cfg.u0_mean = to_double(value, path, lineno, key);
    } else if (key == "perturb_amp") {
      cfg.perturb_amp = to_double(value, path, lineno, key);
    } else if (key == "rng_seed") {
      cfg.rng_seed = to_u64(value, path, lineno, key);
    } else if (key == "c0_value") {
      cfg.c0_value = to_double(value, path, lineno, key);
      cfg.c0_given = true;
    } else if (key == "snapshot_every") {
      cfg.snapshot_every = static_cast<int>(to_long(value, path, lineno, key));
    } else if (key == "output_dir") {
      cfg.output_dir = std::string{value};
    } else {
      parse_fail(path, lineno, "unknown key '" + key + "'");
    }
  }

  if (!seen_dim) invalid("dim", "is required");
  if (!seen_nx) invalid("nx", "is required");
  if (!seen_dt) invalid("dt", "is required");
  if (!seen_T) invalid("T_final", "is required");
  if (cfg.dim == 1) {
    if (!seen_xmin || !seen_xmax) invalid("x_min/x_max", "are required when dim = 1");
  } else if (cfg.dim == 2) {
    if (!seen_lx || !seen_ly) invalid("Lx/Ly", "are required when dim = 2");
    if (!seen_ny) invalid("ny", "is required when dim = 2");
  }

  validate_config(cfg);
  return cfg;
}

void validate_config(SimConfig& cfg) {
  if (cfg.dim != 1 && cfg.dim != 2) invalid("dim", "must be 1 or 2");
  if (cfg.nx < 1) invalid("nx", "must be >= 1");
  if (cfg.dim == 1) {
    if (!std::isfinite(cfg.x_min) || !std::isfinite(cfg.x_max) || !(cfg.x_min < cfg.x_max)) {
      invalid("x_min/x_max", "must satisfy x_min < x_max");
    }
  } else {
    if (cfg.ny < 1) invalid("ny", "must be >= 1");
    if (!(cfg.Lx > 0.0) || !(cfg.Ly > 0.0)) invalid("Lx/Ly", "must be positive");
  }
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) invalid("dt", "must be positive");
  if (!(cfg.T_final >= cfg.dt)) invalid("T_final", "must be >= dt");
  if (cfg.snapshot_every < 1) invalid("snapshot_every", "must be >= 1");
  if (!(cfg.perturb_amp >= 0.0)) invalid("perturb_amp", "must be >= 0");
  if (cfg.u0_mean - cfg.perturb_amp < 0.0 || cfg.u0_mean + cfg.perturb_amp > 1.0) {
    invalid("u0_mean/perturb_amp", "must keep u0_mean +- perturb_amp inside [0, 1]");
  }
  if (cfg.output_dir.empty()) invalid("output_dir", "must not be empty");

  params_from(cfg);  // range checks on the physical constants

  if (!cfg.c0_given) {
    cfg.c0_value = cfg.alpha > 0.0 ? cfg.u0_mean * cfg.delta / cfg.alpha : cfg.u0_mean;
    cfg.c0_given = true;
  }
  if (!(cfg.c0_value >= 0.0) || !std::isfinite(cfg.c0_value)) {
    invalid("c0_value", "must be finite and >= 0");
  }
}

ModelParams params_from(const SimConfig& cfg) {
  return make_params(cfg.D_u, cfg.chi_c, cfg.alpha, cfg.delta, cfg.tau, cfg.C_shift,
                     cfg.eps_reg);
}

Mesh mesh_from(const SimConfig& cfg) {
  if (cfg.dim == 1) return build_interval_mesh(cfg.x_min, cfg.x_max, cfg.nx);
  return build_rect_mesh(cfg.Lx, cfg.Ly, cfg.nx, cfg.ny);
}

}  // namespace ks
