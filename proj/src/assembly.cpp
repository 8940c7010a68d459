// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ks {

namespace {

// K^T for element e into out (row-major nloc x nloc).
void element_stiffness(const Mesh& mesh, int e, double* out) {
  const auto el = mesh.element(e);
  if (mesh.dim == 1) {
    const double l = std::abs(mesh.x(el[1]) - mesh.x(el[0]));
    const double k = 1.0 / l;
    out[0] = k;
    out[1] = -k;
    out[2] = -k;
    out[3] = k;
    return;
  }
  const double x0 = mesh.x(el[0]), y0 = mesh.y(el[0]);
  const double x1 = mesh.x(el[1]), y1 = mesh.y(el[1]);
  const double x2 = mesh.x(el[2]), y2 = mesh.y(el[2]);
  // gradients of the barycentric basis: grad phi_i = (b_i, c_i) / (2S)
  const double b[3] = {y1 - y2, y2 - y0, y0 - y1};
  const double c[3] = {x2 - x1, x0 - x2, x1 - x0};
  const double area2 = std::abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0));
  const double s = 1.0 / (2.0 * area2);  // = 1 / (4S)
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[3 * i + j] = (b[i] * b[j] + c[i] * c[j]) * s;
    }
  }
}

void element_mass(const Mesh& mesh, int e, double* out) {
  const auto el = mesh.element(e);
  if (mesh.dim == 1) {
    const double l = std::abs(mesh.x(el[1]) - mesh.x(el[0]));
    out[0] = l / 3.0;
    out[1] = l / 6.0;
    out[2] = l / 6.0;
    out[3] = l / 3.0;
    return;
  }
  const double area = mesh.element_measure(e);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[3 * i + j] = (i == j) ? area / 6.0 : area / 12.0;
    }
  }
}

template <typename LocalFn>
SparseMatrix assemble(const Mesh& mesh, LocalFn&& local) {
  const int nloc = mesh.nodes_per_element();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_elements()) * nloc * nloc);
  double loc[9];
  for (int e = 0; e < mesh.n_elements(); ++e) {
    local(mesh, e, loc);
    const auto el = mesh.element(e);
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j) {
        triplets.push_back({el[i], el[j], loc[nloc * i + j]});
      }
    }
  }
  return SparseMatrix::from_triplets(mesh.n_nodes(), mesh.n_nodes(), triplets, true);
}

}  // namespace

SparseMatrix assemble_mass(const Mesh& mesh) { return assemble(mesh, element_mass); }

SparseMatrix assemble_stiffness(const Mesh& mesh) { return assemble(mesh, element_stiffness); }

std::vector<double> lump_mass(const SparseMatrix& m) {
  std::vector<double> d(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    d[i] = m.row_sum(i);
    if (!(d[i] > 0.0)) {
      throw std::runtime_error("lump_mass: non-positive lumped entry (broken mesh)");
    }
  }
  return d;
}

AssembledOperators assemble_operators(const Mesh& mesh) {
  AssembledOperators ops;
  ops.M = assemble_mass(mesh);
  ops.M_l = lump_mass(ops.M);
  ops.K = assemble_stiffness(mesh);
  return ops;
}

MobilityAssembler::MobilityAssembler(const Mesh& mesh, std::function<double(double)> mobility)
    : mobility_(std::move(mobility)),
      nloc_(mesh.nodes_per_element()),
      n_elements_(mesh.n_elements()) {
  a_ = assemble_stiffness(mesh);  // pattern donor; values are overwritten
  std::fill(a_.values_mutable().begin(), a_.values_mutable().end(), 0.0);

  elem_nodes_.resize(static_cast<std::size_t>(n_elements_) * nloc_);
  slots_.resize(static_cast<std::size_t>(n_elements_) * nloc_ * nloc_);
  local_k_.resize(static_cast<std::size_t>(n_elements_) * nloc_ * nloc_);
  double loc[9];
  for (int e = 0; e < n_elements_; ++e) {
    const auto el = mesh.element(e);
    element_stiffness(mesh, e, loc);
    for (int i = 0; i < nloc_; ++i) {
      elem_nodes_[static_cast<std::size_t>(e) * nloc_ + i] = el[i];
      for (int j = 0; j < nloc_; ++j) {
        const std::size_t k = (static_cast<std::size_t>(e) * nloc_ + i) * nloc_ + j;
        slots_[k] = a_.find(el[i], el[j]);
        local_k_[k] = loc[nloc_ * i + j];
      }
    }
  }
}

const SparseMatrix& MobilityAssembler::assemble(std::span<const double> u_nodal) {
  if (static_cast<int>(u_nodal.size()) != a_.rows()) {
    throw std::invalid_argument("MobilityAssembler: nodal vector length mismatch");
  }
  for (double v : u_nodal) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("MobilityAssembler: non-finite nodal value");
    }
  }
  auto vals = a_.values_mutable();
  std::fill(vals.begin(), vals.end(), 0.0);
  for (int e = 0; e < n_elements_; ++e) {
    double ubar = 0.0;
    for (int i = 0; i < nloc_; ++i) {
      ubar += u_nodal[elem_nodes_[static_cast<std::size_t>(e) * nloc_ + i]];
    }
    ubar /= nloc_;
    const double w = mobility_(std::clamp(ubar, 0.0, 1.0));
    const std::size_t base = static_cast<std::size_t>(e) * nloc_ * nloc_;
    for (int k = 0; k < nloc_ * nloc_; ++k) {
      vals[slots_[base + k]] += w * local_k_[base + k];
    }
  }
  return a_;
}

SparseMatrix assemble_mobility_stiffness(const Mesh& mesh, std::span<const double> u_nodal,
                                         const std::function<double(double)>& mobility) {
  MobilityAssembler assembler(mesh, mobility);
  return assembler.assemble(u_nodal);
}

}  // namespace ks
