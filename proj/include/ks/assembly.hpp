// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ks/mesh.hpp"
#include "ks/sparse.hpp"

namespace ks {

/// The constant P1 operators of a mesh: consistent mass M, its lumped
/// diagonal M_l (row sums), and the stiffness K.
struct AssembledOperators {
  SparseMatrix M;
  std::vector<double> M_l;
  SparseMatrix K;
};

/// Exact P1 mass matrix. 1D segment of length l: diag l/3, off-diag l/6.
/// 2D triangle of area S: diag S/6, off-diag S/12.
SparseMatrix assemble_mass(const Mesh& mesh);

/// Row sums of the consistent mass; throws on a non-positive entry, which
/// signals a broken mesh.
std::vector<double> lump_mass(const SparseMatrix& m);

/// P1 stiffness matrix; K 1 = 0 and off-diagonals are <= 0 on acute meshes.
SparseMatrix assemble_stiffness(const Mesh& mesh);

/// Mobility-weighted stiffness A with A_ij = sum_T phibar_T K^T_ij, where
/// phibar_T = mobility(clamp(mean of u over T's vertices, 0, 1)). Shares the
/// stiffness pattern, keeps A 1 = 0 and the acute-mesh sign structure.
SparseMatrix assemble_mobility_stiffness(const Mesh& mesh, std::span<const double> u_nodal,
                                         const std::function<double(double)>& mobility);

AssembledOperators assemble_operators(const Mesh& mesh);

/// Reusable assembler for the mobility-weighted stiffness: the sparsity
/// pattern and the per-element geometry are computed once, only the values
/// are refreshed when the nodal field changes.
class MobilityAssembler {
public:
  MobilityAssembler(const Mesh& mesh, std::function<double(double)> mobility);

  /// Refresh values for the given nodal field and return the matrix.
  const SparseMatrix& assemble(std::span<const double> u_nodal);
  const SparseMatrix& matrix() const { return a_; }

private:
  std::function<double(double)> mobility_;
  SparseMatrix a_;
  int nloc_ = 0;
  int n_elements_ = 0;
  std::vector<int> elem_nodes_;   // nloc_ ids per element
  std::vector<int> slots_;        // nloc_^2 value slots per element
  std::vector<double> local_k_;   // nloc_^2 stiffness entries per element
};

}  // namespace ks
