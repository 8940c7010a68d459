// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

namespace ks {

/// Simplicial mesh: uniform segments in 1D, a structured triangulation in 2D.
///
/// A constructed Mesh is immutable by convention and safe to share between
/// threads. Node ordering is lexicographic by grid index so repeated builds
/// are bit-identical.
struct Mesh {
  int dim = 0;                       // 1 or 2
  std::vector<double> coords;        // dim doubles per node, interleaved
  std::vector<int> elements;         // dim+1 node ids per element
  std::vector<int> boundary_nodes;   // sorted, unique

  int n_nodes() const { return static_cast<int>(coords.size()) / dim; }
  int n_elements() const { return static_cast<int>(elements.size()) / (dim + 1); }
  int nodes_per_element() const { return dim + 1; }

  double x(int node) const { return coords[static_cast<std::size_t>(node) * dim]; }
  double y(int node) const { return coords[static_cast<std::size_t>(node) * dim + 1]; }

  std::span<const int> element(int e) const {
    return {elements.data() + static_cast<std::size_t>(e) * (dim + 1),
            static_cast<std::size_t>(dim + 1)};
  }

  /// Length of a segment or area of a triangle; strictly positive on a valid mesh.
  double element_measure(int e) const;
  double total_measure() const;
};

/// Mesh-quality quantities entering the positivity monitors.
struct MeshMetrics {
  double h = 0.0;        // max element diameter
  double kappa_h = 0.0;  // min over elements of the minimal perpendicular length
  int G_h = 0;           // max number of edge neighbors over all nodes
  std::vector<std::vector<int>> adjacency;  // per-node sorted neighbor lists
};

/// n uniform segments on [a, b]; boundary nodes are the two endpoints.
Mesh build_interval_mesh(double a, double b, int n);

/// Structured triangulation of [0, lx] x [0, ly]: each grid cell is split into
/// two right triangles along the same diagonal, so every angle is <= pi/2.
Mesh build_rect_mesh(double lx, double ly, int nx, int ny);

/// True iff every triangle angle is <= pi/2 + 1e-12 (1D meshes vacuously are).
/// This is exactly the condition for nonpositive off-diagonal stiffness entries.
bool check_acute(const Mesh& mesh);

MeshMetrics compute_metrics(const Mesh& mesh);

/// Two CSV files: node coordinates (node_id,x[,y]) and connectivity
/// (elem_id,n0,n1[,n2]).
void export_mesh_csv(const Mesh& mesh, const std::string& nodes_path,
                     const std::string& elements_path);

}  // namespace ks
