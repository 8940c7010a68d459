// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

namespace ks {

namespace {

double dist(const Mesh& m, int a, int b) {
  if (m.dim == 1) return std::abs(m.x(a) - m.x(b));
  const double dx = m.x(a) - m.x(b);
  const double dy = m.y(a) - m.y(b);
  return std::hypot(dx, dy);
}

void validate(const Mesh& m, double expected_measure) {
  const int n = m.n_nodes();
  double total = 0.0;
  for (int e = 0; e < m.n_elements(); ++e) {
    const auto el = m.element(e);
    for (std::size_t a = 0; a < el.size(); ++a) {
      if (el[a] < 0 || el[a] >= n) throw std::runtime_error("mesh: element node index out of range");
      for (std::size_t b = a + 1; b < el.size(); ++b) {
        if (el[a] == el[b]) throw std::runtime_error("mesh: repeated node in element");
      }
    }
    const double meas = m.element_measure(e);
    if (!(meas > 0.0)) throw std::runtime_error("mesh: non-positive element measure");
    total += meas;
  }
  if (std::abs(total - expected_measure) > 1e-12 * std::abs(expected_measure)) {
    throw std::runtime_error("mesh: element measures do not cover the domain");
  }
}

}  // namespace

double Mesh::element_measure(int e) const {
  const auto el = element(e);
  if (dim == 1) {
    return std::abs(x(el[1]) - x(el[0]));
  }
  const double ax = x(el[1]) - x(el[0]);
  const double ay = y(el[1]) - y(el[0]);
  const double bx = x(el[2]) - x(el[0]);
  const double by = y(el[2]) - y(el[0]);
  return 0.5 * std::abs(ax * by - ay * bx);
}

double Mesh::total_measure() const {
  double total = 0.0;
  for (int e = 0; e < n_elements(); ++e) total += element_measure(e);
  return total;
}

Mesh build_interval_mesh(double a, double b, int n) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("build_interval_mesh: endpoints must be finite");
  }
  if (!(a < b)) throw std::invalid_argument("build_interval_mesh: requires a < b");
  if (n < 1) throw std::invalid_argument("build_interval_mesh: requires n >= 1");

  Mesh m;
  m.dim = 1;
  m.coords.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    m.coords[i] = a + (b - a) * (static_cast<double>(i) / n);
  }
  m.coords[0] = a;
  m.coords[n] = b;
  m.elements.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    m.elements.push_back(i);
    m.elements.push_back(i + 1);
  }
  m.boundary_nodes = {0, n};
  validate(m, b - a);
  return m;
}

Mesh build_rect_mesh(double lx, double ly, int nx, int ny) {
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw std::invalid_argument("build_rect_mesh: requires positive finite extents");
  }
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_rect_mesh: requires nx, ny >= 1");

  Mesh m;
  m.dim = 2;
  const int nnx = nx + 1;
  const int nny = ny + 1;
  m.coords.resize(2 * static_cast<std::size_t>(nnx) * nny);
  for (int j = 0; j < nny; ++j) {
    for (int i = 0; i < nnx; ++i) {
      const int id = j * nnx + i;
      m.coords[2 * static_cast<std::size_t>(id)] = lx * (static_cast<double>(i) / nx);
      m.coords[2 * static_cast<std::size_t>(id) + 1] = ly * (static_cast<double>(j) / ny);
    }
  }
  m.elements.reserve(6 * static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = j * nnx + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + nnx;
      const int v11 = v01 + 1;
      // consistent diagonal v00-v11, both triangles counterclockwise
      m.elements.insert(m.elements.end(), {v00, v10, v11});
      m.elements.insert(m.elements.end(), {v00, v11, v01});
    }
  }
  for (int j = 0; j < nny; ++j) {
    for (int i = 0; i < nnx; ++i) {
      if (i == 0 || i == nx || j == 0 || j == ny) {
        m.boundary_nodes.push_back(j * nnx + i);
      }
    }
  }
  validate(m, lx * ly);
  return m;
}

bool check_acute(const Mesh& mesh) {
  if (mesh.dim == 1) return true;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto el = mesh.element(e);
    for (int v = 0; v < 3; ++v) {
      const int p = el[v];
      const int q = el[(v + 1) % 3];
      const int r = el[(v + 2) % 3];
      const double ux = mesh.x(q) - mesh.x(p);
      const double uy = mesh.y(q) - mesh.y(p);
      const double vx = mesh.x(r) - mesh.x(p);
      const double vy = mesh.y(r) - mesh.y(p);
      const double d = ux * vx + uy * vy;
      const double scale = std::hypot(ux, uy) * std::hypot(vx, vy);
      // angle > pi/2 + 1e-12  <=>  cos below -1e-12 (to first order)
      if (d < -1e-12 * scale) return false;
    }
  }
  return true;
}

MeshMetrics compute_metrics(const Mesh& mesh) {
  MeshMetrics out;
  out.h = 0.0;
  out.kappa_h = std::numeric_limits<double>::infinity();

  std::vector<std::set<int>> adj(static_cast<std::size_t>(mesh.n_nodes()));
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto el = mesh.element(e);
    double diam = 0.0;
    for (std::size_t a = 0; a < el.size(); ++a) {
      for (std::size_t b = a + 1; b < el.size(); ++b) {
        diam = std::max(diam, dist(mesh, el[a], el[b]));
        adj[el[a]].insert(el[b]);
        adj[el[b]].insert(el[a]);
      }
    }
    out.h = std::max(out.h, diam);
    // minimal perpendicular length: the segment length in 1D, the smallest
    // triangle altitude (2 * area / longest edge) in 2D
    const double kappa = mesh.dim == 1 ? mesh.element_measure(e)
                                       : 2.0 * mesh.element_measure(e) / diam;
    out.kappa_h = std::min(out.kappa_h, kappa);
  }

  out.adjacency.resize(adj.size());
  out.G_h = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    out.adjacency[i].assign(adj[i].begin(), adj[i].end());
    out.G_h = std::max(out.G_h, static_cast<int>(adj[i].size()));
  }
  return out;
}

void export_mesh_csv(const Mesh& mesh, const std::string& nodes_path,
                     const std::string& elements_path) {
  std::ofstream nodes(nodes_path);
  if (!nodes) throw std::runtime_error("export_mesh_csv: cannot open " + nodes_path);
  char buf[160];
  nodes << (mesh.dim == 1 ? "node_id,x\n" : "node_id,x,y\n");
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    if (mesh.dim == 1) {
      std::snprintf(buf, sizeof buf, "%d,%.17g\n", i, mesh.x(i));
    } else {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i, mesh.x(i), mesh.y(i));
    }
    nodes << buf;
  }

  std::ofstream elems(elements_path);
  if (!elems) throw std::runtime_error("export_mesh_csv: cannot open " + elements_path);
  elems << (mesh.dim == 1 ? "elem_id,n0,n1\n" : "elem_id,n0,n1,n2\n");
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto el = mesh.element(e);
    if (mesh.dim == 1) {
      std::snprintf(buf, sizeof buf, "%d,%d,%d\n", e, el[0], el[1]);
    } else {
      std::snprintf(buf, sizeof buf, "%d,%d,%d,%d\n", e, el[0], el[1], el[2]);
    }
    elems << buf;
  }
}

}  // namespace ks
