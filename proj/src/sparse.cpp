// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#include "ks/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace ks {

SparseMatrix SparseMatrix::from_triplets(int n_rows, int n_cols,
                                         std::span<const Triplet> entries,
                                         bool symmetric_hint) {
  if (n_rows < 0 || n_cols < 0) {
    throw std::invalid_argument("SparseMatrix: negative dimension");
  }
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
      throw std::invalid_argument("SparseMatrix: triplet index out of range");
    }
  }

  std::vector<std::pair<int, int>> pattern;
  pattern.reserve(entries.size());
  for (const Triplet& t : entries) {
    pattern.emplace_back(t.row, t.col);
  }
  std::sort(pattern.begin(), pattern.end());
  pattern.erase(std::unique(pattern.begin(), pattern.end()), pattern.end());

  SparseMatrix a;
  a.n_rows_ = n_rows;
  a.n_cols_ = n_cols;
  a.symmetric_ = symmetric_hint;
  a.row_ptr_.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  for (const auto& [i, j] : pattern) {
    ++a.row_ptr_[static_cast<std::size_t>(i) + 1];
  }
  for (int i = 0; i < n_rows; ++i) {
    a.row_ptr_[static_cast<std::size_t>(i) + 1] += a.row_ptr_[i];
  }
  a.col_idx_.resize(pattern.size());
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    a.col_idx_[k] = pattern[k].second;  // pattern is (row, col)-sorted
  }
  a.values_.assign(pattern.size(), 0.0);

  // Accumulate in insertion order: assembly stays deterministic.
  for (const Triplet& t : entries) {
    a.values_[static_cast<std::size_t>(a.find(t.row, t.col))] += t.value;
  }
  return a;
}

int SparseMatrix::find(int i, int j) const {
  if (i < 0 || i >= n_rows_ || j < 0 || j >= n_cols_) return -1;
  const int begin = row_ptr_[i];
  const int end = row_ptr_[static_cast<std::size_t>(i) + 1];
  const auto first = col_idx_.begin() + begin;
  const auto last = col_idx_.begin() + end;
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return -1;
  return static_cast<int>(it - col_idx_.begin());
}

double SparseMatrix::entry(int i, int j) const {
  const int k = find(i, j);
  return k < 0 ? 0.0 : values_[static_cast<std::size_t>(k)];
}

void SparseMatrix::matvec(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_cols_ || static_cast<int>(y.size()) != n_rows_) {
    throw std::invalid_argument("SparseMatrix::matvec: size mismatch");
  }
  for (int i = 0; i < n_rows_; ++i) {
    double acc = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
      acc += values_[k] * x[col_idx_[k]];
    }
    y[i] = acc;
  }
}

double SparseMatrix::row_sum(int i) const {
  if (i < 0 || i >= n_rows_) throw std::invalid_argument("SparseMatrix::row_sum: row out of range");
  double acc = 0.0;
  for (int k = row_ptr_[i]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
    acc += values_[k];
  }
  return acc;
}

bool SparseMatrix::check_symmetric(double tol) const {
  if (n_rows_ != n_cols_) return false;
  for (int i = 0; i < n_rows_; ++i) {
    for (int k = row_ptr_[i]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
      const int j = col_idx_[k];
      if (std::abs(values_[k] - entry(j, i)) > tol) return false;
    }
  }
  return true;
}

void SparseMatrix::dump_coo(std::ostream& os) const {
  char buf[96];
  for (int i = 0; i < n_rows_; ++i) {
    for (int k = row_ptr_[i]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, col_idx_[k], values_[k]);
      os << buf;
    }
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double weighted_dot(std::span<const double> w, std::span<const double> x,
                    std::span<const double> y) {
  if (w.size() != x.size() || w.size() != y.size()) {
    throw std::invalid_argument("weighted_dot: size mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i] * y[i];
  return acc;
}

BandCholesky BandCholesky::factor(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("BandCholesky: matrix must be square");
  const int n = a.rows();
  if (n == 0) throw std::invalid_argument("BandCholesky: empty matrix");

  int bw = 0;
  const auto rp = a.row_offsets();
  const auto ci = a.col_indices();
  for (int i = 0; i < n; ++i) {
    for (int k = rp[i]; k < rp[static_cast<std::size_t>(i) + 1]; ++k) {
      bw = std::max(bw, std::abs(ci[k] - i));
    }
  }

  BandCholesky f;
  f.n_ = n;
  f.bw_ = bw;
  f.band_.assign(static_cast<std::size_t>(n) * (bw + 1), 0.0);

  const auto vals = a.values();
  for (int i = 0; i < n; ++i) {
    for (int k = rp[i]; k < rp[static_cast<std::size_t>(i) + 1]; ++k) {
      if (ci[k] <= i) f.at(i, ci[k]) = vals[k];
    }
  }

  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - bw);
    for (int j = lo; j <= i; ++j) {
      double s = f.at(i, j);
      const int kstart = std::max(lo, j - bw);
      for (int k = kstart; k < j; ++k) {
        s -= f.at(i, k) * f.at(j, k);
      }
      if (j < i) {
        f.at(i, j) = s / f.at(j, j);
      } else {
        if (!(s > 0.0)) {
          throw std::runtime_error("BandCholesky: non-positive pivot (matrix is not SPD)");
        }
        f.at(i, i) = std::sqrt(s);
      }
    }
  }
  return f;
}

void BandCholesky::solve(std::span<const double> b, std::span<double> x) const {
  if (static_cast<int>(b.size()) != n_ || static_cast<int>(x.size()) != n_) {
    throw std::invalid_argument("BandCholesky::solve: size mismatch");
  }
  // forward: L y = b, stored into x
  for (int i = 0; i < n_; ++i) {
    double s = b[i];
    for (int j = std::max(0, i - bw_); j < i; ++j) {
      s -= at(i, j) * x[j];
    }
    x[i] = s / at(i, i);
  }
  // backward: L^T x = y
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[i];
    const int hi = std::min(n_ - 1, i + bw_);
    for (int k = i + 1; k <= hi; ++k) {
      s -= at(k, i) * x[k];
    }
    x[i] = s / at(i, i);
  }
}

}  // namespace ks
