// SPDX-FileCopyrightText: Copyright (c) 2026 The savks authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace ks {

/// One (row, col, value) contribution used to build a SparseMatrix.
struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed-row sparse matrix.
///
/// Column indices are strictly increasing within each row. Duplicate triplets
/// are summed in their insertion order, so element-by-element assembly is
/// bit-for-bit deterministic.
class SparseMatrix {
public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(int n_rows, int n_cols,
                                    std::span<const Triplet> entries,
                                    bool symmetric_hint);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }
  bool symmetric_hint() const { return symmetric_; }

  std::span<const int> row_offsets() const { return row_ptr_; }
  std::span<const int> col_indices() const { return col_idx_; }
  std::span<const double> values() const { return values_; }
  /// Mutable access to the stored values; the pattern itself is fixed.
  std::span<double> values_mutable() { return values_; }

  /// Index into values() of entry (i, j), or -1 if (i, j) is not stored.
  int find(int i, int j) const;
  /// Stored value at (i, j); entries outside the pattern read as 0.
  double entry(int i, int j) const;

  /// y = A x
  void matvec(std::span<const double> x, std::span<double> y) const;
  double row_sum(int i) const;

  /// Audit of the symmetry flag: every stored (i, j) must have a stored or
  /// implicitly-zero (j, i) counterpart with |a_ij - a_ji| <= tol.
  bool check_symmetric(double tol) const;

  /// Coordinate-format text dump, one "row col value" line per stored entry,
  /// row-major, values printed with %.17g.
  void dump_coo(std::ostream& os) const;

private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  bool symmetric_ = false;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

double dot(std::span<const double> x, std::span<const double> y);

/// sum_i w_i x_i y_i — the lumped inner product when w is a lumped mass.
double weighted_dot(std::span<const double> w, std::span<const double> x,
                    std::span<const double> y);

/// Cholesky factorization of a banded symmetric positive definite matrix.
///
/// The factor is stored in packed band form; a non-positive pivot aborts the
/// factorization, which signals a non-SPD input.
class BandCholesky {
public:
  BandCholesky() = default;

  static BandCholesky factor(const SparseMatrix& a);

  void solve(std::span<const double> b, std::span<double> x) const;
  int bandwidth() const { return bw_; }
  int size() const { return n_; }

private:
  int n_ = 0;
  int bw_ = 0;
  // Row-major, bw_+1 slots per row: L(i, j) lives at band_[i*(bw_+1) + bw_ - i + j].
  std::vector<double> band_;

  double at(int i, int j) const { return band_[static_cast<std::size_t>(i) * (bw_ + 1) + bw_ - i + j]; }
  double& at(int i, int j) { return band_[static_cast<std::size_t>(i) * (bw_ + 1) + bw_ - i + j]; }
};

}  // namespace ks
