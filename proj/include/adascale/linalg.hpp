// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace adascale {

using Vector = std::vector<double>;

/// Dense matrix with column-contiguous storage: element (i, j) lives at
/// data[j * rows + i], so walking down a column touches adjacent memory.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  /// Builds from row-major nested lists; all rows must have equal length.
  static DenseMatrix from_rows(const std::vector<Vector>& rows);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  /// Largest absolute entry (0 for an empty matrix).
  double max_abs() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

/// Cholesky factor. Entries above the diagonal are zero and the diagonal is
/// strictly positive.
class LowerTriangular {
 public:
  /// Adopts an explicit factor; rejects nonzero upper entries or a
  /// nonpositive diagonal.
  static LowerTriangular from_dense(DenseMatrix l);

  std::size_t dim() const { return l_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return l_(i, j); }
  const DenseMatrix& matrix() const { return l_; }

 private:
  friend LowerTriangular cholesky_factor(const DenseMatrix& m);
  explicit LowerTriangular(DenseMatrix l) : l_(std::move(l)) {}

  DenseMatrix l_;
};

/// Sum of u[i]*v[i] over a fixed pairwise tree. The length is padded with
/// zeros to the next power of two P; the first pass adds product i to product
/// i + P/2 while loading, and later passes halve the live prefix. The shape
/// depends only on the length.
double dot_tree(std::span<const double> u, std::span<const double> v);

LowerTriangular cholesky_factor(const DenseMatrix& m);
Vector cholesky_solve(const LowerTriangular& l, std::span<const double> b);

/// A * A^T, upper half computed and mirrored.
DenseMatrix gram(const DenseMatrix& a);
/// A * diag(d) * A^T. Every d[j] must be positive.
DenseMatrix scaled_gram(const DenseMatrix& a, std::span<const double> d);

Vector mat_vec(const DenseMatrix& a, std::span<const double> x);
Vector mat_t_vec(const DenseMatrix& a, std::span<const double> y);

double norm_inf(std::span<const double> v);

}  // namespace adascale
