// SPDX-License-Identifier: Apache-2.0
#include "adascale/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adascale/errors.hpp"
#include "tree_sum.hpp"

namespace adascale {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix DenseMatrix::from_rows(const std::vector<Vector>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  DenseMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) {
      throw DimensionError("row " + std::to_string(i) + " has length " +
                           std::to_string(rows[i].size()) + ", expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Vector> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

double DenseMatrix::max_abs() const {
  double r = 0.0;
  for (double v : data_) r = std::max(r, std::abs(v));
  return r;
}

LowerTriangular LowerTriangular::from_dense(DenseMatrix l) {
  if (l.rows() != l.cols()) throw DimensionError("triangular factor must be square");
  for (std::size_t j = 0; j < l.cols(); ++j) {
    if (!(l(j, j) > 0.0)) throw DomainError("triangular factor needs a positive diagonal");
    for (std::size_t i = 0; i < j; ++i) {
      if (l(i, j) != 0.0) throw DomainError("triangular factor has entries above the diagonal");
    }
  }
  return LowerTriangular(std::move(l));
}

double dot_tree(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DimensionError("dot_tree: lengths " + std::to_string(u.size()) + " and " +
                         std::to_string(v.size()) + " differ");
  }
  if (u.empty()) throw DimensionError("dot_tree: empty operands");
  return detail::tree_sum(u.size(), [&](std::size_t i) { return u[i] * v[i]; });
}

LowerTriangular cholesky_factor(const DenseMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DimensionError("cholesky_factor: matrix is not square");

  const double sym_tol = 1e-12 * m.max_abs();
  double max_diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    max_diag = std::max(max_diag, m(j, j));
    for (std::size_t i = j + 1; i < n; ++i) {
      if (std::abs(m(i, j) - m(j, i)) > sym_tol) {
        throw DomainError("cholesky_factor: matrix is not symmetric");
      }
    }
  }
  const double pivot_floor = 1e-12 * max_diag;

  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > pivot_floor)) {
      throw NotPositiveDefinite("cholesky_factor: pivot " + std::to_string(j) + " is " +
                                std::to_string(pivot));
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return LowerTriangular(std::move(l));
}

Vector cholesky_solve(const LowerTriangular& l, std::span<const double> b) {
  const std::size_t n = l.dim();
  if (b.size() != n) {
    throw DimensionError("cholesky_solve: factor is " + std::to_string(n) + "x" +
                         std::to_string(n) + " but rhs has length " + std::to_string(b.size()));
  }
  const DenseMatrix& lm = l.matrix();

  // L z = b, column-oriented so the inner loop runs down a column
  Vector z(b.begin(), b.end());
  for (std::size_t j = 0; j < n; ++j) {
    z[j] /= lm(j, j);
    const auto col = lm.column(j);
    for (std::size_t i = j + 1; i < n; ++i) z[i] -= col[i] * z[j];
  }
  // L^T x = z
  Vector x(std::move(z));
  for (std::size_t i = n; i-- > 0;) {
    const auto col = lm.column(i);
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= col[k] * x[k];
    x[i] = s / col[i];
  }
  return x;
}

namespace {

DenseMatrix weighted_gram(const DenseMatrix& a, const double* d) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  DenseMatrix g(m, m);
  if (n == 0) return g;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const double v = detail::tree_sum(n, [&](std::size_t k) {
        const double w = d ? d[k] : 1.0;
        return a(i, k) * w * a(j, k);
      });
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

}  // namespace

DenseMatrix gram(const DenseMatrix& a) { return weighted_gram(a, nullptr); }

DenseMatrix scaled_gram(const DenseMatrix& a, std::span<const double> d) {
  if (d.size() != a.cols()) {
    throw DimensionError("scaled_gram: scaling has length " + std::to_string(d.size()) +
                         ", expected " + std::to_string(a.cols()));
  }
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (!(d[j] > 0.0)) {
      throw DomainError("scaled_gram: scaling entry " + std::to_string(j) + " is not positive");
    }
  }
  return weighted_gram(a, d.data());
}

Vector mat_vec(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) {
    throw DimensionError("mat_vec: matrix has " + std::to_string(a.cols()) +
                         " columns but vector has length " + std::to_string(x.size()));
  }
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out[i] = detail::tree_sum(a.cols(), [&](std::size_t j) { return a(i, j) * x[j]; });
  }
  return out;
}

Vector mat_t_vec(const DenseMatrix& a, std::span<const double> y) {
  if (y.size() != a.rows()) {
    throw DimensionError("mat_t_vec: matrix has " + std::to_string(a.rows()) +
                         " rows but vector has length " + std::to_string(y.size()));
  }
  Vector out(a.cols(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto col = a.column(j);
    out[j] = detail::tree_sum(a.rows(), [&](std::size_t i) { return col[i] * y[i]; });
  }
  return out;
}

double norm_inf(std::span<const double> v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace adascale
