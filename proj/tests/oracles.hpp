// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "adascale/linalg.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double sequential_dot(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline Rows to_rows(const adascale::DenseMatrix& a) {
  Rows r(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i][j] = a(i, j);
  return r;
}

inline Rows multiply(const Rows& a, const Rows& b) {
  Rows c(a.size(), std::vector<double>(b.front().size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// Solves the square system by Gaussian elimination with partial pivoting.
/// Returns nullopt when a pivot falls below `singular_tol`.
inline std::optional<std::vector<double>> gauss_solve(Rows a, std::vector<double> b,
                                                      double singular_tol = 1e-12) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < singular_tol) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Gauss-Jordan inverse with partial pivoting.
inline Rows invert(Rows a) {
  const std::size_t n = a.size();
  Rows inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

struct VertexOptimum {
  std::vector<double> x;
  double objective = 0.0;
  bool unique = false;
};

/// Minimizes c'x over {Ax = b, x >= 0} by enumerating every basis of m
/// columns. `unique` is false when another vertex ties within `tie_tol`.
inline std::optional<VertexOptimum> enumerate_vertices(const Rows& a, const std::vector<double>& b,
                                                       const std::vector<double>& c,
                                                       double tie_tol = 1e-7) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;

  std::optional<VertexOptimum> best;
  std::vector<std::vector<double>> optimal_points;
  while (true) {
    Rows basis(m, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) basis[i][k] = a[i][idx[k]];
    if (auto xb = gauss_solve(basis, b, 1e-10)) {
      const bool feasible =
          std::all_of(xb->begin(), xb->end(), [](double v) { return v >= -1e-10; });
      if (feasible) {
        std::vector<double> x(n, 0.0);
        double obj = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          x[idx[k]] = std::max(0.0, (*xb)[k]);
          obj += c[idx[k]] * x[idx[k]];
        }
        if (!best || obj < best->objective - tie_tol) {
          best = VertexOptimum{x, obj, true};
          optimal_points = {x};
        } else if (std::abs(obj - best->objective) <= tie_tol) {
          // the same vertex can appear under several degenerate bases
          double dist = 0.0;
          for (std::size_t j = 0; j < n; ++j) dist = std::max(dist, std::abs(x[j] - best->x[j]));
          if (dist > 1e-7) best->unique = false;
        }
      }
    }
    // next m-combination of {0..n-1}
    std::size_t pos = m;
    while (pos > 0 && idx[pos - 1] == n - m + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t k = pos; k < m; ++k) idx[k] = idx[k - 1] + 1;
  }
  return best;
}

/// Two-phase dense tableau simplex with Bland's rule, for reference optima
/// of problems too large to enumerate. Returns the optimal objective, or
/// nullopt if the problem is infeasible or unbounded.
inline std::optional<double> simplex_objective(const Rows& a_in, const std::vector<double>& b_in,
                                               const std::vector<double>& c) {
  const std::size_t m = a_in.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m + 1;  // structurals, artificials, rhs
  constexpr double eps = 1e-9;

  Rows t(m, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b_in[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a_in[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = sign * b_in[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  auto pivot = [&](std::size_t row, std::size_t col) {
    const double p = t[row][col];
    for (auto& v : t[row]) v /= p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row) continue;
      const double f = t[r][col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < cols; ++k) t[r][k] -= f * t[row][k];
    }
    basis[row] = col;
  };

  // Minimizes cost'x over the columns allowed by `allowed`; false when unbounded.
  auto run = [&](const std::vector<double>& cost, std::size_t allowed) {
    for (int guard = 0; guard < 100000; ++guard) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < allowed && enter == cols; ++j) {
        double reduced = cost[j];
        for (std::size_t r = 0; r < m; ++r) reduced -= cost[basis[r]] * t[r][j];
        if (reduced < -eps) enter = j;
      }
      if (enter == cols) return true;
      std::size_t leave = m;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        if (t[r][enter] > eps) {
          const double ratio = t[r][cols - 1] / t[r][enter];
          if (ratio < best_ratio - 1e-12 ||
              (std::abs(ratio - best_ratio) <= 1e-12 && leave < m && basis[r] < basis[leave])) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
    return false;
  };

  std::vector<double> phase1(cols - 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1.0;
  run(phase1, n + m);
  double infeas = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] >= n) infeas += t[r][cols - 1];
  if (infeas > 1e-7) return std::nullopt;
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t[r][j]) > 1e-9) {
        pivot(r, j);
        break;
      }
    }
  }

  std::vector<double> phase2(cols - 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!run(phase2, n)) return std::nullopt;
  double obj = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) obj += c[basis[r]] * t[r][cols - 1];
  return obj;
}

}  // namespace oracle
