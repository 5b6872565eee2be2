// SPDX-License-Identifier: Apache-2.0
#include "adascale/normal_solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "adascale/errors.hpp"

namespace adascale {

Vector solve_direct(const DenseMatrix& a, std::span<const double> d, std::span<const double> b) {
  if (b.size() != a.rows()) {
    throw DimensionError("solve_direct: rhs has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(a.rows()));
  }
  const LowerTriangular l = cholesky_factor(scaled_gram(a, d));
  Vector w = cholesky_solve(l, b);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int pass = 0; pass < direct_refinement_passes; ++pass) {
    const Vector correction = cholesky_solve(l, normal_residual(a, d, w, b));
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += correction[i];
    if (norm_inf(correction) <= eps * norm_inf(w)) break;
  }
  return w;
}

WoodburyBasis prepare_woodbury(const DenseMatrix& a) {
  LowerTriangular factor = cholesky_factor(gram(a));
  DenseMatrix y(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Vector yk = cholesky_solve(factor, a.column(k));
    std::copy(yk.begin(), yk.end(), y.column(k).begin());
  }
  return {std::move(factor), std::move(y)};
}

AugWorkspace init_workspace(const WoodburyBasis& basis, std::span<const double> b) {
  const std::size_t m = basis.y.rows();
  const std::size_t n = basis.y.cols();
  if (b.size() != m) {
    throw DimensionError("init_workspace: rhs has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(m));
  }
  AugWorkspace ws;
  ws.cols = DenseMatrix(m, n + 1);
  const auto src = basis.y.data();
  std::copy(src.begin(), src.end(), ws.cols.data().begin());
  const Vector x0 = cholesky_solve(basis.gram_factor, b);
  std::copy(x0.begin(), x0.end(), ws.cols.column(n).begin());
  ws.inner.assign(n + 1, 0.0);
  ws.v_scratch.assign(m, 0.0);
  ws.step = 0;
  return ws;
}

namespace sweep_kernels {

void check_step(const AugWorkspace& ws, const DenseMatrix& a, std::span<const double> d,
                std::size_t l) {
  if (a.rows() != ws.m() || a.cols() != ws.n() || d.size() != ws.n()) {
    throw DimensionError("rank-one step: A, d and workspace shapes disagree");
  }
  if (l >= ws.n()) {
    throw PreconditionError("rank-one step " + std::to_string(l) + " out of range for n=" +
                            std::to_string(ws.n()));
  }
  if (ws.step != l) {
    throw PreconditionError("rank-one step " + std::to_string(l) +
                            " requested but workspace has completed " + std::to_string(ws.step));
  }
}

void load_update_vector(AugWorkspace& ws, const DenseMatrix& a, double d_l, std::size_t l) {
  const auto al = a.column(l);
  const double scale = d_l - 1.0;
  for (std::size_t i = 0; i < al.size(); ++i) ws.v_scratch[i] = al[i] * scale;
}

void inner_products(AugWorkspace& ws, std::size_t first, std::size_t last) {
  for (std::size_t k = first; k < last; ++k) ws.inner[k] = dot_tree(ws.v_scratch, ws.cols.column(k));
}

bool is_singular_denominator(const AugWorkspace& ws, std::size_t l) {
  const double denom = 1.0 + ws.inner[l];
  return std::abs(denom) <= 1e-12 * (1.0 + std::abs(ws.inner[l]));
}

double update_denominator(const AugWorkspace& ws, std::size_t l) {
  if (is_singular_denominator(ws, l)) {
    throw SingularUpdate("rank-one step " + std::to_string(l) + ": 1 + v'y = " +
                         std::to_string(1.0 + ws.inner[l]));
  }
  return 1.0 + ws.inner[l];
}

void update_columns(AugWorkspace& ws, std::size_t l, double denom, std::size_t first,
                    std::size_t last) {
  const auto pivot = std::span<const double>(ws.cols.column(l));
  for (std::size_t k = first; k < last; ++k) {
    const double coef = ws.inner[k] / denom;
    auto col = ws.cols.column(k);
    for (std::size_t i = 0; i < col.size(); ++i) col[i] -= coef * pivot[i];
  }
}

}  // namespace sweep_kernels

void rank_one_step(AugWorkspace& ws, const DenseMatrix& a, std::span<const double> d,
                   std::size_t l) {
  namespace k = sweep_kernels;
  k::check_step(ws, a, d, l);
  if (d[l] == 1.0) {
    ws.step = l + 1;
    return;
  }
  const std::size_t ncols = ws.n() + 1;
  k::load_update_vector(ws, a, d[l], l);
  k::inner_products(ws, l, ncols);
  const double denom = k::update_denominator(ws, l);
  k::update_columns(ws, l, denom, l + 1, ncols);
  ws.step = l + 1;
}

AugWorkspace run_woodbury(const WoodburyBasis& basis, const DenseMatrix& a,
                          std::span<const double> d, std::span<const double> b) {
  for (double v : d) {
    if (!(v > 0.0)) throw DomainError("solve_woodbury: scaling entries must be positive");
  }
  AugWorkspace ws = init_workspace(basis, b);
  for (std::size_t l = 0; l < ws.n(); ++l) rank_one_step(ws, a, d, l);
  return ws;
}

Vector solve_woodbury(const WoodburyBasis& basis, const DenseMatrix& a, std::span<const double> d,
                      std::span<const double> b) {
  const AugWorkspace ws = run_woodbury(basis, a, d, b);
  const auto x = ws.x_column();
  return Vector(x.begin(), x.end());
}

Vector replay_cascade(const WoodburyBasis& basis, const AugWorkspace& done, const DenseMatrix& a,
                      std::span<const double> d, std::span<const double> r) {
  const std::size_t m = done.m(), n = done.n();
  if (a.rows() != m || a.cols() != n || d.size() != n || r.size() != m) {
    throw DimensionError("replay_cascade: shape mismatch");
  }
  if (done.step != n) throw PreconditionError("replay_cascade: cascade not complete");
  Vector x = cholesky_solve(basis.gram_factor, r);
  Vector v(m);
  for (std::size_t l = 0; l < n; ++l) {
    if (d[l] == 1.0) continue;
    const auto a_l = a.column(l);
    for (std::size_t i = 0; i < m; ++i) v[i] = a_l[i] * (d[l] - 1.0);
    const auto pivot = done.cols.column(l);
    const double denom = 1.0 + dot_tree(v, pivot);
    const double coef = dot_tree(v, x) / denom;
    for (std::size_t i = 0; i < m; ++i) x[i] -= coef * pivot[i];
  }
  return x;
}

Vector normal_residual(const DenseMatrix& a, std::span<const double> d, std::span<const double> w,
                       std::span<const double> rhs) {
  if (d.size() != a.cols() || w.size() != a.rows() || rhs.size() != a.rows()) {
    throw DimensionError("normal_residual: shape mismatch");
  }
  Vector t = mat_t_vec(a, w);
  for (std::size_t j = 0; j < t.size(); ++j) t[j] *= d[j];
  Vector r = mat_vec(a, t);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
  return r;
}

}  // namespace adascale
