// SPDX-License-Identifier: Apache-2.0
#include "adascale/pdas.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "adascale/errors.hpp"
#include "adascale/parallel_sweep.hpp"

namespace adascale {

std::string_view to_string(Backend b) { return b == Backend::direct ? "direct" : "woodbury"; }

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "direct") return Backend::direct;
  if (name == "woodbury") return Backend::woodbury;
  return std::nullopt;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "Optimal";
    case SolveStatus::iter_limit: return "IterLimit";
    case SolveStatus::unbounded: return "Unbounded";
    case SolveStatus::numerical_breakdown: return "NumericalBreakdown";
  }
  return "?";
}

NormalSolver::NormalSolver(const DenseMatrix& a, Backend backend, std::size_t workers)
    : a_(&a), backend_(backend), workers_(resolve_workers(workers)) {
  if (backend_ == Backend::woodbury) basis_ = prepare_woodbury(a);
}

NormalSolve NormalSolver::solve(std::span<const double> d, std::span<const double> rhs,
                                double residual_target) const {
  NormalSolve out;
  if (backend_ == Backend::direct) {
    out.w = solve_direct(*a_, d, rhs);
    return out;
  }
  try {
    const AugWorkspace ws = workers_ == 1 ? run_woodbury(*basis_, *a_, d, rhs)
                                          : run_woodbury_parallel(*basis_, *a_, d, rhs, workers_);
    out.w.assign(ws.x_column().begin(), ws.x_column().end());
    Vector r = normal_residual(*a_, d, out.w, rhs);
    while (norm_inf(r) > residual_target && out.refinements < max_refinements) {
      const Vector correction = replay_cascade(*basis_, ws, *a_, d, r);
      for (std::size_t i = 0; i < out.w.size(); ++i) out.w[i] += correction[i];
      r = normal_residual(*a_, d, out.w, rhs);
      ++out.refinements;
    }
    if (norm_inf(r) <= residual_target) return out;
  } catch (const SingularUpdate&) {
  }
  out.w = solve_direct(*a_, d, rhs);
  out.fell_back = true;
  return out;
}

double direction_tolerance(const InteriorPoint& p) {
  return 1e-8 * (1.0 + norm_inf(p.x) * norm_inf(p.s));
}

Vector scaling_diag(const InteriorPoint& p) {
  if (p.x.size() != p.s.size()) throw DimensionError("scaling_diag: x and s lengths differ");
  Vector d(p.x.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(p.x[i] > 0.0) || !(p.s[i] > 0.0)) {
      throw NotInterior("point is not interior at component " + std::to_string(i));
    }
    d[i] = p.x[i] / p.s[i];
  }
  return d;
}

Directions compute_directions(const StandardFormLP& lp, const InteriorPoint& p,
                              const NormalSolver& solver) {
  const Vector d = scaling_diag(p);
  const Vector rhs = mat_vec(lp.a, p.x);

  Directions dir;
  NormalSolve sol = solver.solve(d, rhs, 0.1 * direction_tolerance(p));
  dir.dy = std::move(sol.w);
  dir.used_fallback = sol.fell_back;
  dir.refinements = sol.refinements;
  const Vector at_dy = mat_t_vec(lp.a, dir.dy);
  const std::size_t n = lp.n();
  dir.ds.resize(n);
  dir.dx.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    dir.ds[j] = -at_dy[j];
    dir.dx[j] = d[j] * at_dy[j] - p.x[j];
  }

  dir.residual_primal = norm_inf(mat_vec(lp.a, dir.dx));
  const Vector at_dy2 = mat_t_vec(lp.a, dir.dy);
  for (std::size_t j = 0; j < n; ++j) {
    dir.residual_dual = std::max(dir.residual_dual, std::abs(dir.ds[j] + at_dy2[j]));
    dir.residual_comp = std::max(
        dir.residual_comp, std::abs(p.s[j] * dir.dx[j] + p.x[j] * dir.ds[j] + p.x[j] * p.s[j]));
  }
  return dir;
}

Directions compute_directions(const StandardFormLP& lp, const InteriorPoint& p, Backend backend) {
  return compute_directions(lp, p, NormalSolver(lp.a, backend));
}

double step_length(const InteriorPoint& p, const Directions& dir, double rho) {
  double ratio = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    if (dir.dx[j] < 0.0) ratio = std::min(ratio, -p.x[j] / dir.dx[j]);
    if (dir.ds[j] < 0.0) ratio = std::min(ratio, -p.s[j] / dir.ds[j]);
  }
  if (!std::isfinite(ratio)) return cap_alpha;
  return std::min(cap_alpha, rho * ratio);
}

double duality_gap(const InteriorPoint& p) {
  double g = 0.0;
  for (std::size_t j = 0; j < p.x.size(); ++j) g += p.x[j] * p.s[j];
  return g;
}

namespace {

double dot(std::span<const double> u, std::span<const double> v) {
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) r += u[i] * v[i];
  return r;
}

bool all_positive_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x) && x > 0.0; });
}

}  // namespace

SolveResult solve_lp(const StandardFormLP& lp, const InteriorPoint& start,
                     const SolveOptions& opts) {
  if (!(opts.rho > 0.0 && opts.rho < 1.0)) throw DomainError("rho must be in (0,1)");
  if (opts.gap_tol && !(*opts.gap_tol > 0.0)) throw DomainError("gap_tol must be positive");
  if (start.x.size() != lp.n() || start.s.size() != lp.n() || start.y.size() != lp.m()) {
    throw DimensionError("start point does not match problem dimensions");
  }
  (void)scaling_diag(start);
  if (!is_strictly_feasible(lp, start)) {
    throw PreconditionError("start point is not primal and dual feasible");
  }

  SolveResult res;
  res.point = start;
  res.gap_tol = opts.gap_tol.value_or(1e-8 * (1.0 + std::abs(dot(lp.c, start.x))));
  double gap = duality_gap(start);
  res.initial_gap = gap;

  const NormalSolver solver(lp.a, opts.backend, opts.workers);
  InteriorPoint& p = res.point;

  for (std::size_t iter = 0;; ++iter) {
    if (gap <= res.gap_tol) {
      res.status = SolveStatus::optimal;
      break;
    }
    if (iter == opts.max_iter) {
      res.status = SolveStatus::iter_limit;
      break;
    }
    const auto t0 = std::chrono::steady_clock::now();

    Directions dir;
    try {
      dir = compute_directions(lp, p, solver);
    } catch (const Error& e) {
      res.status = SolveStatus::numerical_breakdown;
      res.message = e.what();
      break;
    }
    const double alpha = step_length(p, dir, opts.rho);
    if (alpha >= cap_alpha) {
      res.status = SolveStatus::unbounded;
      res.message = "no blocking component in the search direction";
      break;
    }

    InteriorPoint next = p;
    for (std::size_t j = 0; j < lp.n(); ++j) {
      next.x[j] += alpha * dir.dx[j];
      next.s[j] += alpha * dir.ds[j];
    }
    for (std::size_t i = 0; i < lp.m(); ++i) next.y[i] += alpha * dir.dy[i];
    if (!all_positive_finite(next.x) || !all_positive_finite(next.s)) {
      res.status = SolveStatus::numerical_breakdown;
      res.message = "iterate left the interior";
      break;
    }
    p = std::move(next);
    gap = duality_gap(p);

    TraceRecord rec;
    rec.iter = iter + 1;
    rec.gap = gap;
    rec.alpha = alpha;
    rec.primal_obj = dot(lp.c, p.x);
    rec.dual_obj = dot(lp.b, p.y);
    rec.r_primal = dir.residual_primal;
    rec.r_dual = dir.residual_dual;
    rec.r_comp = dir.residual_comp;
    rec.fallback = dir.used_fallback;
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
    res.trace.push_back(rec);
  }
  return res;
}

DenseMatrix z_matrix(const DenseMatrix& a, std::span<const double> d) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (d.size() != n) throw DimensionError("z_matrix: scaling length must equal n");
  DenseMatrix z(2 * n + m, 2 * n + m);
  const std::size_t ry = n;      // first row/column of the dy block
  const std::size_t rs = n + m;  // first row/column of the ds block
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      z(j, ry + i) = a(i, j);  // A'
      z(ry + i, j) = a(i, j);  // A
    }
    z(j, rs + j) = 1.0;
    z(rs + j, j) = 1.0;
    z(rs + j, rs + j) = d[j];
  }
  return z;
}

DenseMatrix z_inverse_blocks(const DenseMatrix& a, std::span<const double> d) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (d.size() != n) throw DimensionError("z_inverse_blocks: scaling length must equal n");

  // X = (A D A')^{-1}, one column per unit right-hand side
  DenseMatrix x(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    Vector e(m, 0.0);
    e[k] = 1.0;
    const Vector col = solve_direct(a, d, e);
    std::copy(col.begin(), col.end(), x.column(k).begin());
  }

  // XA (m x n), A'XA (n x n)
  DenseMatrix xa(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += x(i, k) * a(k, j);
      xa(i, j) = s;
    }
  DenseMatrix atxa(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += a(k, i) * xa(k, j);
      atxa(i, j) = s;
    }

  DenseMatrix zi(2 * n + m, 2 * n + m);
  const std::size_t ry = n;
  const std::size_t rs = n + m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double eye = i == j ? 1.0 : 0.0;
      zi(i, j) = d[i] * atxa(i, j) * d[j] - (i == j ? d[i] : 0.0);
      zi(i, rs + j) = eye - d[i] * atxa(i, j);
      zi(rs + i, j) = eye - d[j] * atxa(j, i);
      zi(rs + i, rs + j) = atxa(i, j);
    }
    for (std::size_t k = 0; k < m; ++k) {
      zi(i, ry + k) = d[i] * xa(k, i);  // D A'X = (X A D)'
      zi(ry + k, i) = xa(k, i) * d[i];
      zi(ry + k, rs + i) = -xa(k, i);
      zi(rs + i, ry + k) = -xa(k, i);  // -A'X = (-X A)'
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) zi(ry + i, ry + j) = x(i, j);
  return zi;
}

double z_inverse_check(const DenseMatrix& a, std::span<const double> d) {
  const DenseMatrix z = z_matrix(a, d);
  const DenseMatrix zi = z_inverse_blocks(a, d);
  const std::size_t dim = z.rows();
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += z(i, k) * zi(k, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace adascale
