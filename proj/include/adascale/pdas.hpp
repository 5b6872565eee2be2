// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adascale/linalg.hpp"
#include "adascale/lp_model.hpp"
#include "adascale/normal_solvers.hpp"

namespace adascale {

enum class Backend { direct, woodbury };

std::string_view to_string(Backend b);
std::optional<Backend> parse_backend(std::string_view name);

struct NormalSolve {
  Vector w;
  /// The Woodbury solve was redone with the direct backend.
  bool fell_back = false;
  /// Correction passes replayed through the completed cascade.
  std::size_t refinements = 0;
};

/// Solves (A diag(d) A') w = rhs with the selected backend. The Woodbury
/// basis is prepared once on construction and reused by every solve.
///
/// A Woodbury solution whose residual |rhs - A D A' w|_inf exceeds
/// `residual_target` is corrected by replaying the cascade on the residual,
/// at most max_refinements times. A breakdown of the cascade, or a residual
/// still above target, redoes the solve with the direct backend.
class NormalSolver {
 public:
  static constexpr std::size_t max_refinements = 4;

  NormalSolver(const DenseMatrix& a, Backend backend, std::size_t workers = 1);

  NormalSolve solve(std::span<const double> d, std::span<const double> rhs,
                    double residual_target = std::numeric_limits<double>::infinity()) const;

  Backend backend() const { return backend_; }

 private:
  const DenseMatrix* a_;
  Backend backend_;
  std::size_t workers_;
  std::optional<WoodburyBasis> basis_;
};

/// Affine-scaling search direction with the residuals of its three defining
/// identities.
struct Directions {
  Vector dx;
  Vector dy;
  Vector ds;
  double residual_primal = 0.0;  // |A dx|_inf
  double residual_dual = 0.0;    // |ds + A'dy|_inf
  double residual_comp = 0.0;    // max_i |s_i dx_i + x_i ds_i + x_i s_i|
  bool used_fallback = false;
  std::size_t refinements = 0;
};

/// Bound on each direction residual at p: 1e-8 (1 + |x|_inf |s|_inf).
double direction_tolerance(const InteriorPoint& p);

/// x / s elementwise. Throws NotInterior unless x > 0 and s > 0.
Vector scaling_diag(const InteriorPoint& p);

/// d = x/s; (A D A') dy = A x; ds = -A'dy; dx = d*(A'dy) - x.
Directions compute_directions(const StandardFormLP& lp, const InteriorPoint& p,
                              const NormalSolver& solver);
Directions compute_directions(const StandardFormLP& lp, const InteriorPoint& p, Backend backend);

/// Step returned when no component of dx or ds is negative.
inline constexpr double cap_alpha = 1e6;

/// rho times the largest step keeping x + alpha dx and s + alpha ds
/// nonnegative, or cap_alpha when nothing blocks.
double step_length(const InteriorPoint& p, const Directions& dir, double rho);

double duality_gap(const InteriorPoint& p);

struct SolveOptions {
  double rho = 0.9;
  /// Defaults to 1e-8 (1 + |c'x0|).
  std::optional<double> gap_tol;
  std::size_t max_iter = 500;
  Backend backend = Backend::woodbury;
  /// 0 means all hardware threads.
  std::size_t workers = 1;
};

enum class SolveStatus { optimal, iter_limit, unbounded, numerical_breakdown };

std::string_view to_string(SolveStatus s);

/// State after iteration `iter` (1-based): `gap` and the objectives describe
/// the new iterate, `alpha` and the residuals the step that produced it.
struct TraceRecord {
  std::size_t iter = 0;
  double gap = 0.0;
  double alpha = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double r_primal = 0.0;
  double r_dual = 0.0;
  double r_comp = 0.0;
  double millis = 0.0;
  bool fallback = false;
};

struct SolveResult {
  InteriorPoint point;
  SolveStatus status = SolveStatus::iter_limit;
  std::vector<TraceRecord> trace;
  double initial_gap = 0.0;
  double gap_tol = 0.0;
  std::string message;

  std::size_t iterations() const { return trace.size(); }
};

/// Primal-dual affine scaling from a strictly feasible interior start.
/// Throws NotInterior for a start with a nonpositive x or s entry,
/// PreconditionError for an infeasible start and DomainError for bad
/// options. Backend failures end the run with numerical_breakdown.
SolveResult solve_lp(const StandardFormLP& lp, const InteriorPoint& start,
                     const SolveOptions& opts = {});

/// Builds Z = [[0, A', I], [A, 0, 0], [I, 0, D]] for unknowns (dx, dy, ds).
DenseMatrix z_matrix(const DenseMatrix& a, std::span<const double> d);

/// Closed-form block inverse of Z with X = (A D A')^{-1}:
///   [ D A'XA D - D   D A'X   I - D A'XA ]
///   [ X A D          X       -X A       ]
///   [ (I - D A'XA)'  -A'X    A'X A      ]
DenseMatrix z_inverse_blocks(const DenseMatrix& a, std::span<const double> d);

/// max |Z * z_inverse_blocks - I|.
double z_inverse_check(const DenseMatrix& a, std::span<const double> d);

}  // namespace adascale
