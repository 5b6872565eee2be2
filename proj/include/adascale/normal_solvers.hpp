// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

#include "adascale/linalg.hpp"

namespace adascale {

/// Iteration-invariant part of the Woodbury backend: the Cholesky factor of
/// A A' and Y = (A A')^{-1} A, one column per column of A.
struct WoodburyBasis {
  LowerTriangular gram_factor;
  DenseMatrix y;
};

/// Augmented storage for the rank-one cascade.
///
/// `cols` holds n + 1 columns of length m: columns 0..n-1 are the evolving
/// y_{l,k} and column n is the evolving solution x_l. `inner` holds one inner
/// product v_l' col_k per column for the current step, and `v_scratch` the
/// current update vector v_l = a_l (d_l - 1). V itself is never stored.
///
/// Steps are numbered from 0. `step` counts completed steps; once step l has
/// run, columns 0..l are frozen and never read again.
struct AugWorkspace {
  DenseMatrix cols;
  Vector inner;
  Vector v_scratch;
  std::size_t step = 0;

  std::size_t m() const { return cols.rows(); }
  /// Number of Y columns (the x column sits at index n()).
  std::size_t n() const { return cols.cols() - 1; }
  std::span<const double> x_column() const { return cols.column(n()); }
  /// Scalars held by the workspace: m(n+1) + (n+1) + m.
  std::size_t scalar_count() const {
    return cols.data().size() + inner.size() + v_scratch.size();
  }
};

inline constexpr int direct_refinement_passes = 3;

/// Solves (A diag(d) A') w = b by forming the product and factoring it, then
/// corrects w with up to direct_refinement_passes passes of
/// w += L^{-T} L^{-1} (b - A D A' w), the residual taken without forming the
/// product. Passes stop once the correction is at rounding level.
Vector solve_direct(const DenseMatrix& a, std::span<const double> d, std::span<const double> b);

/// Factors A A' and computes Y. Throws NotPositiveDefinite for rank-deficient A.
WoodburyBasis prepare_woodbury(const DenseMatrix& a);

/// Copies Y into the workspace and sets the x column to (A A')^{-1} b.
AugWorkspace init_workspace(const WoodburyBasis& basis, std::span<const double> b);

/// Applies rank-one update l (0-based) to the workspace. Requires
/// ws.step == l. A step with d[l] == 1 exactly is skipped. Throws
/// SingularUpdate when |1 + v_l' y_{l-1,l}| <= 1e-12 (1 + |v_l' y_{l-1,l}|).
void rank_one_step(AugWorkspace& ws, const DenseMatrix& a, std::span<const double> d,
                   std::size_t l);

/// Runs the full cascade serially and returns x_n, the solution of
/// (A diag(d) A') w = b. Cost is O(m n^2) per call.
Vector solve_woodbury(const WoodburyBasis& basis, const DenseMatrix& a, std::span<const double> d,
                      std::span<const double> b);

/// Same cascade as solve_woodbury, returning the completed workspace.
AugWorkspace run_woodbury(const WoodburyBasis& basis, const DenseMatrix& a,
                          std::span<const double> d, std::span<const double> b);

/// Applies the inverse held by a completed cascade to another right-hand
/// side in O(m n): the frozen pivot columns and A determine every step.
Vector replay_cascade(const WoodburyBasis& basis, const AugWorkspace& done, const DenseMatrix& a,
                      std::span<const double> d, std::span<const double> r);

/// rhs - A diag(d) A' w, without forming the product.
Vector normal_residual(const DenseMatrix& a, std::span<const double> d, std::span<const double> w,
                       std::span<const double> rhs);

/// Per-column pieces of one rank-one step. The serial step and the parallel
/// sweep both go through these, which is what makes them bitwise equal.
namespace sweep_kernels {

void check_step(const AugWorkspace& ws, const DenseMatrix& a, std::span<const double> d,
                std::size_t l);

/// v_scratch <- a_l (d_l - 1)
void load_update_vector(AugWorkspace& ws, const DenseMatrix& a, double d_l, std::size_t l);

/// inner[k] <- dot_tree(v_scratch, col_k) for k in [first, last).
void inner_products(AugWorkspace& ws, std::size_t first, std::size_t last);

/// 1 + inner[l]; throws SingularUpdate when it is too close to zero.
double update_denominator(const AugWorkspace& ws, std::size_t l);
bool is_singular_denominator(const AugWorkspace& ws, std::size_t l);

/// col_k <- col_k - (inner[k] / denom) col_l for k in [first, last).
/// The range must not include l.
void update_columns(AugWorkspace& ws, std::size_t l, double denom, std::size_t first,
                    std::size_t last);

}  // namespace sweep_kernels

}  // namespace adascale
