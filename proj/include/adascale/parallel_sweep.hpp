// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adascale/linalg.hpp"
#include "adascale/normal_solvers.hpp"

namespace adascale {

/// Half-open column range [first, last).
struct ColumnRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last > first ? last - first : 0; }
  bool operator==(const ColumnRange&) const = default;
};

/// Assignment of the active workspace columns of one step to workers. Each
/// worker owns one contiguous range per phase; trailing workers may be idle.
/// Phase 1 (inner products) covers the pivot column l through the x column;
/// phase 2 (column updates) covers l + 1 through the x column.
struct SweepPlan {
  std::size_t workers = 1;
  std::size_t step = 0;
  std::vector<ColumnRange> inner_phase;
  std::vector<ColumnRange> update_phase;

  static constexpr std::size_t phase_barriers = 2;

  bool operator==(const SweepPlan&) const = default;
};

/// Read-only parameters of one step, published before the workers touch
/// the workspace and rebuilt between steps.
struct ParamContext {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t step = 0;
  double d_step = 1.0;
  const DenseMatrix* a = nullptr;
  AugWorkspace* ws = nullptr;
};

/// Splits the active columns of step l into ceil(active / workers)-sized
/// contiguous ranges. `ncols` is the number of Y columns (n); the x column
/// index is ncols. Depends only on the arguments.
SweepPlan column_partition(std::size_t ncols, std::size_t workers, std::size_t l);

/// 0 means all hardware threads.
std::size_t resolve_workers(std::size_t requested);

/// One rank-one step executed by `workers` OpenMP threads. The workspace
/// ends up bitwise identical to rank_one_step(ws, a, d, l).
void parallel_sweep(AugWorkspace& ws, const DenseMatrix& a, std::span<const double> d,
                    std::size_t l, std::size_t workers);

/// solve_woodbury with every step run by parallel_sweep's kernels inside a
/// single parallel region, so the thread team is formed once per solve.
/// Bitwise identical to solve_woodbury for every worker count.
Vector solve_woodbury_parallel(const WoodburyBasis& basis, const DenseMatrix& a,
                               std::span<const double> d, std::span<const double> b,
                               std::size_t workers);

/// Parallel counterpart of run_woodbury.
AugWorkspace run_woodbury_parallel(const WoodburyBasis& basis, const DenseMatrix& a,
                                   std::span<const double> d, std::span<const double> b,
                                   std::size_t workers);

}  // namespace adascale
