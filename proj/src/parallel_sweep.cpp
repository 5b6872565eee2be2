// SPDX-License-Identifier: Apache-2.0
#include "adascale/parallel_sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <optional>
#include <string>

#include "adascale/errors.hpp"

namespace adascale {

namespace {

ColumnRange range_for(std::size_t first, std::size_t last, std::size_t workers, std::size_t w) {
  const std::size_t active = last > first ? last - first : 0;
  const std::size_t chunk = (active + workers - 1) / workers;
  const std::size_t lo = std::min(last, first + w * chunk);
  const std::size_t hi = std::min(last, lo + chunk);
  return {lo, hi};
}

// Runs steps [first_step, last_step) with `workers` ranges spread over the
// OpenMP team. Returns the step whose denominator broke down, if any.
std::optional<std::size_t> run_steps(AugWorkspace& ws, const DenseMatrix& a,
                                     std::span<const double> d, std::size_t first_step,
                                     std::size_t last_step, std::size_t workers) {
  namespace k = sweep_kernels;
  const std::size_t ncols = ws.n() + 1;
  ParamContext ctx;
  std::optional<std::size_t> failed;

#pragma omp parallel num_threads(static_cast<int>(workers)) default(none) \
    shared(ws, a, d, ctx, failed, first_step, last_step, workers, ncols)
  {
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    const auto team = static_cast<std::size_t>(omp_get_num_threads());

    for (std::size_t l = first_step; l < last_step; ++l) {
      if (d[l] == 1.0) continue;

#pragma omp single
      {
        ctx = ParamContext{ws.m(), ws.n(), l, d[l], &a, &ws};
        k::load_update_vector(*ctx.ws, *ctx.a, ctx.d_step, ctx.step);
      }

      for (std::size_t w = tid; w < workers; w += team) {
        const ColumnRange r = range_for(ctx.step, ncols, workers, w);
        k::inner_products(*ctx.ws, r.first, r.last);
      }
#pragma omp barrier

      if (k::is_singular_denominator(*ctx.ws, ctx.step)) {
#pragma omp single nowait
        failed = ctx.step;
        break;
      }
      const double denom = 1.0 + ctx.ws->inner[ctx.step];

      for (std::size_t w = tid; w < workers; w += team) {
        const ColumnRange r = range_for(ctx.step + 1, ncols, workers, w);
        k::update_columns(*ctx.ws, ctx.step, denom, r.first, r.last);
      }
#pragma omp barrier
    }
  }
  return failed;
}

}  // namespace

SweepPlan column_partition(std::size_t ncols, std::size_t workers, std::size_t l) {
  if (workers < 1) throw PreconditionError("column_partition needs at least one worker");
  SweepPlan plan;
  plan.workers = workers;
  plan.step = l;
  const std::size_t end = ncols + 1;
  for (std::size_t w = 0; w < workers; ++w) {
    plan.inner_phase.push_back(range_for(std::min(l, end), end, workers, w));
    plan.update_phase.push_back(range_for(std::min(l + 1, end), end, workers, w));
  }
  return plan;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return static_cast<std::size_t>(std::max(1, omp_get_num_procs()));
}

void parallel_sweep(AugWorkspace& ws, const DenseMatrix& a, std::span<const double> d,
                    std::size_t l, std::size_t workers) {
  sweep_kernels::check_step(ws, a, d, l);
  workers = resolve_workers(workers);
  if (auto failed = run_steps(ws, a, d, l, l + 1, workers)) {
    throw SingularUpdate("rank-one step " + std::to_string(*failed) + ": 1 + v'y = " +
                         std::to_string(1.0 + ws.inner[*failed]));
  }
  ws.step = l + 1;
}

AugWorkspace run_woodbury_parallel(const WoodburyBasis& basis, const DenseMatrix& a,
                                   std::span<const double> d, std::span<const double> b,
                                   std::size_t workers) {
  for (double v : d) {
    if (!(v > 0.0)) throw DomainError("solve_woodbury: scaling entries must be positive");
  }
  AugWorkspace ws = init_workspace(basis, b);
  if (ws.n() == 0) return ws;
  sweep_kernels::check_step(ws, a, d, 0);
  workers = resolve_workers(workers);
  if (auto failed = run_steps(ws, a, d, 0, ws.n(), workers)) {
    throw SingularUpdate("rank-one step " + std::to_string(*failed) + ": 1 + v'y = " +
                         std::to_string(1.0 + ws.inner[*failed]));
  }
  ws.step = ws.n();
  return ws;
}

Vector solve_woodbury_parallel(const WoodburyBasis& basis, const DenseMatrix& a,
                               std::span<const double> d, std::span<const double> b,
                               std::size_t workers) {
  const AugWorkspace ws = run_woodbury_parallel(basis, a, d, b, workers);
  const auto x = ws.x_column();
  return Vector(x.begin(), x.end());
}

}  // namespace adascale
