// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "adascale/linalg.hpp"

namespace adascale {

/// min c'x  s.t.  A x = b,  x >= 0.
struct StandardFormLP {
  DenseMatrix a;
  Vector b;
  Vector c;

  std::size_t m() const { return a.rows(); }
  std::size_t n() const { return a.cols(); }
};

/// Primal-dual iterate (x, y, s). Interior means x > 0 and s > 0 componentwise.
struct InteriorPoint {
  Vector x;
  Vector y;
  Vector s;

  bool operator==(const InteriorPoint&) const = default;
};

/// Checks 1 <= m <= n, conforming b and c, finite entries, and full row rank
/// (Cholesky of A A' must succeed). Returns the problem unchanged.
///
/// Throws DimensionError, NonFiniteEntry or RankDeficient.
StandardFormLP validate(StandardFormLP lp);

/// Primal and dual feasibility tolerance 1e-8 * (1 + |b|_inf).
double feasibility_tolerance(const StandardFormLP& lp);
double primal_infeasibility(const StandardFormLP& lp, const Vector& x);
double dual_infeasibility(const StandardFormLP& lp, const Vector& y, const Vector& s);

/// True when x > 0 and s > 0 and the point is primal/dual feasible to
/// feasibility_tolerance.
bool is_strictly_feasible(const StandardFormLP& lp, const InteriorPoint& p);

class Rng;

/// m x n matrix with entries drawn from U[-1,1], redrawn until A A' admits a
/// Cholesky factor. Throws GenerationFailure after 100 rejected draws.
DenseMatrix random_full_rank(std::size_t m, std::size_t n, Rng& rng);

/// Random full-rank instance with a strictly interior feasible point built in:
/// A ~ U[-1,1], x, s ~ U[0.5,2], y ~ U[-1,1], b = A x, c = A'y + s.
/// Requires 1 <= m < n. Same seed, same bits.
std::pair<StandardFormLP, InteriorPoint> gen_random_feasible(std::size_t m, std::size_t n,
                                                             std::uint64_t seed);

struct ProblemFile {
  StandardFormLP lp;
  std::optional<InteriorPoint> start;
};

/// Parses the JSON problem format. Throws SchemaError naming the offending
/// field, or DimensionError when array shapes disagree with m and n.
ProblemFile parse_problem(std::string_view text);
std::string serialize_problem(const StandardFormLP& lp,
                              const std::optional<InteriorPoint>& start = std::nullopt);

}  // namespace adascale
