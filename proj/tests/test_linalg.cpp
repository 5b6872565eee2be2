// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>

#include "adascale/errors.hpp"
#include "adascale/linalg.hpp"
#include "adascale/random.hpp"
#include "oracles.hpp"

using namespace adascale;

namespace {

DenseMatrix random_spd(std::size_t n, Rng& rng) {
  DenseMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) g(i, j) = rng.uniform(-1.0, 1.0);
  DenseMatrix m = gram(g);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0;
  return m;
}

}  // namespace

TEST_CASE("layout is column-contiguous") {
  DenseMatrix a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a.data().size() == 6);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto col = a.column(j);
    CHECK(col.data() == a.data().data() + j * a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) CHECK(&col[i] == &a(i, j));
  }
  CHECK(a(1, 0) == 4);
  CHECK(a.data()[1] == 4);
  CHECK_THROWS_AS(DenseMatrix::from_rows({{1, 2}, {3}}), DimensionError);
}

TEST_CASE("dot_tree examples") {
  CHECK(dot_tree(Vector{1, 2, 3, 4}, Vector{1, 1, 1, 1}) == 10.0);
  CHECK(dot_tree(Vector{5}, Vector{3}) == 15.0);
  const Vector u{1, 2, 3}, v{4, 5, 6};
  CHECK(dot_tree(u, v) == oracle::sequential_dot(u, v));
  CHECK(dot_tree(u, v) == 32.0);
  CHECK_THROWS_AS(dot_tree(Vector{1, 2}, Vector{1}), DimensionError);
  CHECK_THROWS_AS(dot_tree(Vector{}, Vector{}), DimensionError);
}

TEST_CASE("dot_tree follows the add-during-load tree") {
  // len 5 pads to 8: (p0+p4) (p1+0) (p2+0) (p3+0) -> halves
  const Vector u{1e16, 1.0, -1e16, 1.0, 1.0};
  const Vector ones(5, 1.0);
  const double p0 = 1e16 + 1.0, p1 = 1.0, p2 = -1e16, p3 = 1.0;
  const double expected = (p0 + p2) + (p1 + p3);
  CHECK(dot_tree(u, ones) == expected);
}

TEST_CASE("dot_tree matches sequential summation") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto len = static_cast<std::size_t>(rng.integer(1, 300));
    Vector iu(len), iv(len), ru(len), rv(len);
    for (std::size_t i = 0; i < len; ++i) {
      iu[i] = std::floor(rng.uniform(-100, 100));
      iv[i] = std::floor(rng.uniform(-100, 100));
      ru[i] = rng.uniform(-1, 1);
      rv[i] = rng.uniform(-1, 1);
    }
    CHECK(dot_tree(iu, iv) == oracle::sequential_dot(iu, iv));

    double abs_sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) abs_sum += std::abs(ru[i] * rv[i]);
    const double bound = 4.0 * len * std::numeric_limits<double>::epsilon() * abs_sum;
    CHECK(std::abs(dot_tree(ru, rv) - oracle::sequential_dot(ru, rv)) <= bound);
  }
}

TEST_CASE("cholesky_factor examples") {
  const LowerTriangular l = cholesky_factor(DenseMatrix::from_rows({{4, 2}, {2, 3}}));
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)));

  const LowerTriangular id = cholesky_factor(DenseMatrix::identity(3));
  CHECK(id.matrix() == DenseMatrix::identity(3));

  CHECK_THROWS_AS(cholesky_factor(DenseMatrix::from_rows({{1, 2}, {2, 1}})), NotPositiveDefinite);
  CHECK_THROWS_AS(cholesky_factor(DenseMatrix::from_rows({{1, 2}, {0, 1}})), DomainError);
  CHECK_THROWS_AS(cholesky_factor(DenseMatrix(2, 3)), DimensionError);
}

TEST_CASE("cholesky pivot threshold is relative to the largest diagonal") {
  // second pivot is 1e-13 * 1e6-scale: rounding-level, so rejected
  const DenseMatrix m = DenseMatrix::from_rows({{1e6, 1e6}, {1e6, 1e6 + 1e-7}});
  CHECK_THROWS_AS(cholesky_factor(m), NotPositiveDefinite);
  const DenseMatrix ok = DenseMatrix::from_rows({{1e6, 1e6}, {1e6, 1e6 + 1.0}});
  CHECK_NOTHROW(cholesky_factor(ok));
}

TEST_CASE("cholesky_solve examples") {
  const auto id = LowerTriangular::from_dense(DenseMatrix::identity(2));
  CHECK(cholesky_solve(id, Vector{7, -3}) == Vector{7, -3});

  const auto l = LowerTriangular::from_dense(
      DenseMatrix::from_rows({{2, 0}, {1, std::sqrt(2.0)}}));
  const Vector x = cholesky_solve(l, Vector{4, 3});
  CHECK(x[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-14));

  const auto diag = LowerTriangular::from_dense(DenseMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(cholesky_solve(diag, Vector{8, 18}) == Vector{2, 2});

  CHECK_THROWS_AS(cholesky_solve(id, Vector{1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(LowerTriangular::from_dense(DenseMatrix::from_rows({{1, 1}, {0, 1}})),
                  DomainError);
}

TEST_CASE("cholesky round trip on random SPD matrices") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 40));
    const DenseMatrix m = random_spd(n, rng);
    Vector b(n);
    for (auto& v : b) v = rng.uniform(-10, 10);

    const LowerTriangular l = cholesky_factor(m);
    // L L' reproduces M
    double recon = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += l(i, k) * l(j, k);
        recon = std::max(recon, std::abs(s - m(i, j)));
      }
    CHECK(recon <= 1e-10 * m.max_abs());

    const Vector x = cholesky_solve(l, b);
    const Vector mx = mat_vec(m, x);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(mx[i] - b[i]));
    CHECK(res <= 1e-10 * (1.0 + norm_inf(b)));
  }
}

TEST_CASE("gram examples") {
  CHECK(gram(DenseMatrix::from_rows({{1, 0, 0}, {0, 1, 0}})) == DenseMatrix::identity(2));
  CHECK(gram(DenseMatrix::from_rows({{1, 1}})) == DenseMatrix::from_rows({{2}}));
  CHECK(gram(DenseMatrix::from_rows({{1, 2}, {3, 4}})) ==
        DenseMatrix::from_rows({{5, 11}, {11, 25}}));
}

TEST_CASE("scaled_gram examples") {
  CHECK(scaled_gram(DenseMatrix::from_rows({{1, 1}}), Vector{0.5, 0.25}) ==
        DenseMatrix::from_rows({{0.75}}));
  CHECK(scaled_gram(DenseMatrix::identity(2), Vector{2, 5}) ==
        DenseMatrix::from_rows({{2, 0}, {0, 5}}));
  CHECK_THROWS_AS(scaled_gram(DenseMatrix::identity(2), Vector{1, 0}), DomainError);
  CHECK_THROWS_AS(scaled_gram(DenseMatrix::identity(2), Vector{1}), DimensionError);

  Rng rng(3);
  DenseMatrix a(4, 9);
  for (std::size_t j = 0; j < 9; ++j)
    for (std::size_t i = 0; i < 4; ++i) a(i, j) = rng.uniform(-1, 1);
  CHECK(scaled_gram(a, Vector(9, 1.0)) == gram(a));
}

TEST_CASE("gram outputs are bitwise symmetric") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = static_cast<std::size_t>(rng.integer(1, 12));
    const auto n = static_cast<std::size_t>(rng.integer(1, 30));
    DenseMatrix a(m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) a(i, j) = rng.uniform(-1, 1);
    Vector d(n);
    for (auto& v : d) v = rng.log_uniform(1e-3, 1e3);
    const DenseMatrix g = gram(a);
    const DenseMatrix sg = scaled_gram(a, d);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        CHECK(g(i, j) == g(j, i));
        CHECK(sg(i, j) == sg(j, i));
      }
  }
}

TEST_CASE("mat_vec and mat_t_vec") {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 1}});
  CHECK(mat_vec(a, Vector{0.5, 0.5}) == Vector{1.0});
  const Vector t = mat_t_vec(a, Vector{4.0 / 3.0});
  CHECK(t == Vector{4.0 / 3.0, 4.0 / 3.0});
  const Vector v{3, -1, 2};
  CHECK(mat_vec(DenseMatrix::identity(3), v) == v);
  CHECK_THROWS_AS(mat_vec(a, Vector{1}), DimensionError);
  CHECK_THROWS_AS(mat_t_vec(a, Vector{1, 2}), DimensionError);

  // inner sums use the tree order
  Rng rng(2);
  DenseMatrix b(3, 7);
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t i = 0; i < 3; ++i) b(i, j) = rng.uniform(-1, 1);
  Vector x(7);
  for (auto& e : x) e = rng.uniform(-1, 1);
  const Vector bx = mat_vec(b, x);
  for (std::size_t i = 0; i < 3; ++i) {
    Vector row(7);
    for (std::size_t j = 0; j < 7; ++j) row[j] = b(i, j);
    CHECK(bx[i] == dot_tree(row, x));
  }
}
