// SPDX-License-Identifier: Apache-2.0
#include "adascale/lp_model.hpp"

#include <cmath>
#include <json.hpp>

#include "adascale/errors.hpp"
#include "adascale/random.hpp"

namespace adascale {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw NonFiniteEntry(std::string(what) + " entry " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

StandardFormLP validate(StandardFormLP lp) {
  const std::size_t m = lp.m();
  const std::size_t n = lp.n();
  if (m < 1) throw DimensionError("problem needs at least one constraint");
  if (n < m) {
    throw DimensionError("problem has m=" + std::to_string(m) + " > n=" + std::to_string(n));
  }
  if (lp.b.size() != m) throw DimensionError("b has length " + std::to_string(lp.b.size()) +
                                             ", expected m=" + std::to_string(m));
  if (lp.c.size() != n) throw DimensionError("c has length " + std::to_string(lp.c.size()) +
                                             ", expected n=" + std::to_string(n));
  require_finite(lp.a.data(), "A");
  require_finite(lp.b, "b");
  require_finite(lp.c, "c");
  try {
    (void)cholesky_factor(gram(lp.a));
  } catch (const NotPositiveDefinite& e) {
    throw RankDeficient(std::string("A does not have full row rank: ") + e.what());
  }
  return lp;
}

double feasibility_tolerance(const StandardFormLP& lp) { return 1e-8 * (1.0 + norm_inf(lp.b)); }

double primal_infeasibility(const StandardFormLP& lp, const Vector& x) {
  Vector r = mat_vec(lp.a, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lp.b[i];
  return norm_inf(r);
}

double dual_infeasibility(const StandardFormLP& lp, const Vector& y, const Vector& s) {
  Vector r = mat_t_vec(lp.a, y);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = s[j] - (lp.c[j] - r[j]);
  return norm_inf(r);
}

bool is_strictly_feasible(const StandardFormLP& lp, const InteriorPoint& p) {
  if (p.x.size() != lp.n() || p.s.size() != lp.n() || p.y.size() != lp.m()) return false;
  for (std::size_t j = 0; j < lp.n(); ++j) {
    if (!(p.x[j] > 0.0) || !(p.s[j] > 0.0)) return false;
  }
  const double tol = feasibility_tolerance(lp);
  return primal_infeasibility(lp, p.x) <= tol && dual_infeasibility(lp, p.y, p.s) <= tol;
}

DenseMatrix random_full_rank(std::size_t m, std::size_t n, Rng& rng) {
  constexpr int max_attempts = 100;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    DenseMatrix a(m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) a(i, j) = rng.uniform(-1.0, 1.0);
    try {
      (void)cholesky_factor(gram(a));
      return a;
    } catch (const NotPositiveDefinite&) {
    }
  }
  throw GenerationFailure("no full-rank matrix after 100 draws");
}

std::pair<StandardFormLP, InteriorPoint> gen_random_feasible(std::size_t m, std::size_t n,
                                                             std::uint64_t seed) {
  if (m < 1 || m >= n) {
    throw PreconditionError("gen_random_feasible needs 1 <= m < n, got m=" + std::to_string(m) +
                            ", n=" + std::to_string(n));
  }
  Rng rng(seed);
  DenseMatrix a = random_full_rank(m, n, rng);

  InteriorPoint p;
  p.x.resize(n);
  p.s.resize(n);
  p.y.resize(m);
  for (auto& v : p.x) v = rng.uniform(0.5, 2.0);
  for (auto& v : p.s) v = rng.uniform(0.5, 2.0);
  for (auto& v : p.y) v = rng.uniform(-1.0, 1.0);

  StandardFormLP lp;
  lp.b = mat_vec(a, p.x);
  lp.c = mat_t_vec(a, p.y);
  for (std::size_t j = 0; j < n; ++j) lp.c[j] += p.s[j];
  lp.a = std::move(a);
  return {std::move(lp), std::move(p)};
}

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw SchemaError(std::string("missing required field \"") + name + "\"");
  return *it;
}

std::size_t count_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw SchemaError(std::string("field \"") + name + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Vector number_array(const json& v, const std::string& name, std::size_t expected) {
  if (!v.is_array()) throw SchemaError("field \"" + name + "\" must be an array of numbers");
  if (v.size() != expected) {
    throw DimensionError("field \"" + name + "\" has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(expected));
  }
  Vector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw SchemaError("field \"" + name + "\" entry " + std::to_string(i) + " is not a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("problem file must be a JSON object");

  const std::size_t m = count_field(doc, "m");
  const std::size_t n = count_field(doc, "n");

  const json& a_rows = field(doc, "A");
  if (!a_rows.is_array()) throw SchemaError("field \"A\" must be an array of rows");
  if (a_rows.size() != m) {
    throw DimensionError("field \"A\" has " + std::to_string(a_rows.size()) +
                         " rows, expected m=" + std::to_string(m));
  }
  ProblemFile out;
  out.lp.a = DenseMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const Vector row = number_array(a_rows[i], "A[" + std::to_string(i) + "]", n);
    for (std::size_t j = 0; j < n; ++j) out.lp.a(i, j) = row[j];
  }
  out.lp.b = number_array(field(doc, "b"), "b", m);
  out.lp.c = number_array(field(doc, "c"), "c", n);

  if (auto it = doc.find("start"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("field \"start\" must be an object");
    InteriorPoint p;
    p.x = number_array(field(*it, "x"), "start.x", n);
    p.y = number_array(field(*it, "y"), "start.y", m);
    p.s = number_array(field(*it, "s"), "start.s", n);
    out.start = std::move(p);
  }
  return out;
}

std::string serialize_problem(const StandardFormLP& lp, const std::optional<InteriorPoint>& start) {
  json doc;
  doc["m"] = lp.m();
  doc["n"] = lp.n();
  json rows = json::array();
  for (std::size_t i = 0; i < lp.m(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < lp.n(); ++j) row.push_back(lp.a(i, j));
    rows.push_back(std::move(row));
  }
  doc["A"] = std::move(rows);
  doc["b"] = lp.b;
  doc["c"] = lp.c;
  if (start) doc["start"] = {{"x", start->x}, {"y", start->y}, {"s", start->s}};
  return doc.dump() + "\n";
}

}  // namespace adascale
