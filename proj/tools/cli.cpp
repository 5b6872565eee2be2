// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>

#include "adascale/errors.hpp"
#include "adascale/lp_model.hpp"
#include "adascale/normal_solvers.hpp"
#include "adascale/parallel_sweep.hpp"
#include "adascale/pdas.hpp"
#include "adascale/random.hpp"
#include "adascale/trace_io.hpp"

namespace adascale::cli {

namespace {

/// A flag value that failed validation; reported as one line, exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveArgs {
  std::string input;
  std::string output;
  std::string backend = "woodbury";
  double rho = 0.9;
  std::optional<double> gap_tol;
  long long max_iter = 500;
  long long workers = 1;
  std::string trace;
  std::string trace_format = "csv";
};

struct GenArgs {
  long long m = 0;
  long long n = 0;
  std::uint64_t seed = 1;
  std::string output;
};

struct BenchArgs {
  std::string grid = "32x64,64x128";
  std::string workers = "1";
  std::string backends = "direct,woodbury";
  std::uint64_t seed = 1;
  long long max_iter = 500;
};

struct CheckArgs {
  std::string seeds = "1..50";
  std::optional<long long> m;
  std::optional<long long> n;
  double z_threshold = 1e-9;
  double backend_threshold = 1e-8;
  long long workers = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

long long parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": \"" + text + "\" is not an integer");
  }
  if (used != text.size() || v < 0) {
    throw UsageError(what + ": \"" + text + "\" is not a non-negative integer");
  }
  return v;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(static_cast<std::uint64_t>(parse_count(part, "--seeds")));
      continue;
    }
    const auto lo = parse_count(part.substr(0, dots), "--seeds");
    const auto hi = parse_count(part.substr(dots + 2), "--seeds");
    if (hi < lo) throw UsageError("--seeds: empty range \"" + part + "\"");
    for (long long s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  }
  if (seeds.empty()) throw UsageError("--seeds: no seeds given");
  return seeds;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_grid(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (const auto& part : split(text, ',')) {
    const auto x = part.find('x');
    if (x == std::string::npos) throw UsageError("--grid: \"" + part + "\" is not of the form MxN");
    const auto m = parse_count(part.substr(0, x), "--grid");
    const auto n = parse_count(part.substr(x + 1), "--grid");
    if (m < 1 || m >= n) throw UsageError("--grid: cell " + part + " needs 1 <= m < n");
    cells.emplace_back(m, n);
  }
  if (cells.empty()) throw UsageError("--grid: no cells given");
  return cells;
}

Backend backend_flag(const std::string& name) {
  auto b = parse_backend(name);
  if (!b) throw UsageError("backend must be direct or woodbury, got \"" + name + "\"");
  return *b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

double dot(const Vector& u, const Vector& v) {
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) r += u[i] * v[i];
  return r;
}

int exit_code_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return exit_ok;
    case SolveStatus::iter_limit: return exit_iter_limit;
    case SolveStatus::unbounded:
    case SolveStatus::numerical_breakdown: return exit_breakdown;
  }
  return exit_breakdown;
}

int run_solve(const SolveArgs& a, std::ostream& out) {
  if (!(a.rho > 0.0 && a.rho < 1.0)) throw UsageError("rho must be in (0,1)");
  if (a.gap_tol && !(*a.gap_tol > 0.0)) throw UsageError("gap-tol must be positive");
  if (a.trace_format != "csv" && a.trace_format != "json") {
    throw UsageError("trace-format must be csv or json");
  }
  SolveOptions opts;
  opts.rho = a.rho;
  opts.gap_tol = a.gap_tol;
  opts.max_iter = static_cast<std::size_t>(a.max_iter);
  opts.backend = backend_flag(a.backend);
  opts.workers = static_cast<std::size_t>(a.workers);

  ProblemFile file;
  try {
    file = parse_problem(read_file(a.input));
    file.lp = validate(std::move(file.lp));
  } catch (const Error& e) {
    throw UsageError(a.input + ": " + e.what());
  }
  if (!file.start) throw UsageError(a.input + ": no \"start\" point; generate one with `gen`");

  SolveResult res;
  try {
    res = solve_lp(file.lp, *file.start, opts);
  } catch (const Error& e) {
    throw UsageError(a.input + ": " + e.what());
  }

  const std::size_t fallbacks = static_cast<std::size_t>(std::count_if(
      res.trace.begin(), res.trace.end(), [](const TraceRecord& r) { return r.fallback; }));
  out << "status: " << to_string(res.status) << "\n";
  out << "objective: " << format_double(dot(file.lp.c, res.point.x)) << "\n";
  out << "gap: " << format_double(duality_gap(res.point)) << "\n";
  out << "iterations: " << res.iterations() << "\n";
  if (fallbacks > 0) out << "direct fallbacks: " << fallbacks << "\n";
  if (!res.message.empty()) out << "note: " << res.message << "\n";

  if (!a.trace.empty()) {
    write_file(a.trace, a.trace_format == "csv" ? trace_to_csv(res.trace) : trace_to_json(res.trace));
  }
  if (!a.output.empty()) write_file(a.output, serialize_problem(file.lp, res.point));
  return exit_code_for(res.status);
}

int run_gen(const GenArgs& a, std::ostream& out) {
  if (a.m < 1 || a.m >= a.n) throw UsageError("gen needs 1 <= m < n");
  auto [lp, start] = gen_random_feasible(static_cast<std::size_t>(a.m),
                                         static_cast<std::size_t>(a.n), a.seed);
  const std::string text = serialize_problem(lp, start);
  if (a.output.empty()) {
    out << text;
  } else {
    write_file(a.output, text);
  }
  return exit_ok;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
  const auto grid = parse_grid(a.grid);
  std::vector<std::size_t> workers;
  for (const auto& w : split(a.workers, ',')) {
    workers.push_back(static_cast<std::size_t>(parse_count(w, "--workers")));
  }
  if (workers.empty()) throw UsageError("--workers: no worker counts given");
  std::vector<Backend> backends;
  for (const auto& b : split(a.backends, ',')) backends.push_back(backend_flag(b));

  out << "m,n,backend,workers,iterations,status,ms_per_iter\n";
  for (const auto& [m, n] : grid) {
    auto [lp, start] = gen_random_feasible(m, n, a.seed);
    for (Backend backend : backends) {
      for (std::size_t w : workers) {
        SolveOptions opts;
        opts.backend = backend;
        opts.workers = w;
        opts.max_iter = static_cast<std::size_t>(a.max_iter);
        std::string iterations = "NaN";
        std::string status = "Failed";
        std::string per_iter = "NaN";
        try {
          const SolveResult res = solve_lp(lp, start, opts);
          double total = 0.0;
          for (const auto& r : res.trace) total += r.millis;
          iterations = std::to_string(res.iterations());
          status = std::string(to_string(res.status));
          if (res.iterations() > 0) per_iter = format_double(total / res.iterations());
        } catch (const Error&) {
        }
        out << m << ',' << n << ',' << to_string(backend) << ',' << w << ',' << iterations << ','
            << status << ',' << per_iter << "\n";
      }
    }
  }
  return exit_ok;
}

int run_check(const CheckArgs& a, std::ostream& out) {
  if (!(a.z_threshold > 0.0) || !std::isfinite(a.z_threshold)) {
    throw UsageError("z-threshold must be a positive number");
  }
  if (!(a.backend_threshold > 0.0) || !std::isfinite(a.backend_threshold)) {
    throw UsageError("backend-threshold must be a positive number");
  }
  if (a.m && *a.m < 1) throw UsageError("m must be at least 1");
  if (a.n && *a.n < 1) throw UsageError("n must be at least 1");
  if (a.m && a.n && *a.m > *a.n) throw UsageError("check needs m <= n");
  const auto seeds = parse_seeds(a.seeds);
  const auto workers = static_cast<std::size_t>(a.workers);

  {
    const DenseMatrix hand = DenseMatrix::from_rows({{2.0}});
    const Vector d{3.0};
    out << "hand-verified Z-residual (A=[[2]], d=(3)): " << format_double(z_inverse_check(hand, d))
        << "\n";
  }

  auto pick_sizes = [&](Rng& rng, std::size_t max_m, std::size_t max_n) {
    std::size_t m = a.m ? static_cast<std::size_t>(*a.m)
                        : static_cast<std::size_t>(rng.integer(1, max_m));
    std::size_t n = a.n ? static_cast<std::size_t>(*a.n)
                        : static_cast<std::size_t>(rng.integer(std::min(m, max_n), max_n));
    if (n < m) throw UsageError("check needs m <= n");
    return std::pair{m, n};
  };

  double worst_z = 0.0;
  double worst_gap = 0.0;
  std::vector<std::string> failures;
  for (std::uint64_t seed : seeds) {
    Rng rng(seed);
    auto [zm, zn] = pick_sizes(rng, 5, 8);
    const DenseMatrix za = random_full_rank(zm, zn, rng);
    Vector zd(zn);
    for (auto& v : zd) v = rng.uniform(0.5, 2.0) / rng.uniform(0.5, 2.0);
    const double z_res = z_inverse_check(za, zd);
    worst_z = std::max(worst_z, z_res);
    if (!(z_res <= a.z_threshold)) {
      failures.push_back("seed " + std::to_string(seed) + ": Z-residual " + format_double(z_res));
    }

    auto [m, n] = pick_sizes(rng, 40, 40);
    const DenseMatrix mat = random_full_rank(m, n, rng);
    Vector d(n);
    for (auto& v : d) v = rng.log_uniform(1e-3, 1e3);
    Vector b(m);
    for (auto& v : b) v = rng.uniform(-1.0, 1.0);
    const Vector direct = solve_direct(mat, d, b);
    double gap = std::numeric_limits<double>::infinity();
    try {
      const WoodburyBasis basis = prepare_woodbury(mat);
      const Vector wood = workers == 1 ? solve_woodbury(basis, mat, d, b)
                                       : solve_woodbury_parallel(basis, mat, d, b, workers);
      double diff = 0.0;
      for (std::size_t i = 0; i < m; ++i) diff = std::max(diff, std::abs(wood[i] - direct[i]));
      gap = diff / (1.0 + norm_inf(direct));
    } catch (const Error&) {
    }
    worst_gap = std::max(worst_gap, gap);
    if (!(gap <= a.backend_threshold)) {
      failures.push_back("seed " + std::to_string(seed) + ": backend gap " + format_double(gap));
    }
  }

  out << "seeds checked: " << seeds.size() << "\n";
  out << "max Z-residual: " << format_double(worst_z) << " (threshold "
      << format_double(a.z_threshold) << ")\n";
  out << "max backend gap: " << format_double(worst_gap) << " (threshold "
      << format_double(a.backend_threshold) << ")\n";
  if (!failures.empty()) {
    for (const auto& f : failures) out << "FAIL " << f << "\n";
    return exit_check_failed;
  }
  out << "all checks passed\n";
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primal-dual affine scaling LP solver with a Woodbury normal-equations backend",
               "adascale"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file from its start point");
  solve_cmd->add_option("--input", solve.input, "Problem file (JSON)")->required();
  solve_cmd->add_option("--output", solve.output, "Write the problem with the final iterate");
  solve_cmd->add_option("--backend", solve.backend, "direct | woodbury");
  solve_cmd->add_option("--rho", solve.rho, "Step fraction in (0,1)");
  solve_cmd->add_option("--gap-tol", solve.gap_tol, "Stop when x's falls below this");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration limit")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--workers", solve.workers, "Sweep workers, 0 = hardware threads")
      ->envname("ADASCALE_WORKERS")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--trace", solve.trace, "Write the iteration trace here");
  solve_cmd->add_option("--trace-format", solve.trace_format, "csv | json");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random feasible problem with a start point");
  gen_cmd->add_option("--m", gen.m, "Constraints")->required();
  gen_cmd->add_option("--n", gen.n, "Variables")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--output", gen.output, "Output path (default: standard output)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time backends and worker counts on generated problems");
  bench_cmd->add_option("--grid", bench.grid, "Problem sizes MxN[,MxN...]");
  bench_cmd->add_option("--workers", bench.workers, "Worker counts, comma separated")
      ->envname("ADASCALE_WORKERS");
  bench_cmd->add_option("--backend", bench.backends, "Backends, comma separated");
  bench_cmd->add_option("--seed", bench.seed, "Generator seed");
  bench_cmd->add_option("--max-iter", bench.max_iter, "Iteration limit per solve")
      ->check(CLI::NonNegativeNumber);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Verify the Z inverse and backend agreement");
  check_cmd->add_option("--seeds", check.seeds, "Seeds, e.g. 1..50 or 1,4,9");
  check_cmd->add_option("--m", check.m, "Fix the number of rows");
  check_cmd->add_option("--n", check.n, "Fix the number of columns");
  check_cmd->add_option("--z-threshold", check.z_threshold, "Bound on |Z Zinv - I|");
  check_cmd->add_option("--backend-threshold", check.backend_threshold,
                        "Bound on the relative Woodbury/direct difference");
  check_cmd->add_option("--workers", check.workers, "Sweep workers, 0 = hardware threads")
      ->envname("ADASCALE_WORKERS")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> argv_storage{"adascale"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    msg = msg.substr(0, msg.find('\n'));
    err << "adascale: " << msg << "\n";
    return exit_usage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve, out);
    if (gen_cmd->parsed()) return run_gen(gen, out);
    if (bench_cmd->parsed()) return run_bench(bench, out);
    if (check_cmd->parsed()) return run_check(check, out);
  } catch (const UsageError& e) {
    err << "adascale: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "adascale: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace adascale::cli
