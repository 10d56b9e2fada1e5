// drsubmax command line: solve instances, run verification suites, produce
// benchmark tables. Exit codes: 0 success, 1 verification violation,
// 2 usage/config error, 3 numeric breakdown.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "drsubmax/double_greedy.hpp"
#include "drsubmax/frank_wolfe.hpp"
#include "drsubmax/instance_io.hpp"
#include "drsubmax/oracles.hpp"
#include "drsubmax/rng.hpp"
#include "drsubmax/simplex.hpp"
#include "drsubmax/solver.hpp"
#include "drsubmax/tolerances.hpp"

namespace fs = std::filesystem;
using namespace drsubmax;

namespace {

struct CommonOpts {
  std::string instance;
  std::string constraint;
  double t_s = 0.3682;
  double epsilon = 0.1;
  double delta = 0.05;
  int depth = 2;
  int children = 4;
  int triples = 24;
  bool exhaustive_mode = false;
  std::string guess_mode = "baseline";
  double oracle_value = -1.0;
  uint64_t seed = 0;
  std::string out = ".";
  std::string format = "json,csv";
  bool oracle_opt = false;
  // verify / bench
  std::string suite;
  long trials = 1000;
  std::string manifest;
};

SolveParams to_params(const CommonOpts& o) {
  SolveParams p;
  p.switch_time = o.t_s;
  p.epsilon = o.epsilon;
  p.delta = o.delta;
  p.max_depth = o.depth;
  p.children_per_node = o.children;
  p.triples_per_node = o.triples;
  p.exhaustive_mode = o.exhaustive_mode;
  p.seed = o.seed;
  if (o.guess_mode == "oracle") {
    p.guess_mode = GuessMode::Oracle;
    if (o.oracle_value < 0.0)
      throw std::invalid_argument("--guess-mode oracle requires --oracle-value");
    p.oracle_v_lower = o.oracle_value;
  } else if (o.guess_mode != "baseline") {
    throw std::invalid_argument("unknown guess mode '" + o.guess_mode + "'");
  }
  return p;
}

bool wants_format(const CommonOpts& o, const std::string& kind) {
  return ("," + o.format + ",").find("," + kind + ",") != std::string::npos;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << body;
}

// Every CSV the CLI emits starts with the normalized parameter set.
std::string params_header(const SolveReport& report) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "# params t_s=%.17g epsilon=%.17g delta=%.17g depth=%d triples=%d seed=%llu\n",
                report.switch_time, report.epsilon_used, report.delta_used, report.depth_used,
                report.triples_used, static_cast<unsigned long long>(report.seed));
  return buf;
}

std::string suite_header(const CommonOpts& opts) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# suite=%s trials=%ld seed=%llu\n", opts.suite.c_str(),
                opts.trials, static_cast<unsigned long long>(opts.seed));
  return buf;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const CommonOpts& opts) {
  if (opts.instance.empty() || opts.constraint.empty())
    throw std::invalid_argument("solve needs --instance and --constraint");
  const LoadedInstance inst = load_instance(opts.instance);
  const PackingPolytope P = load_constraint(opts.constraint);
  if (P.dimension() != inst.n)
    throw std::invalid_argument("instance and constraint dimensions disagree");

  const SolveReport report = solve(inst.F, P, to_params(opts));

  double oracle = -1.0;
  if (opts.oracle_opt) oracle = brute_force_corner_opt(inst.F, P).value;

  fs::create_directories(opts.out);
  const std::string stem = fs::path(opts.instance).stem().string();
  if (wants_format(opts, "json"))
    write_file(fs::path(opts.out) / (stem + ".report.json"),
               report_to_json(report, opts.instance, opts.constraint));
  if (wants_format(opts, "csv"))
    write_file(fs::path(opts.out) / (stem + ".summary.csv"),
               params_header(report) + csv_header() +
                   report_to_csv_row(report, opts.instance, inst.n, oracle));

  std::printf("instance=%s n=%d best=%.6g origin=%s", opts.instance.c_str(), inst.n,
              report.best_value, report.best_origin.c_str());
  if (oracle > 0.0) std::printf(" oracle=%.6g ratio=%.4f", oracle, report.best_value / oracle);
  std::printf(" nodes=%ld evals=%lld wall_ms=%.1f\n", report.node_count,
              static_cast<long long>(report.value_evals), report.wall_ms);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int verify_constants_suite(const CommonOpts& opts) {
  const ConstantsReport r = verify_constants();
  std::printf("opt coefficient %.6f in [0.4010, 0.4013]: %s\n", r.coef_opt,
              r.coef_opt_in_range ? "yes" : "NO");
  std::printf("isect drop term %.3e >= -1e-4: %s\n", r.coef_isect,
              r.coef_isect >= -1e-4 ? "yes" : "NO");
  std::printf("union drop term %.3e >= -1e-4: %s\n", r.coef_union,
              r.coef_union >= -1e-4 ? "yes" : "NO");
  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    std::string csv = suite_header(opts) + "name,value,pass\n";
    csv += "coef_opt," + format_double(r.coef_opt) + "," + (r.coef_opt_in_range ? "1" : "0") + "\n";
    csv +=
        "coef_isect," + format_double(r.coef_isect) + "," + (r.coef_isect >= -1e-4 ? "1" : "0") + "\n";
    csv +=
        "coef_union," + format_double(r.coef_union) + "," + (r.coef_union >= -1e-4 ? "1" : "0") + "\n";
    write_file(fs::path(opts.out) / "constants.csv", csv);
  }
  return r.pass ? 0 : 1;
}

DrFunction random_verify_instance(int n, Rng& rng, std::string& kind) {
  const uint64_t flavor = rng.below(3);
  if (flavor == 0) {
    kind = "quadratic";
    std::vector<RealVec> H(static_cast<size_t>(n), RealVec(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = -rng.uniform();
        H[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        H[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
      }
    RealVec h(static_cast<size_t>(n));
    for (double& v : h) v = rng.uniform();
    double corner_min = 0.0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      double quad = 0.0, lin = 0.0;
      for (int i = 0; i < n; ++i) {
        if (!(mask >> i & 1u)) continue;
        lin += h[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j)
          if (mask >> j & 1u) quad += H[static_cast<size_t>(i)][static_cast<size_t>(j)];
      }
      corner_min = std::min(corner_min, 0.5 * quad + lin);
    }
    return make_quadratic(H, h, -corner_min + 0.05);
  }
  if (flavor == 1) {
    kind = "cut";
    std::vector<CutEdge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng.uniform() < 0.5) edges.push_back({u, v, rng.uniform()});
    return multilinear_exact(make_cut_function(n, std::move(edges)));
  }
  kind = "coverage";
  CoverageSystem system;
  const int universe = n + 1;
  for (int e = 0; e < universe; ++e) system.element_weights.push_back(rng.uniform());
  system.covers.resize(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int e = 0; e < universe; ++e)
      if (rng.uniform() < 0.4) system.covers[static_cast<size_t>(u)].push_back(e);
  return multilinear_exact(make_coverage_function(n, std::move(system)));
}

int verify_bounds_suite(const CommonOpts& opts) {
  Rng rng(opts.seed ^ 0xb0u);
  long violations = 0;
  std::string csv = suite_header(opts) + "trial,kind,n,r,h,lhs,rhs,slack,holds\n";
  for (long trial = 0; trial < opts.trials; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));  // 2..6
    std::string kind;
    const DrFunction F = random_verify_instance(n, rng, kind);
    const int r = 1 + static_cast<int>(rng.below(6));  // 1..6
    const int h = 1 + static_cast<int>(rng.below(3));  // 1..3

    std::vector<double> ps;
    for (int j = 0; j < r; ++j) ps.push_back(rng.uniform());
    BoundCheck check;
    if (h == 1) {
      std::vector<Vec01> xs;
      for (int j = 0; j < r; ++j) {
        RealVec c(static_cast<size_t>(n));
        for (double& v : c) v = rng.uniform();
        xs.push_back(Vec01{std::move(c)});
      }
      check = verify_basic_bound(F, xs, ps);
    } else {
      std::vector<Vec01> blocks;
      RealVec remaining(static_cast<size_t>(n), 1.0);
      for (int b = 0; b < h; ++b) {
        RealVec part(static_cast<size_t>(n));
        for (int u = 0; u < n; ++u) {
          part[static_cast<size_t>(u)] = b + 1 == h
                                             ? remaining[static_cast<size_t>(u)]
                                             : remaining[static_cast<size_t>(u)] * rng.uniform();
          remaining[static_cast<size_t>(u)] -= part[static_cast<size_t>(u)];
        }
        blocks.push_back(Vec01{std::move(part)});
      }
      std::vector<std::vector<Vec01>> lists(static_cast<size_t>(h));
      for (int b = 0; b < h; ++b)
        for (int j = 0; j < r; ++j) {
          RealVec c(static_cast<size_t>(n));
          for (double& v : c) v = rng.uniform();
          lists[static_cast<size_t>(b)].push_back(Vec01{std::move(c)});
        }
      check = verify_general_bound(F, blocks, lists, ps);
    }
    if (!check.holds) ++violations;
    csv += std::to_string(trial) + "," + kind + "," + std::to_string(n) + "," +
           std::to_string(r) + "," + std::to_string(h) + "," + format_double(check.lhs) + "," +
           format_double(check.rhs) + "," + format_double(check.lhs - check.rhs) + "," +
           (check.holds ? "1" : "0") + "\n";
  }
  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    write_file(fs::path(opts.out) / "bounds.csv", csv);
  }
  std::printf("bounds: %ld trials, %ld violations\n", opts.trials, violations);
  return violations == 0 ? 0 : 1;
}

struct PropertyCounts {
  long checks = 0;
  long violations = 0;
};

void run_property_checks(const DrFunction& F, const std::optional<SetFunction>& set_fn,
                         long trials, Rng& rng, std::string& csv, PropertyCounts& totals) {
  const int n = F.dimension();
  auto record = [&](const char* name, bool ok, double detail) {
    ++totals.checks;
    if (!ok) ++totals.violations;
    csv += std::string(name) + "," + (ok ? "1" : "0") + "," + format_double(detail) + "\n";
  };
  auto rand_point = [&] {
    RealVec c(static_cast<size_t>(n));
    for (double& v : c) v = rng.uniform();
    return Vec01{std::move(c)};
  };

  const bool exact = F.mode() == DrFunction::Mode::Exact;
  double worst;

  worst = 0.0;
  for (long t = 0; t < trials; ++t) worst = std::min(worst, F.value(rand_point()));
  record("non_negativity", worst >= -tol::kInvariant, worst);

  if (!exact) {
    // Sampling noise is not a DR violation; for sampled instances only purity
    // and non-negativity are checkable directly.
    const Vec01 probe = rand_point();
    record("sampled_reproducibility", F.value(probe) == F.value(probe), 0.0);
    if (set_fn.has_value() && n <= 14) {
      record("value_bound", marginal_bound_check(*set_fn), set_fn->value_bound());
      record("submodular_table", is_submodular(*set_fn), 0.0);
    }
    return;
  }

  worst = 0.0;  // antitone gradient on ordered pairs
  for (long t = 0; t < trials; ++t) {
    RealVec lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
      const double a = rng.uniform(), b = rng.uniform();
      lo[static_cast<size_t>(u)] = std::min(a, b);
      hi[static_cast<size_t>(u)] = std::max(a, b);
    }
    const RealVec glo = F.gradient(Vec01{std::move(lo)});
    const RealVec ghi = F.gradient(Vec01{std::move(hi)});
    for (int u = 0; u < n; ++u)
      worst = std::min(worst, glo[static_cast<size_t>(u)] - ghi[static_cast<size_t>(u)]);
  }
  record("antitone_gradient", worst >= -1e-7, worst);

  worst = 0.0;  // F(vee)+F(wedge) >= F(psum)+F(hprod)
  for (long t = 0; t < trials; ++t) {
    const Vec01 x = rand_point(), y = rand_point();
    worst = std::min(worst, F.value(vee(x, y)) + F.value(wedge(x, y)) - F.value(psum(x, y)) -
                                F.value(hprod(x, y)));
  }
  record("lattice_inequality", worst >= -tol::kInvariant, worst);

  worst = 0.0;  // <grad(x), y> >= F(x+y) - F(x)
  for (long t = 0; t < trials; ++t) {
    const Vec01 x = rand_point();
    RealVec step(static_cast<size_t>(n)), target(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
      step[static_cast<size_t>(u)] = rng.uniform() * (1.0 - x[u]);
      target[static_cast<size_t>(u)] = x[u] + step[static_cast<size_t>(u)];
    }
    worst = std::min(worst, inner(F.gradient(x), Vec01{RealVec(step)}) -
                                (F.value(Vec01{std::move(target)}) - F.value(x)));
  }
  record("gradient_dominates_steps", worst >= -1e-7, worst);

  {
    worst = 0.0;  // composition with psum/hprod keeps finite differences antitone
    const Vec01 anchor = rand_point();
    const double fd = 1e-4;
    for (long t = 0; t < std::min(trials, 200L); ++t) {
      RealVec lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
      for (int u = 0; u < n; ++u) {
        const double a = rng.uniform() * (1.0 - 2 * fd), b = rng.uniform() * (1.0 - 2 * fd);
        lo[static_cast<size_t>(u)] = std::min(a, b);
        hi[static_cast<size_t>(u)] = std::max(a, b);
      }
      const Vec01 vlo{RealVec(lo)}, vhi{RealVec(hi)};
      for (int u = 0; u < n; ++u) {
        for (int variant = 0; variant < 2; ++variant) {
          auto g = [&](const Vec01& p) {
            return variant == 0 ? F.value(psum(p, anchor)) : F.value(hprod(p, anchor));
          };
          Vec01 lo2 = vlo, hi2 = vhi;
          lo2.set(u, vlo[u] + fd);
          hi2.set(u, vhi[u] + fd);
          worst = std::min(worst, (g(lo2) - g(vlo)) - (g(hi2) - g(vhi)));
        }
      }
    }
    record("closure_antitone", worst >= -1e-6, worst);

    worst = 0.0;  // analytic gradient vs central differences
    for (long t = 0; t < std::min(trials, 100L); ++t) {
      const Vec01 x = rand_point();
      const RealVec g = F.gradient(x);
      for (int u = 0; u < n; ++u) {
        const double lo = std::max(0.0, x[u] - 1e-5), hi = std::min(1.0, x[u] + 1e-5);
        Vec01 a = x, b = x;
        a.set(u, lo);
        b.set(u, hi);
        const double fd_u = (F.value(b) - F.value(a)) / (hi - lo);
        const double err = std::fabs(g[static_cast<size_t>(u)] - fd_u) /
                           std::max(1.0, std::fabs(g[static_cast<size_t>(u)]));
        worst = std::min(worst, 1e-4 - err);
      }
    }
    record("gradient_matches_differences", worst >= 0.0, worst);
  }

  const double witness =
      smoothness_oracle(F, static_cast<int>(std::min(trials, 500L)), rng.next_u64());
  record("smoothness_bound", witness <= F.smoothness_bound() + 1e-7,
         F.smoothness_bound() - witness);

  if (set_fn.has_value() && n <= 14) {
    record("value_bound", marginal_bound_check(*set_fn), set_fn->value_bound());
    record("submodular_table", is_submodular(*set_fn), 0.0);
  }
}

int verify_properties_suite(const CommonOpts& opts) {
  Rng rng(opts.seed ^ 0x9e5u);
  std::string csv = suite_header(opts) + "check,pass,detail\n";
  PropertyCounts totals;
  const long trials = std::max(1L, opts.trials);
  if (!opts.instance.empty()) {
    const LoadedInstance inst = load_instance(opts.instance, LoadStrictness::Permissive);
    run_property_checks(inst.F, inst.set_function, trials, rng, csv, totals);
  } else {
    for (int i = 0; i < 6; ++i) {
      std::string kind;
      const DrFunction F = random_verify_instance(3 + i % 3, rng, kind);
      run_property_checks(F, std::nullopt, trials, rng, csv, totals);
    }
  }
  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    write_file(fs::path(opts.out) / "properties.csv", csv);
  }
  std::printf("properties: %ld checks, %ld violations\n", totals.checks, totals.violations);
  return totals.violations == 0 ? 0 : 1;
}

int cmd_verify(const CommonOpts& opts) {
  if (opts.suite == "constants") return verify_constants_suite(opts);
  if (opts.suite == "bounds") return verify_bounds_suite(opts);
  if (opts.suite == "properties") return verify_properties_suite(opts);
  throw std::invalid_argument("unknown suite '" + opts.suite + "' (constants|bounds|properties)");
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
  std::string instance;
  std::string constraint;
  int param_set = 0;
  int n = 0;
  double oracle = -1.0;
  double main_value = 0.0;
  double baseline_value = 0.0;
  double dg_value = 0.0;
  double fw_value = 0.0;
  std::string status = "ok";
  int exit_code = 0;
};

int max_threads() {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("DRSUBMAX_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) cap = std::min(cap, requested);
  }
  return cap;
}

int cmd_bench(const CommonOpts& opts) {
  if (opts.manifest.empty()) throw std::invalid_argument("bench needs --manifest");
  std::ifstream in(opts.manifest);
  if (!in) throw std::invalid_argument("cannot open manifest " + opts.manifest);
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad manifest: ") + e.what());
  }
  const fs::path base = fs::path(opts.manifest).parent_path();
  std::vector<std::string> instances, constraints;
  for (const auto& item : manifest.value("instances", nlohmann::json::array()))
    instances.push_back((base / item.get<std::string>()).string());
  for (const auto& item : manifest.value("constraints", nlohmann::json::array()))
    constraints.push_back((base / item.get<std::string>()).string());
  std::vector<nlohmann::json> param_sets;
  for (const auto& item : manifest.value("params", nlohmann::json::array()))
    param_sets.push_back(item);
  if (param_sets.empty()) param_sets.push_back(nlohmann::json::object());
  if (instances.empty() || constraints.empty())
    throw std::invalid_argument("bench manifest has an empty instance or constraint list");

  std::vector<BenchRow> rows;
  for (size_t pi = 0; pi < param_sets.size(); ++pi)
    for (const std::string& inst : instances)
      for (const std::string& cons : constraints)
        rows.push_back({inst, cons, static_cast<int>(pi)});

  auto run_row = [&](BenchRow& row) {
    try {
      const LoadedInstance inst = load_instance(row.instance);
      const PackingPolytope P = load_constraint(row.constraint);
      if (P.dimension() != inst.n) throw std::invalid_argument("dimension mismatch");
      row.n = inst.n;
      CommonOpts local = opts;
      const nlohmann::json& ps = param_sets[static_cast<size_t>(row.param_set)];
      local.t_s = ps.value("t_s", opts.t_s);
      local.epsilon = ps.value("epsilon", opts.epsilon);
      local.delta = ps.value("delta", opts.delta);
      local.depth = ps.value("depth", opts.depth);
      local.triples = ps.value("triples", opts.triples);
      SolveParams params = to_params(local);
      // Per-row seed derived from the shared one; rows stay independent.
      params.seed = opts.seed ^ hash_doubles(RealVec{static_cast<double>(row.param_set)},
                                             std::hash<std::string>{}(row.instance));

      const SolveReport report = solve(inst.F, P, params);
      row.main_value = report.best_value;
      row.baseline_value = inst.F.value(measured_greedy(inst.F, P, report.delta_used));
      const LpResult roof = lp_maximize(P, {}, RealVec(static_cast<size_t>(inst.n), 1.0));
      row.dg_value = inst.F.value(box_maximize(inst.F, roof.x, report.epsilon_used));
      row.fw_value = inst.F.value(approx_local_max(inst.F, P, {}, report.delta_used).x_star);
      if (inst.n <= 20) row.oracle = brute_force_corner_opt(inst.F, P).value;
    } catch (const NumericError& e) {
      row.status = e.what();
      row.exit_code = 3;
    } catch (const std::exception& e) {
      row.status = e.what();
      row.exit_code = 2;
    }
  };

  const int workers = std::min<int>(max_threads(), static_cast<int>(rows.size()));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= rows.size()) return;
        run_row(rows[i]);
      }
    });
  for (std::thread& t : pool) t.join();

  char bench_hdr[160];
  std::snprintf(bench_hdr, sizeof bench_hdr,
                "# bench t_s=%.17g epsilon=%.17g delta=%.17g depth=%d triples=%d seed=%llu\n",
                opts.t_s, opts.epsilon, opts.delta, opts.depth, opts.triples,
                static_cast<unsigned long long>(opts.seed));
  std::string csv = bench_hdr;
  csv +=
      "instance,constraint,param_set,n,oracle,main,baseline,double_greedy,frank_wolfe,"
      "main_ratio,baseline_ratio,double_greedy_ratio,frank_wolfe_ratio,status\n";
  struct Agg {
    double sum = 0.0, min = 1e300;
    long count = 0;
    void add(double v) {
      sum += v;
      min = std::min(min, v);
      ++count;
    }
  };
  Agg agg[4];
  int exit_code = 0;
  for (const BenchRow& row : rows) {
    exit_code = std::max(exit_code, row.exit_code);
    csv += row.instance + "," + row.constraint + "," + std::to_string(row.param_set) + "," +
           std::to_string(row.n) + ",";
    csv += row.oracle >= 0.0 ? format_double(row.oracle) : "";
    const double values[4] = {row.main_value, row.baseline_value, row.dg_value, row.fw_value};
    for (double v : values) csv += "," + format_double(v);
    for (int a = 0; a < 4; ++a) {
      csv += ",";
      if (row.exit_code == 0 && row.oracle > 0.0) {
        const double ratio = values[a] / row.oracle;
        agg[a].add(ratio);
        csv += format_double(ratio);
      }
    }
    csv += "," + row.status + "\n";
  }
  std::string summary = std::string(bench_hdr) + "algorithm,mean_ratio,min_ratio,rows\n";
  const char* names[4] = {"main", "baseline", "double_greedy", "frank_wolfe"};
  for (int a = 0; a < 4; ++a) {
    summary += std::string(names[a]) + ",";
    if (agg[a].count > 0)
      summary += format_double(agg[a].sum / static_cast<double>(agg[a].count)) + "," +
                 format_double(agg[a].min);
    else
      summary += ",";
    summary += "," + std::to_string(agg[a].count) + "\n";
  }
  fs::create_directories(opts.out);
  write_file(fs::path(opts.out) / "bench_rows.csv", csv);
  write_file(fs::path(opts.out) / "bench_summary.csv", summary);
  std::printf("bench: %zu rows, worst exit %d\n", rows.size(), exit_code);
  return exit_code;
}

int cmd_vertices(const CommonOpts& opts) {
  if (opts.constraint.empty()) throw std::invalid_argument("vertices needs --constraint");
  const PackingPolytope P = load_constraint(opts.constraint);
  std::ostringstream body;
  write_vertices_csv(body, P);
  if (opts.out == "-" || opts.out.empty()) {
    std::cout << body.str();
  } else {
    write_file(opts.out, body.str());
  }
  return 0;
}

// Config file with the same keys as the long flags; explicit flags win.
void apply_config(CommonOpts& opts, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config: ") + e.what());
  }
  opts.instance = j.value("instance", opts.instance);
  opts.constraint = j.value("constraint", opts.constraint);
  opts.t_s = j.value("t-s", j.value("t_s", opts.t_s));
  opts.epsilon = j.value("epsilon", opts.epsilon);
  opts.delta = j.value("delta", opts.delta);
  opts.depth = j.value("depth", opts.depth);
  opts.children = j.value("children", opts.children);
  opts.triples = j.value("triples", opts.triples);
  opts.exhaustive_mode = j.value("exhaustive", opts.exhaustive_mode);
  opts.guess_mode = j.value("guess-mode", opts.guess_mode);
  opts.oracle_value = j.value("oracle-value", opts.oracle_value);
  opts.seed = j.value("seed", opts.seed);
  opts.out = j.value("out", opts.out);
  opts.format = j.value("format", opts.format);
  opts.oracle_opt = j.value("oracle-opt", opts.oracle_opt);
  opts.suite = j.value("suite", opts.suite);
  opts.trials = j.value("trials", opts.trials);
  opts.manifest = j.value("manifest", opts.manifest);
}

}  // namespace

int main(int argc, char** argv) {
  CommonOpts opts;

  // The config file provides defaults; flags parsed afterwards override them.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config(opts, argv[i + 1]);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
      }
    }
  }

  CLI::App app{"maximize non-negative DR-submodular objectives over packing polytopes"};
  app.require_subcommand(1);
  std::string config_dummy;
  app.add_option("--config", config_dummy, "JSON config file with the same keys as the flags");

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--instance", opts.instance, "instance file");
    cmd->add_option("--constraint", opts.constraint, "constraint file");
    cmd->add_option("--t-s", opts.t_s, "switch time in (0,1)");
    cmd->add_option("--epsilon", opts.epsilon, "guess/grid accuracy in (0,1/2)");
    cmd->add_option("--delta", opts.delta, "step accuracy in (0,1)");
    cmd->add_option("--depth", opts.depth, "recursion depth");
    cmd->add_option("--children", opts.children, "recursion children per node (0 = unlimited)");
    cmd->add_option("--triples", opts.triples, "guess triples per node (0 = full set)");
    cmd->add_flag("--exhaustive", opts.exhaustive_mode, "full enumeration, depth 1+ceil(2/eps)");
    cmd->add_option("--guess-mode", opts.guess_mode, "baseline | oracle");
    cmd->add_option("--oracle-value", opts.oracle_value, "known optimum for --guess-mode oracle");
    cmd->add_option("--seed", opts.seed, "seed recorded in outputs");
    cmd->add_option("--out", opts.out, "output directory");
    cmd->add_option("--format", opts.format, "comma list of json,csv");
    cmd->add_option("--config", config_dummy, "JSON config file (applied before flags)");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance");
  add_solver_flags(solve_cmd);
  solve_cmd->add_flag("--oracle-opt", opts.oracle_opt,
                      "also compute the brute-force corner optimum (n <= 20)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", opts.suite, "constants | bounds | properties")->required();
  verify_cmd->add_option("--trials", opts.trials, "randomized trials");
  verify_cmd->add_option("--seed", opts.seed, "suite seed");
  verify_cmd->add_option("--instance", opts.instance, "instance file (properties suite)");
  verify_cmd->add_option("--out", opts.out, "output directory");
  verify_cmd->add_option("--config", config_dummy, "JSON config file (applied before flags)");

  CLI::App* bench_cmd = app.add_subcommand("bench", "run an instance/param matrix");
  add_solver_flags(bench_cmd);
  bench_cmd->add_option("--manifest", opts.manifest, "JSON manifest of instances x params");

  CLI::App* vertices_cmd = app.add_subcommand("vertices", "export polytope vertices as CSV");
  vertices_cmd->add_option("--constraint", opts.constraint, "constraint file")->required();
  vertices_cmd->add_option("--out", opts.out, "output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(opts);
    if (*verify_cmd) return cmd_verify(opts);
    if (*bench_cmd) return cmd_bench(opts);
    if (*vertices_cmd) return cmd_vertices(opts);
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
