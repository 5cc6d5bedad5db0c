#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "internal.hpp"
#include "opx/cli.hpp"
#include "opx/error.hpp"
#include "opx/kernels.hpp"
#include "opx/ratios.hpp"

namespace opx::cli {

FamilySpec make_family(const RunConfig& cfg) {
  if (cfg.family != "custom" && !cfg.support.empty())
    throw UsageError("--support applies to custom families only");
  try {
    if (cfg.family == "chebyshev1") return FamilySpec::chebyshev1();
    if (cfg.family == "laguerre") return FamilySpec::laguerre(cfg.gamma);
    if (cfg.family == "jacobi") return FamilySpec::jacobi(cfg.gamma, cfg.delta);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (cfg.coeffs.empty()) throw UsageError("custom family needs --coeffs FILE");
  if (cfg.support.size() != 2 || !(cfg.support[0] < cfg.support[1]))
    throw UsageError("custom family needs --support a,b with a < b");
  std::ifstream in(cfg.coeffs);
  if (!in) throw UsageError("cannot read " + cfg.coeffs);
  std::string line;
  std::getline(in, line);
  std::vector<Recurrence> table;
  int expect = 1;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int n = 0;
    Recurrence r;
    if (!(row >> n >> r.c >> r.lambda) || n != expect)
      throw UsageError("bad coefficient row " + std::to_string(expect) + " in " + cfg.coeffs);
    table.push_back(r);
    ++expect;
  }
  if (table.empty()) throw UsageError("no coefficient rows in " + cfg.coeffs);
  try {
    return FamilySpec::custom(std::move(table), Support{cfg.support[0], cfg.support[1]});
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::pair<double, double> sample_interval(const FamilySpec& family) {
  const Support& s = family.support();
  const bool lo = std::isfinite(s.lower), hi = std::isfinite(s.upper);
  if (lo && hi) {
    const double pad = 0.01 * (s.upper - s.lower);
    return {s.lower + pad, s.upper - pad};
  }
  if (lo) return {s.lower + 0.05, s.lower + 10.0};
  if (hi) return {s.upper - 10.0, s.upper - 0.05};
  return {-5.0, 5.0};
}

std::pair<double, double> shifts_for(const FamilySpec& family, const RunConfig& cfg) {
  const Support& s = family.support();
  double a = 0.0, b = 0.0;
  if (std::isfinite(s.upper)) {
    a = s.upper + 1.0;
    b = s.upper + 2.0;
  } else if (std::isfinite(s.lower)) {
    a = s.lower - 1.0;
    b = s.lower - 2.0;
  } else {
    throw Error(Errc::ShiftInsideSupport, "support is the whole line; pass --shift");
  }
  if (!cfg.shifts.empty()) a = cfg.shifts[0];
  if (cfg.shifts.size() > 1) b = cfg.shifts[1];
  return {a, b};
}

std::vector<double> seeded_points(const FamilySpec& family, std::uint64_t seed, int count) {
  const auto [lo, hi] = sample_interval(family);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> pts;
  for (int i = 0; i < count; ++i) pts.push_back(dist(rng));
  return pts;
}

namespace {

struct Report {
  std::vector<Case> cases;
  Table table;
  Json summary = Json::object();
};

std::vector<double> points_for(const FamilySpec& f, const RunConfig& cfg) {
  return cfg.points.empty() ? seeded_points(f, cfg.seed, 3) : cfg.points;
}

void eval_command(const FamilySpec& f, const RunConfig& cfg, Report& rep) {
  rep.table.columns = {"n", "x", "value", "derivative"};
  const auto pts = points_for(f, cfg);
  double worst = 0.0;
  for (double x : pts) {
    const auto seq = eval_sequence(f, cfg.n_max + 1, x, true);
    for (int n = 0; n <= cfg.n_max; ++n) {
      const auto u = static_cast<std::size_t>(n);
      rep.table.rows.push_back({static_cast<double>(n), x, seq.values[u], seq.derivs[u]});
      const double prev = n > 0 ? seq.values[u - 1] : 0.0;
      const double res = x * seq.values[u] - seq.values[u + 1] - f.c(n + 1) * seq.values[u] -
                         (n > 0 ? f.lambda(n + 1) * prev : 0.0);
      worst = std::max(worst, std::abs(res) / std::max(1.0, std::abs(seq.values[u + 1])));
    }
  }
  Case c{"ttrr_residual", worst, cfg.tol.value_or(1e-12), false, ""};
  c.pass = worst <= c.tolerance;
  rep.cases.push_back(c);
}

void kernel_command(const FamilySpec& f, const RunConfig& cfg, Report& rep) {
  const double k = shifts_for(f, cfg).first;
  const KernelContext<double> ctx(f, k, cfg.n_max);
  rep.table.columns = {"n", "x", "kernel_poly", "cd_kernel"};
  for (double x : points_for(f, cfg))
    for (int n = 0; n <= cfg.n_max; ++n)
      rep.table.rows.push_back({static_cast<double>(n), x, kernel_poly(ctx, n, x), cd_kernel(ctx, n, x)});
  run_suite("kernels", f, cfg, rep.cases, rep.summary);
}

void ratio_command(const FamilySpec& f, const RunConfig& cfg, Report& rep) {
  const double k = shifts_for(f, cfg).first;
  const bool closed = f.kind() == FamilyKind::Chebyshev1 && k == 1.0;
  const KernelContext<double> ctx(f, k, cfg.n_max + 1);
  rep.table.columns = {"n", "r_up", "closed_form", "abs_diff"};
  double worst = 0.0, derived = 0.0;
  for (int n = 1; n <= cfg.n_max; ++n) {
    const double up = kernel_ratio_limit(ctx, n).r_up;
    double ref = 0.0;
    if (closed) {
      ref = 0.5 * (1.0 + 4.0 / (2.0 * n + 1.0));
      derived = std::max(derived, std::abs(up - 0.5 * (1.0 + 2.0 / (2.0 * n + 1.0))) / up);
    } else {
      ref = kernel_poly(ctx, n + 1, k, KernelBranch::CdSum) / kernel_poly(ctx, n, k, KernelBranch::CdSum);
    }
    rep.table.rows.push_back({static_cast<double>(n), up, ref, std::abs(up - ref)});
    worst = std::max(worst, std::abs(up - ref) / std::abs(ref));
  }
  rep.summary["reference"] = closed ? "closed_form_half_one_plus_4_over_2n_plus_1" : "cd_sum_limit";
  if (closed) rep.summary["half_one_plus_2_over_2n_plus_1_max_rel_diff"] = derived;
  Case c{"ratio_reference", worst, cfg.tol.value_or(1e-12), false, ""};
  c.pass = worst <= c.tolerance;
  rep.cases.push_back(c);
}

void chain_command(const RunConfig& cfg, Report& rep) {
  std::vector<double> l = cfg.l.empty() ? std::vector<double>{0.25} : cfg.l;
  if (l.size() == 1) l.assign(static_cast<std::size_t>(cfg.n_max), l[0]);
  if (static_cast<int>(l.size()) < cfg.n_max) throw UsageError("--l gives fewer than n-max values");
  const auto cs = chain_params(l, cfg.n_max);
  rep.table.columns = {"n", "l", "m", "complement_l", "complement_m"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int n = 1; n <= cfg.n_max; ++n) {
    const auto u = static_cast<std::size_t>(n);
    const double km = u < cs.complement_m.size() ? cs.complement_m[u] : nan;
    rep.table.rows.push_back({static_cast<double>(n), cs.l[u - 1], cs.m[u], cs.complement_l[u - 1], km});
  }
  rep.summary["positive"] = cs.positive;
  rep.summary["complement_positive"] = cs.complement_positive;
  rep.cases.push_back({"positive_chain", 0.0, 0.0, cs.positive, ""});
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json echo(const RunConfig& cfg) {
  Json j;
  j["family"] = cfg.family;
  j["gamma"] = cfg.gamma;
  j["delta"] = cfg.delta;
  j["shifts"] = cfg.shifts;
  j["mass0"] = cfg.mass0 ? Json(*cfg.mass0) : Json(nullptr);
  j["r0"] = cfg.r0;
  j["n_max"] = cfg.n_max;
  j["tol"] = cfg.tol ? Json(*cfg.tol) : Json(nullptr);
  j["depth"] = cfg.depth;
  j["seed"] = cfg.seed;
  j["output"] = cfg.output;
  j["suite"] = cfg.suite;
  j["coeffs"] = cfg.coeffs;
  j["support"] = cfg.support;
  j["points"] = cfg.points;
  j["l"] = cfg.l;
  return j;
}

void write_json(std::ostream& out, const RunConfig& cfg, const Report& rep, bool overall, long long ms) {
  Json j;
  j["command"] = cfg.command;
  j["config_echo"] = echo(cfg);
  if (cfg.command == "verify") j["suite"] = cfg.suite;
  Json cases = Json::array();
  for (const Case& c : rep.cases) {
    Json cj = {{"name", c.name}, {"max_residual", number(c.max_residual)}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.error.empty()) cj["error"] = c.error;
    cases.push_back(cj);
  }
  j["cases"] = cases;
  j["overall"] = overall;
  j["runtime_ms"] = ms;
  if (!rep.table.columns.empty()) {
    j["columns"] = rep.table.columns;
    Json rows = Json::array();
    for (const auto& r : rep.table.rows) {
      Json row = Json::array();
      for (double v : r) row.push_back(number(v));
      rows.push_back(row);
    }
    j["rows"] = rows;
  }
  if (!rep.summary.empty()) j["summary"] = rep.summary;
  out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  char buf[64];
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Kernel polynomials, spectral transformations and kernel-ratio continued fractions"};
  app.add_option("command", cfg.command, "eval | kernel | recover | ratio | verify | chain")
      ->required()
      ->check(CLI::IsMember({"eval", "kernel", "recover", "ratio", "verify", "chain"}));
  app.add_option("--family", cfg.family)->check(CLI::IsMember({"chebyshev1", "laguerre", "jacobi", "custom"}));
  app.add_option("--gamma", cfg.gamma);
  app.add_option("--delta", cfg.delta);
  app.add_option("--shift", cfg.shifts, "repeatable");
  auto* mass0 = app.add_option("--mass0", "Geronimus G(1); defaults to the natural value");
  app.add_option("--r0", cfg.r0);
  app.add_option("--n-max", cfg.n_max);
  auto* tol = app.add_option("--tol", "overrides every case tolerance");
  app.add_option("--depth", cfg.depth);
  app.add_option("--seed", cfg.seed)->envname("OPX_SEED");
  app.add_option("--output", cfg.output)->check(CLI::IsMember({"json", "csv"}));
  std::vector<std::string> suites = {"kernels", "quasi", "recovery", "ratios", "chains", "all"};
  app.add_option("--suite", cfg.suite)->check(CLI::IsMember(suites));
  app.add_option("--coeffs", cfg.coeffs, "CSV with header and rows n,c_n,lambda_n");
  app.add_option("--support", cfg.support, "a,b")->delimiter(',')->expected(2);
  app.add_option("--points", cfg.points, "evaluation points")->delimiter(',');
  app.add_option("--l", cfg.l, "chain sequence l_1,l_2,... (one value = constant)")->delimiter(',');

  try {
    app.parse(argc, argv);
    if (mass0->count()) cfg.mass0 = mass0->as<double>();
    if (tol->count()) cfg.tol = tol->as<double>();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Report rep;
  try {
    if (cfg.tol && !(*cfg.tol > 0.0)) throw UsageError("--tol must be positive");
    if (cfg.n_max < (cfg.command == "eval" ? 0 : 1)) throw UsageError("--n-max out of range");
    if (cfg.depth < 1) throw UsageError("--depth must be >= 1");
    if (cfg.output == "csv" && cfg.command != "eval" && cfg.command != "ratio" && cfg.command != "chain")
      throw UsageError("csv output is available for eval, ratio and chain");
    const FamilySpec family = make_family(cfg);

    try {
      if (cfg.command == "eval") eval_command(family, cfg, rep);
      else if (cfg.command == "kernel") kernel_command(family, cfg, rep);
      else if (cfg.command == "recover") run_suite("recovery", family, cfg, rep.cases, rep.summary);
      else if (cfg.command == "ratio") ratio_command(family, cfg, rep);
      else if (cfg.command == "chain") chain_command(cfg, rep);
      else if (cfg.suite == "all")
        for (const auto& s : suite_names) run_suite(s, family, cfg, rep.cases, rep.summary);
      else run_suite(cfg.suite, family, cfg, rep.cases, rep.summary);
    } catch (const Error& e) {
      rep.cases.push_back({cfg.command, std::numeric_limits<double>::infinity(), 0.0, false, e.what()});
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::sort(rep.cases.begin(), rep.cases.end(), [](const Case& a, const Case& b) { return a.name < b.name; });
  const bool overall = std::all_of(rep.cases.begin(), rep.cases.end(), [](const Case& c) { return c.pass; });
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (cfg.output == "csv") write_csv(out, rep.table);
  else write_json(out, cfg, rep, overall, static_cast<long long>(ms));
  for (const Case& c : rep.cases)
    if (!c.pass) err << "FAIL " << c.name << (c.error.empty() ? "" : ": " + c.error) << '\n';
  return overall ? 0 : 1;
}

}  // namespace opx::cli
