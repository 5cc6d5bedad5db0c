#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>

#include "internal.hpp"
#include "opx/error.hpp"
#include "opx/kernels.hpp"
#include "opx/moments.hpp"
#include "opx/quasi.hpp"
#include "opx/ratios.hpp"
#include "opx/transforms.hpp"

namespace opx::cli {

const std::vector<std::string> suite_names = {"kernels", "quasi", "recovery", "ratios", "chains"};

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

template <class F>
Case check(const RunConfig& cfg, std::string name, double default_tol, F&& body) {
  Case c;
  c.name = std::move(name);
  c.tolerance = cfg.tol.value_or(default_tol);
  try {
    const Outcome o = body();
    c.max_residual = o.residual;
    c.pass = o.ok && o.residual <= c.tolerance;
  } catch (const std::exception& e) {
    c.max_residual = inf;
    c.error = e.what();
  }
  return c;
}

/// Normalized Gram matrix under p -> sum_i w_i weight(x_i) p(x_i).
template <class W, class P>
double gram_off_diagonal(const GaussRule& rule, W&& weight, P&& poly, int n_max) {
  const auto top = idx(n_max);
  std::vector<std::vector<double>> vals(top + 1);
  for (std::size_t n = 0; n <= top; ++n)
    for (double x : rule.nodes) vals[n].push_back(poly(static_cast<int>(n), x));
  auto inner = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * weight(rule.nodes[i]) * vals[a][i] * vals[b][i];
    return s;
  };
  double worst = 0.0;
  for (std::size_t a = 0; a <= top; ++a)
    for (std::size_t b = 0; b < a; ++b)
      worst = std::max(worst, std::abs(inner(a, b)) / std::sqrt(std::abs(inner(a, a) * inner(b, b))));
  return worst;
}

/// |L*(x^m q)| / sum |terms| for m = 0..m_max.
template <class P>
double annihilation(const GaussRule& rule, double k, P&& q, int m_max) {
  double worst = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    double s = 0.0, size = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = rule.nodes[i];
      const double t = rule.weights[i] * (x - k) * std::pow(x, m) * q(x);
      s += t;
      size += std::abs(t);
    }
    if (size > 0.0) worst = std::max(worst, std::abs(s) / size);
  }
  return worst;
}

double poly_value(const FamilySpec& f, int n, double x) { return eval_sequence(f, n, x).values[idx(n)]; }

void kernels_suite(const FamilySpec& f, const RunConfig& cfg, std::vector<Case>& out, Json&) {
  const auto [s0, s1] = shifts_for(f, cfg);
  const int N = std::min(cfg.n_max, 10);
  const auto pts = seeded_points(f, cfg.seed, 20);

  out.push_back(check(cfg, "kernel_orthogonality", 1e-9, [&] {
    double worst = 0.0;
    for (double k : {s0, s1}) {
      const KernelContext<double> ctx(f, k, N);
      std::vector<RealPoly> polys;
      for (int n = 0; n <= N; ++n) polys.emplace_back([&ctx, n](double x) { return kernel_poly(ctx, n, x); });
      worst = std::max(worst, max_off_diagonal(orthogonality_residual(f, functional::Christoffel{k}, polys, N)));
    }
    return worst;
  }));

  out.push_back(check(cfg, "kernel_ttrr", 1e-10, [&] {
    const KernelContext<double> ctx(f, s0, N + 1);
    const auto rows = kernel_recurrence(ctx, N);
    double worst = 0.0;
    for (double x : pts) {
      const auto s = kernel_sequence(ctx, N, x);
      for (int n = 1; n <= N; ++n) {
        const auto& r = rows[idx(n - 1)];
        const double prev2 = n >= 2 ? s[idx(n - 2)] : 0.0;
        const double lhs = x * s[idx(n - 1)];
        const double rhs = s[idx(n)] + r.c * s[idx(n - 1)] + r.lambda * prev2;
        const double scale = std::max({1.0, std::abs(lhs), std::abs(s[idx(n)])});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
      }
    }
    return worst;
  }));

  out.push_back(check(cfg, "kernel_branch_agreement", 1e-9, [&] {
    const int M = std::min(cfg.n_max, 12);
    const KernelContext<double> ctx(f, s0, M);
    double worst = 0.0;
    for (double d : {1e-4, 1e-3, 1e-2, 1e-1})
      for (double sign : {-1.0, 1.0})
        for (int n = 0; n <= M; ++n) {
          const double x = s0 + sign * d;
          const double a = kernel_poly(ctx, n, x, KernelBranch::DividedDifference);
          const double b = kernel_poly(ctx, n, x, KernelBranch::CdSum);
          worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
        }
    return worst;
  }));

  out.push_back(check(cfg, "op_from_kernels", 1e-10, [&] {
    const int M = std::min(cfg.n_max, 12);
    const KernelContext<double> ctx(f, s0, M + 1);
    double worst = 0.0;
    for (double x : pts) {
      const auto seq = eval_sequence(f, M + 1, x);
      for (int n = 0; n <= M; ++n) worst = std::max(worst, rel(op_from_kernels(ctx, n, x), seq.values[idx(n + 1)]));
    }
    return worst;
  }));

  out.push_back(check(cfg, "cd_kernel_closed_form", 1e-10, [&] {
    const KernelContext<double> ctx(f, s0, N);
    double worst = 0.0;
    for (double x : pts)
      for (int n = 0; n <= N; ++n) {
        const double a = cd_kernel(ctx, n, x), b = cd_kernel_closed(ctx, n, x);
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
      }
    return worst;
  }));

  out.push_back(check(cfg, "product_orthogonality_offdiag", 1e-9, [&] {
    double worst = 0.0;
    for (auto [n, m] : {std::pair{2, 0}, std::pair{1, 2}, std::pair{3, 1}})
      worst = std::max(worst, std::abs(product_orthogonality_check(f, n, m, n + m + 3)));
    return worst;
  }));

  out.push_back(check(cfg, "product_orthogonality_diag", 1e-8, [&] {
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n) {
      const double got = product_orthogonality_check(f, n, n, 2 * n + 3);
      const double want = product_orthogonality_expected(f, n);
      worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    return worst;
  }));

  out.push_back(check(cfg, "iterated_kernel_orthogonality", 1e-9, [&] {
    const int M = std::min(cfg.n_max, 5);
    const IteratedKernelContext<double> ic(f, s0, s1, M);
    const GaussRule rule = gauss_rule(f, M + 4);
    return gram_off_diagonal(
        rule, [&](double x) { return (x - s0) * (x - s1); },
        [&](int n, double x) { return iterated_kernel(ic, n, x); }, M);
  }));

  out.push_back(check(cfg, "iterated_kernel_complex_cross", 0.0, [&] {
    const auto [lo, hi] = sample_interval(f);
    const cplx k2((lo + hi) / 2.0, 1.0);
    const IteratedKernelContext<cplx> ic(f, k2, std::conj(k2), N);
    bool nonzero = true;
    for (const cplx& c : ic.cd_cross()) nonzero = nonzero && std::abs(c) > 0.0;
    return Outcome(0.0, nonzero);
  }));
}

void quasi_suite(const FamilySpec& f, const RunConfig& cfg, std::vector<Case>& out, Json& summary) {
  const auto [s0, s1] = shifts_for(f, cfg);
  const int N = std::min(cfg.n_max, 8);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const double ra = 0.5 + std::abs(coef(rng)), rb = coef(rng);

  out.push_back(check(cfg, "quasi_order1_annihilation", 1e-9, [&] {
    const KernelContext<double> ctx(f, s0, N + 1);
    double worst = 0.0;
    for (const QuasiSpec spec : {QuasiSpec{1, 1.0, 0.7}, QuasiSpec{1, ra, rb}})
      for (int n = 1; n <= N; ++n) {
        const GaussRule rule = gauss_rule(f, n + 4);
        worst = std::max(worst, annihilation(rule, s0, [&](double x) { return quasi_kernel(ctx, spec, n, x); }, n - 1));
      }
    return worst;
  }));

  out.push_back(check(cfg, "quasi_order2_annihilation", 1e-9, [&] {
    const KernelContext<double> ctx(f, s0, N + 1);
    QuasiSpec spec;
    spec.order = 2;
    spec.Ltilde = 0.3;
    spec.Mtilde = 0.9;
    double worst = 0.0;
    for (int n = 3; n <= N + 1; ++n) {
      const GaussRule rule = gauss_rule(f, n + 4);
      worst = std::max(worst, annihilation(rule, s0, [&](double x) { return quasi_kernel(ctx, spec, n, x); }, n - 3));
    }
    return worst;
  }));

  double lagged = 0.0;
  out.push_back(check(cfg, "difference_equation_exact_form", 1e-9, [&] {
    const int M = std::min(cfg.n_max, 10);
    const KernelContext<double> ctx(f, s0, M + 3);
    const auto pts = seeded_points(f, cfg.seed, 20);
    double worst = 0.0;
    for (double b : {-1.5, -0.3, 0.3, 1.5})
      for (int n = 1; n <= M; ++n)
        for (double x : pts) {
          const auto r = difference_equation_residual(ctx, b, n, x);
          worst = std::max(worst, r.exact);
          lagged = std::max(lagged, r.lagged);
        }
    return worst;
  }));
  summary["difference_equation_lagged_form_max_residual"] = lagged;

  const double a = 1.3;
  const int qn = 10;
  std::vector<KernelCoeff<double>> charlier;
  for (int n = 0; n < qn; ++n) charlier.push_back({n + a, (n + 1) * a});

  out.push_back(check(cfg, "qk_orthogonality_satisfied", 1e-8, [&] {
    const auto rep = qk_orthogonality_check(charlier, {a}, qn, cfg.tol.value_or(1e-8));
    return Outcome(std::max(rep.condition_residual, rep.gram_residual), rep.satisfied && rep.gram_orthogonal);
  }));

  out.push_back(check(cfg, "qk_tilde_lambda_formula", 1e-8, [&] {
    const auto rep = qk_orthogonality_check(charlier, {a}, qn, cfg.tol.value_or(1e-8));
    double worst = 0.0;
    for (int m = 2; m < qn; ++m) {
      const double want = charlier[idx(m)].lambda + a * (charlier[idx(m - 1)].c - charlier[idx(m)].c);
      worst = std::max(worst, rel(rep.tilde_lambda[idx(m)], want));
    }
    return worst;
  }));

  out.push_back(check(cfg, "qk_orthogonality_constant_rejected", 0.0, [&] {
    const std::vector<KernelCoeff<double>> flat(qn, {0.5, 0.25});
    const auto rep = qk_orthogonality_check(flat, {0.4}, qn, cfg.tol.value_or(1e-8));
    const auto& v = rep.violated_conditions;
    return Outcome(0.0, !rep.satisfied && std::find(v.begin(), v.end(), "(ii)") != v.end());
  }));

  try {
    const KernelContext<double> ctx(f, s0, 12);
    const auto rep = qk_orthogonality_check(ctx, {0.5}, 10);
    summary["family_kernel_alpha_0.5_satisfied"] = rep.satisfied;
    summary["family_kernel_alpha_0.5_violated"] = rep.violated_conditions;
  } catch (const std::exception& e) {
    summary["family_kernel_alpha_0.5_error"] = e.what();
  }
}

void recovery_suite(const FamilySpec& f, const RunConfig& cfg, std::vector<Case>& out, Json& summary) {
  const auto [s0, s1] = shifts_for(f, cfg);
  const int N = std::min(cfg.n_max, 8);
  const auto pts = seeded_points(f, cfg.seed, 50);

  out.push_back(check(cfg, "recovery_christoffel", 1e-7, [&] {
    const std::vector<double> B(idx(N) + 2, 0.3);
    const auto rc = recover_christoffel(f, s0, s1, B, N);
    double worst = 0.0;
    for (double x : pts)
      for (int n = 1; n <= N; ++n)
        worst = std::max(worst, rel(recovered_christoffel(f, s0, s1, B, rc, n, x), poly_value(f, n, x)));
    return worst;
  }));

  out.push_back(check(cfg, "recovery_geronimus", 1e-7, [&] {
    const GeronimusData g = geronimus_data(f, s1, N + 1);
    const std::vector<double> Bt(idx(N) + 1, 0.4);
    const auto rc = recover_geronimus(f, g, s0, Bt, N);
    double worst = 0.0;
    for (double x : pts)
      for (int n = 1; n <= N; ++n)
        worst = std::max(worst, rel(recovered_geronimus(f, g, s0, Bt, rc, n, x), poly_value(f, n, x)));
    return worst;
  }));

  out.push_back(check(cfg, "recovery_uvarov", 1e-7, [&] {
    const UvarovData u = uvarov_data(f, s0, cfg.r0, N);
    const std::vector<double> Bt(idx(N) + 1, 0.2);
    const auto rc = recover_uvarov(f, u, s1, Bt, N);
    double worst = 0.0;
    for (double x : pts)
      for (int n = 1; n <= N; ++n)
        worst = std::max(worst, rel(recovered_uvarov(f, u, s1, Bt, rc, n, x), poly_value(f, n, x)));
    return worst;
  }));

  double beta_gap = 0.0;
  out.push_back(check(cfg, "recovery_order2", 1e-7, [&] {
    const auto [lo, hi] = sample_interval(f);
    const cplx k2((lo + hi) / 2.0, 1.0);
    const cplx k3 = std::conj(k2);
    const std::vector<double> M(idx(N) + 1, 0.5);
    const auto L = order2_constraint_ltilde(f, s1, k2, k3, M, N);
    const auto rc = recover_order2(f, s1, k2, k3, L, M, N);
    for (int n = 1; n <= N; ++n) beta_gap = std::max(beta_gap, std::abs(rc.beta[idx(n)] - rc.beta_without_m[idx(n)]));
    double worst = 0.0;
    for (double x : pts)
      for (int n = 1; n <= N; ++n) {
        const double p = poly_value(f, n, x);
        const cplx q = recovered_order2(f, s1, k2, k3, L, M, rc, n, cplx(x));
        worst = std::max(worst, std::abs(q - p) / std::max(1.0, std::abs(p)));
      }
    return worst;
  }));
  summary["order2_beta_without_m_max_gap"] = beta_gap;

  out.push_back(check(cfg, "geronimus_orthogonality", 1e-9, [&] {
    const int M = std::min(N, 6);
    const GeronimusData g = geronimus_data(f, s0, M);
    const double mass0 = cfg.mass0.value_or(g.mass0);
    summary["geronimus_mass0_used"] = mass0;
    summary["geronimus_mass0_natural"] = g.mass0;
    std::vector<RealPoly> polys;
    for (int n = 0; n <= M; ++n) polys.emplace_back([&, n](double x) { return geronimus_poly(f, g, n, x); });
    return max_off_diagonal(orthogonality_residual(f, functional::Geronimus{s0, mass0}, polys, M));
  }));

  out.push_back(check(cfg, "op_from_geronimus", 1e-9, [&] {
    const GeronimusData g = geronimus_data(f, s0, N + 1);
    double worst = 0.0;
    for (double x : pts)
      for (int n = 1; n <= N; ++n) worst = std::max(worst, rel(op_from_geronimus(f, g, n, x), poly_value(f, n, x)));
    return worst;
  }));

  out.push_back(check(cfg, "uvarov_orthogonality", 1e-9, [&] {
    const int M = std::min(N, 6);
    const UvarovData u = uvarov_data(f, s0, cfg.r0, M);
    std::vector<RealPoly> polys;
    for (int n = 0; n <= M; ++n) polys.emplace_back([&, n](double x) { return uvarov_poly(f, u, n, x); });
    const double corrected = max_off_diagonal(orthogonality_residual(f, functional::Uvarov{s0, cfg.r0}, polys, M));

    const KernelContext<double> ctx(f, s0, M);
    std::vector<RealPoly> full_norm;
    for (int n = 0; n <= M; ++n)
      full_norm.emplace_back([&, n](double x) {
        if (n == 0) return 1.0;
        return poly_value(f, n, x) - uvarov_T_full_norm(ctx, cfg.r0, n) * kernel_poly(ctx, n - 1, x);
      });
    summary["uvarov_T_full_norm_gram_residual"] =
        max_off_diagonal(orthogonality_residual(f, functional::Uvarov{s0, cfg.r0}, full_norm, M));
    return corrected;
  }));

  out.push_back(check(cfg, "geronimus_christoffel_roundtrip", 1e-8, [&] {
    return geronimus_christoffel_roundtrip(f, s1, std::min(cfg.n_max, 10));
  }));
}

void ratios_suite(const FamilySpec& f, const RunConfig& cfg, std::vector<Case>& out, Json& summary) {
  const auto [s0, s1] = shifts_for(f, cfg);
  (void)s1;
  const int N = std::min(cfg.n_max, 10);
  const auto pts = seeded_points(f, cfg.seed, 20);

  out.push_back(check(cfg, "confluent_cd", 1e-10, [&] {
    double worst = 0.0;
    for (double x : pts)
      for (int n = 0; n <= N; ++n) {
        const auto r = confluent_cd(f, n, x);
        worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::abs(r.lhs));
      }
    return worst;
  }));

  out.push_back(check(cfg, "ratio_reciprocal", 1e-12, [&] {
    const KernelContext<double> ctx(f, s0, 21);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n) {
      const auto r = kernel_ratio_limit(ctx, n);
      worst = std::max(worst, std::abs(r.r_up * r.r_down - 1.0));
    }
    return worst;
  }));

  out.push_back(check(cfg, "ratio_numeric_limit", 1e-9, [&] {
    const KernelContext<double> ctx(f, s0, 21);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n) {
      const double num = kernel_poly(ctx, n + 1, s0, KernelBranch::CdSum) / kernel_poly(ctx, n, s0, KernelBranch::CdSum);
      worst = std::max(worst, rel(kernel_ratio_limit(ctx, n).r_up, num));
    }
    return worst;
  }));

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
  auto r_param = [&] {
    double r = uni(0.5, 4.0);
    while (std::abs(r - std::round(r)) < 1e-3) r = uni(0.5, 4.0);
    return r;
  };

  out.push_back(check(cfg, "cf_gauss_terminating", 1e-10, [&] {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const double p = -std::floor(uni(1.0, 9.0)), q = uni(0.1, 3.0), r = r_param(), z = uni(-0.5, 0.5);
      const double series = hyp_series(HypKind::F21, {p + 1, q, r}, z) / hyp_series(HypKind::F21, {p, q, r}, z);
      worst = std::max(worst, std::abs(gauss_cf_ratio(p, q, r, z, cfg.depth) - series) / std::abs(series));
    }
    return worst;
  }));

  out.push_back(check(cfg, "cf_gauss_nonterminating", 1e-10, [&] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const double p = uni(0.1, 2.0), q = uni(0.1, 2.0), r = r_param(), z = uni(-0.5, 0.5);
      const double series = hyp_series(HypKind::F21, {p + 1, q, r}, z) / hyp_series(HypKind::F21, {p, q, r}, z);
      worst = std::max(worst, std::abs(gauss_cf_ratio(p, q, r, z, cfg.depth) - series) / std::abs(series));
    }
    return worst;
  }));

  out.push_back(check(cfg, "cf_kummer_terminating", 1e-10, [&] {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const double p = -std::floor(uni(1.0, 9.0)), r = r_param(), z = uni(-0.5, 0.5);
      const double series = hyp_series(HypKind::F11, {p + 1, r}, z) / hyp_series(HypKind::F11, {p, r}, z);
      worst = std::max(worst, std::abs(kummer_cf_ratio(p, r, z, cfg.depth) - series) / std::abs(series));
    }
    return worst;
  }));

  out.push_back(check(cfg, "cf_kummer_nonterminating", 1e-10, [&] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const double p = uni(0.1, 2.0), r = r_param(), z = uni(-0.5, 0.5);
      const double series = hyp_series(HypKind::F11, {p + 1, r}, z) / hyp_series(HypKind::F11, {p, r}, z);
      worst = std::max(worst, std::abs(kummer_cf_ratio(p, r, z, cfg.depth) - series) / std::abs(series));
    }
    return worst;
  }));

  const double lg = f.kind() == FamilyKind::Laguerre ? f.gamma() : 0.5;
  Json lag = Json::array();
  out.push_back(check(cfg, "laguerre_ratio_cf", 1e-10, [&] {
    double worst = 0.0;
    for (int n = 1; n <= N; ++n) {
      const double x = uni(0.1, 5.0);
      const auto r = laguerre_ratio_cf(lg, n, x, cfg.depth);
      const double series = hyp_series(HypKind::F11, {1.0 - n, lg + 2.0}, -x) / hyp_series(HypKind::F11, {-1.0 * n, lg + 2.0}, -x);
      worst = std::max({worst, rel(r.cf_value, series), rel(r.direct_same, r.monic_same * r.cf_value)});
      Json row = {{"n", n}, {"x", x}, {"same_prefactor_discrepancy", r.direct_same / (r.same_param_prefactor * r.cf_value)}};
      if (lg > 0.0) {
        worst = std::max({worst, rel(r.mixed_cf_value, r.mixed_series_value),
                          rel(r.direct_mixed, r.monic_mixed * r.mixed_series_value)});
        row["mixed_prefactor_discrepancy"] = r.direct_mixed / (r.mixed_param_prefactor * r.mixed_series_value);
        row["mixed_shifted_dprime_rel_error"] = rel(r.mixed_cf_shifted, r.mixed_series_value);
      }
      lag.push_back(row);
    }
    return worst;
  }));
  summary["laguerre_prefactor_report"] = lag;

  const bool jac = f.kind() == FamilyKind::Jacobi && f.delta() > 0.0;
  const double jg = jac ? f.gamma() : 0.3, jd = jac ? f.delta() : 0.7;
  Json jrep = Json::array();
  out.push_back(check(cfg, "jacobi_ratio_cf", 1e-10, [&] {
    double worst = 0.0;
    for (int n = 1; n <= N; ++n) {
      const double x = uni(-0.95, 0.95);
      const auto r = jacobi_ratio_cf(jg, jd, n, x, cfg.depth);
      const double t = (1.0 - x) / 2.0, s = n + jg + jd + 1.0;
      const double series = hyp_series(HypKind::F21, {1.0 - n, s, jg + 2.0}, t) / hyp_series(HypKind::F21, {-1.0 * n, s, jg + 2.0}, t);
      worst = std::max({worst, rel(r.cf_value, series), rel(r.direct, r.monic_factor * r.cf_value)});
      jrep.push_back({{"n", n}, {"x", x}, {"prefactor_discrepancy", r.direct / (r.prefactor * r.cf_value)}});
    }
    return worst;
  }));
  summary["jacobi_prefactor_report"] = jrep;
}

void chains_suite(const FamilySpec&, const RunConfig& cfg, std::vector<Case>& out, Json& summary) {
  out.push_back(check(cfg, "chain_quarter", 1e-14, [&] {
    const auto cs = chain_params(std::vector<double>(100, 0.25), 100);
    double worst = 0.0;
    for (int n = 1; n <= 100; ++n) worst = std::max(worst, std::abs(cs.m[idx(n)] - n / (2.0 * (n + 1))));
    return Outcome(worst, cs.positive);
  }));

  out.push_back(check(cfg, "chain_gauss_positive", 0.0, [&] {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    bool all = true;
    for (int t = 0; t < 20; ++t) {
      const double p = 0.05 + 2.0 * u01(rng);
      const double q = p + 2.0 * u01(rng);
      const double r = q + 0.05 + 2.0 * u01(rng);
      all = all && chain_params(gauss_chain(p, q, r, 50), 50).positive;
    }
    return Outcome(0.0, all);
  }));

  out.push_back(check(cfg, "chain_complement", 0.0, [&] {
    const auto cs = chain_params(std::vector<double>(20, 0.3), 20);
    double worst = 0.0;
    for (double k : cs.complement_l) worst = std::max(worst, std::abs(k - 0.7));
    summary["chain_0.3_positive"] = cs.positive;
    summary["chain_0.3_complement_positive"] = cs.complement_positive;
    return worst;
  }));
}

}  // namespace

void run_suite(const std::string& suite, const FamilySpec& family, const RunConfig& cfg,
               std::vector<Case>& cases, Json& summary) {
  if (suite == "kernels") kernels_suite(family, cfg, cases, summary);
  else if (suite == "quasi") quasi_suite(family, cfg, cases, summary);
  else if (suite == "recovery") recovery_suite(family, cfg, cases, summary);
  else if (suite == "ratios") ratios_suite(family, cfg, cases, summary);
  else if (suite == "chains") chains_suite(family, cfg, cases, summary);
  else throw UsageError("unknown suite '" + suite + "'");
}

}  // namespace opx::cli
