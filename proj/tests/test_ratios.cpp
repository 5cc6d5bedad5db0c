#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "opx/error.hpp"
#include "opx/moments.hpp"
#include "opx/ratios.hpp"

using namespace opx;
using doctest::Approx;

TEST_CASE("confluent christoffel-darboux identity") {
  for (const FamilySpec& f : {FamilySpec::chebyshev1(), FamilySpec::laguerre(0.5), FamilySpec::jacobi(0.3, 0.7)}) {
    const auto z = confluent_cd(f, 0, 0.4);
    CHECK(z.lhs == Approx(1.0 / f.mu0()));
    CHECK(z.rhs == Approx(1.0 / f.mu0()));
  }
  const auto c = confluent_cd(FamilySpec::chebyshev1(), 4, 0.3);
  CHECK(std::abs(c.lhs - c.rhs) <= 1e-12 * std::abs(c.lhs));
  const auto l = confluent_cd(FamilySpec::laguerre(0.5), 6, 2.0);
  CHECK(std::abs(l.lhs - l.rhs) <= 1e-12 * std::abs(l.lhs));
}

TEST_CASE("norm products match quadrature") {
  const FamilySpec f = FamilySpec::jacobi(0.3, 0.7);
  const auto norms = norm_products(f, 10);
  const auto rule = gauss_rule(f, 16);
  for (int j = 0; j <= 10; ++j) {
    const double q = rule.integrate([&](double x) { return std::pow(testing::p_value(f, j, x), 2); });
    CHECK(norms[static_cast<std::size_t>(j)] == Approx(q).epsilon(1e-10));
  }
}

TEST_CASE("kernel ratio limits at k = 1 for chebyshev") {
  const KernelContext<double> ctx(FamilySpec::chebyshev1(), 1.0, 1001);
  double prev = 10.0;
  for (int n = 1; n <= 50; ++n) {
    const auto r = kernel_ratio_limit(ctx, n);
    CHECK(r.r_up == Approx(0.5 * (1.0 + 2.0 / (2 * n + 1))).epsilon(1e-12));
    CHECK(r.r_up * r.r_down == Approx(1.0).epsilon(1e-12));
    CHECK(r.r_up < prev);
    CHECK(r.r_up > 0.5);
    prev = r.r_up;
    // the limit of the kernel-polynomial ratio, read off at x = k
    CHECK(kernel_poly(ctx, n + 1, 1.0, KernelBranch::CdSum) / kernel_poly(ctx, n, 1.0, KernelBranch::CdSum) ==
          Approx(r.r_up).epsilon(1e-9));
    CHECK(op_kernel_ratio_limit(ctx, n) == Approx(2.0 / (2 * n + 3)).epsilon(1e-12));
  }
  CHECK(std::abs(kernel_ratio_limit(ctx, 1000).r_up - 0.5) <= 2.1e-3);
}

TEST_CASE("reciprocal identity off the support") {
  for (const auto& [f, k] : {std::pair{FamilySpec::chebyshev1(), -2.0}, std::pair{FamilySpec::laguerre(0.5), -1.0},
                            std::pair{FamilySpec::jacobi(0.3, 0.7), 1.5}}) {
    const KernelContext<double> ctx(f, k, 22);
    for (int n = 0; n <= 20; ++n) {
      const auto r = kernel_ratio_limit(ctx, n);
      CHECK(r.r_up * r.r_down == Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("continued fraction evaluation") {
  const ContinuedFraction cf{2.0, [](int) { return std::pair{0.0, 1}; }, 5};
  CHECK(evaluate(cf).value == 2.0);

  const ContinuedFraction wild{1.0, [](int) { return std::pair{2.0, -1}; }, 20};
  try {
    evaluate(wild);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonConvergent);
  }

  const ContinuedFraction zero{1.0, [](int j) { return j == 1 ? std::pair{1.0, -1} : std::pair{0.0, 1}; }, 4};
  try {
    evaluate(zero);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroDenominator);
  }
}

TEST_CASE("gauss and kummer fractions") {
  CHECK(gauss_cf_ratio(0.5, 1.5, 2.5, 0.0) == 1.0);
  CHECK(kummer_cf_ratio(0.5, 2.5, 0.0) == 1.0);
  for (double z : {0.2, -0.6, 0.9})
    CHECK(gauss_cf_ratio(-1.0, 1.5, 2.5, z) == Approx(1.0 / (1.0 - 1.5 / 2.5 * z)));
  CHECK(gauss_g(-1.0, 1.5, 2.5, 1) == Approx(1.5 / 2.5));

  const double num = hyp_series(HypKind::F21, {1.5, 1.5, 2.5}, 0.3);
  const double den = hyp_series(HypKind::F21, {0.5, 1.5, 2.5}, 0.3);
  CHECK(gauss_cf_ratio(0.5, 1.5, 2.5, 0.3) == Approx(num / den).epsilon(1e-12));

  CHECK(kummer_d(0.4, 1.7, 1) == Approx(1.0 / 1.7));
  CHECK(kummer_d(0.4, 1.7, 2) == Approx(-(1.4) / (2.7 * 1.7)));
  const double kn = hyp_series(HypKind::F11, {-2.0, 1.5}, -0.7);
  const double kd = hyp_series(HypKind::F11, {-3.0, 1.5}, -0.7);
  CHECK(kummer_cf_ratio(-3.0, 1.5, -0.7, 40) == Approx(kn / kd).epsilon(1e-12));
  // non-terminating
  CHECK(kummer_cf_ratio(0.3, 1.7, 0.4) ==
        Approx(hyp_series(HypKind::F11, {1.3, 1.7}, 0.4) / hyp_series(HypKind::F11, {0.3, 1.7}, 0.4)).epsilon(1e-13));
}

TEST_CASE("random cf tuples against series") {
  const auto u = testing::uniform(0.0, 1.0, 800, 7);
  std::size_t i = 0;
  auto next = [&] { return u[i++]; };
  for (int t = 0; t < 100; ++t) {
    const double p = -std::floor(1 + 12 * next());
    const double q = 0.2 + 3 * next(), r = 0.3 + 4 * next(), z = -1.5 + 3 * next();
    const double s = hyp_series(HypKind::F21, {p + 1, q, r}, z) / hyp_series(HypKind::F21, {p, q, r}, z);
    CHECK(testing::rel(gauss_cf_ratio(p, q, r, z), s) <= 1e-10 * std::max(1.0, std::abs(s)));
    const double k = hyp_series(HypKind::F11, {p + 1, r}, z) / hyp_series(HypKind::F11, {p, r}, z);
    CHECK(std::abs(kummer_cf_ratio(p, r, z) - k) <= 1e-10 * std::max(1.0, std::abs(k)));
  }
}

TEST_CASE("hypergeometric series") {
  CHECK(hyp_series(HypKind::F21, {0.3, 0.4, 0.5}, 0.0) == 1.0);
  CHECK(hyp_series(HypKind::F21, {-1.0, 2.0, 3.0}, 0.6) == Approx(1.0 - 2.0 * 0.6 / 3.0));
  CHECK(hyp_series(HypKind::F11, {-2.0, 1.0}, 0.8) == Approx(1.0 - 1.6 + 0.32));
  CHECK(hyp_series(HypKind::F21, {1.0, 1.0, 2.0}, 0.5) == Approx(-std::log(0.5) / 0.5).epsilon(1e-13));
  CHECK_THROWS_AS(hyp_series(HypKind::F21, {0.5, 0.5, 1.5}, 1.2), Error);
  CHECK_THROWS_AS(hyp_series(HypKind::F11, {0.5, -2.0}, 0.2), Error);
  CHECK(hyp_series(HypKind::F11, {-1.0, -2.0}, 0.2) == Approx(1.0 + 0.1));
}

TEST_CASE("laguerre ratio fractions") {
  const auto z = laguerre_ratio_cf(0.5, 4, 0.0);
  CHECK(z.cf_value == Approx(1.0));
  CHECK(laguerre_dtilde(0.5, 4, 2) == Approx(3.0 / (2.5 * 3.5)));

  const double g = 0.5, x = 1.2;
  const int n = 4;
  const auto r = laguerre_ratio_cf(g, n, x);
  const double s = hyp_series(HypKind::F11, {-n + 1.0, g + 2}, -x) / hyp_series(HypKind::F11, {-double(n), g + 2}, -x);
  CHECK(r.cf_value == Approx(s).epsilon(1e-11));
  CHECK(r.direct_same == Approx(r.monic_same * r.cf_value).epsilon(1e-11));
  CHECK(r.direct_mixed == Approx(r.monic_mixed * r.mixed_series_value).epsilon(1e-11));
  CHECK(r.monic_same == Approx(-1.0 / (g + n + 1)));
  CHECK(r.monic_mixed == Approx(-1.0 / (g + 1)));

  // the alternating fraction matches the series; shifting its even denominators breaks it
  CHECK(r.mixed_cf_value == Approx(r.mixed_series_value).epsilon(1e-11));
  CHECK(std::abs(r.mixed_cf_shifted - r.mixed_series_value) > 1e-3);
  CHECK(laguerre_dprime(g, n, 2) != Approx(laguerre_dprime_shifted(g, n, 2)));

  const double same_gap = r.direct_same / (r.same_param_prefactor * r.cf_value);
  const double mixed_gap = r.direct_mixed / (r.mixed_param_prefactor * r.mixed_cf_value);
  MESSAGE("laguerre prefactor discrepancy (same, mixed): " << same_gap << ", " << mixed_gap);
  CHECK(std::abs(same_gap - 1.0) > 1e-3);

  const auto low = laguerre_ratio_cf(-0.5, 3, 1.0);
  CHECK(std::isnan(low.mixed_param_prefactor));
  CHECK(std::isfinite(low.cf_value));
}

TEST_CASE("jacobi ratio fractions") {
  CHECK(jacobi_ratio_cf(0.3, 0.7, 3, 1.0).cf_value == Approx(1.0));
  CHECK(jacobi_e(0.3, 0.7, 3, 1) == Approx((3 + 0.3 + 0.7 + 1) / 2.3));
  const double g = 0.3, d = 0.7, x = 0.4;
  const int n = 3;
  const auto r = jacobi_ratio_cf(g, d, n, x);
  const double t = (1 - x) / 2;
  const double s = hyp_series(HypKind::F21, {-n + 1.0, n + g + d + 1, g + 2}, t) /
                   hyp_series(HypKind::F21, {-double(n), n + g + d + 1, g + 2}, t);
  CHECK(r.cf_value == Approx(s).epsilon(1e-11));
  CHECK(r.direct == Approx(r.monic_factor * r.cf_value).epsilon(1e-11));
  MESSAGE("jacobi prefactor discrepancy: " << r.direct / (r.prefactor * r.cf_value));
}

TEST_CASE("chain sequences") {
  const auto q = chain_params(std::vector<double>(100, 0.25), 100);
  CHECK(q.m[0] == 0.0);
  CHECK(q.positive);
  for (int n = 1; n <= 100; ++n) CHECK(std::abs(q.m[static_cast<std::size_t>(n)] - n / (2.0 * (n + 1))) <= 1e-14);

  const auto c = chain_params(std::vector<double>(20, 0.3), 20);
  for (double k : c.complement_l) CHECK(k == Approx(0.7));
  CHECK(c.complement_m[1] == Approx(0.7));
  CHECK(c.complement_m[2] == Approx(0.7 / 0.3));
  CHECK_FALSE(c.complement_positive);

  CHECK_FALSE(chain_params(std::vector<double>(10, 0.3), 10).positive);
  CHECK_THROWS_AS(chain_params(std::vector<double>(5, 1.0), 5), Error);
  CHECK_THROWS_AS(chain_params(std::vector<double>(3, 0.2), 5), Error);

  const auto u = testing::uniform(0.0, 1.0, 60, 11);
  for (int t = 0; t < 20; ++t) {
    const double p = 0.1 + 2 * u[static_cast<std::size_t>(3 * t)];
    const double q2 = p + 2 * u[static_cast<std::size_t>(3 * t + 1)];
    const double r = q2 + 0.1 + 2 * u[static_cast<std::size_t>(3 * t + 2)];
    CHECK(chain_params(gauss_chain(p, q2, r, 50), 50).positive);
  }
}

TEST_CASE("log beta") {
  CHECK(log_beta(2.0, 3.0) == Approx(std::log(1.0 / 12.0)));
  CHECK(std::isfinite(log_beta(900.0, 1.5)));
}
