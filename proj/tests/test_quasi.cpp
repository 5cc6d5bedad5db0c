#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "opx/error.hpp"
#include "opx/moments.hpp"
#include "opx/quasi.hpp"

using namespace opx;
using doctest::Approx;

namespace {

/// L*(x^m q) relative to L*(|x^m q|).
template <class Q>
double star_moment(const GaussRule& rule, double k, int m, Q&& q) {
  double s = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double t = rule.weights[i] * (x - k) * std::pow(x, m) * q(x);
    s += t;
    scale += std::abs(t);
  }
  return std::abs(s) / scale;
}

}  // namespace

TEST_CASE("order one quasi kernels") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const KernelContext<double> ctx(f, 2.0, 10);
  CHECK(quasi_kernel(ctx, {1, 1.0, 0.0}, 4, 0.3) == Approx(kernel_poly(ctx, 5, 0.3)));
  const auto rule = gauss_rule(f, 16);
  for (int n = 1; n <= 8; ++n)
    for (int m = 0; m <= n - 1; ++m)
      CHECK(star_moment(rule, 2.0, m, [&](double x) { return quasi_kernel(ctx, {1, 1.0, 0.7}, n, x); }) <= 1e-12);
  // not annihilated at m = n
  CHECK(star_moment(rule, 2.0, 4, [&](double x) { return quasi_kernel(ctx, {1, 1.0, 0.7}, 4, x); }) > 1e-6);
}

TEST_CASE("order two quasi kernels") {
  const FamilySpec f = FamilySpec::laguerre(0.5);
  const KernelContext<double> ctx(f, -1.0, 10);
  const auto rule = gauss_rule(f, 16);
  const QuasiSpec s{2, 1.0, 0.0, 0.3, 0.9};
  for (int m = 0; m <= 2; ++m)
    CHECK(star_moment(rule, -1.0, m, [&](double x) { return quasi_kernel(ctx, s, 5, x); }) <= 1e-12);
  const double x = 1.3;
  CHECK(quasi_kernel(ctx, s, 5, x) ==
        Approx(kernel_poly(ctx, 5, x) + 0.3 * kernel_poly(ctx, 4, x) + 0.9 * kernel_poly(ctx, 3, x)));
}

TEST_CASE("difference equation coefficients") {
  const KernelContext<double> ctx(FamilySpec::chebyshev1(), 2.0, 10);
  const auto rows = kernel_recurrence(ctx, 10);
  const auto d = difference_equation_coeffs(ctx, 0.5, 3);
  CHECK(d.D_n1.slope == 1.0);
  CHECK(d.D_n1.intercept == Approx(-rows[4].c + 0.5));
  for (double x : {-0.4, 0.1, 2.5}) CHECK(d.J_n1(x) == Approx(d.inversion_denominator(x)));
  const auto z = difference_equation_coeffs(ctx, 0.0, 3);
  CHECK(z.J_n1.slope == 0.0);
  CHECK(z.J_n1.intercept == Approx(rows[3].lambda));
  CHECK(z.D_n1(0.7) == Approx(0.7 - rows[4].c));
}

TEST_CASE("difference equation residuals") {
  const KernelContext<double> ctx(FamilySpec::chebyshev1(), 2.0, 14);
  CHECK(difference_equation_residual(ctx, 0.0, 3, 0.4).exact <= 1e-14);
  const auto r = difference_equation_residual(ctx, 0.3, 3, 0.4);
  CHECK(r.exact <= 1e-9);
  MESSAGE("lagged-form residual at b=0.3, n=3, x=0.4: " << r.lagged);
  for (double b : {0.3, -0.3, 1.5, -1.5})
    for (double x : testing::uniform(-1.0, 1.0, 20))
      for (int n = 1; n <= 10; ++n) CHECK(difference_equation_residual(ctx, b, n, x).exact <= 1e-9);
}

TEST_CASE("qk orthogonality check") {
  CHECK_THROWS_AS(qk_orthogonality_check(std::vector<KernelCoeff<double>>(10, {0.5, 0.25}), {0.0}, 10), Error);

  const std::vector<KernelCoeff<double>> flat(10, {0.5, 0.25});
  const auto bad = qk_orthogonality_check(flat, {0.4}, 10);
  CHECK_FALSE(bad.satisfied);
  CHECK(std::find(bad.violated_conditions.begin(), bad.violated_conditions.end(), "(ii)") !=
        bad.violated_conditions.end());

  // c*_n arithmetic, lambda*_{n+1} - lambda*_n = alpha (c*_{n+1} - c*_n)
  const double a = 1.3;
  std::vector<KernelCoeff<double>> rows;
  for (int n = 0; n < 10; ++n) rows.push_back({n + a, (n + 1) * a});
  const auto good = qk_orthogonality_check(rows, {a}, 10);
  CHECK(good.satisfied);
  CHECK(good.gram_orthogonal);
  CHECK(good.violated_conditions.empty());
  for (int m = 2; m < 10; ++m) {
    const auto i = static_cast<std::size_t>(m);
    CHECK(good.tilde_lambda[i] == Approx(rows[i].lambda + a * (rows[i - 1].c - rows[i].c)));
    CHECK(good.tilde_c[i] == Approx(rows[i].c));
  }

  // kernel family of Chebyshev at k = 2 with a random alpha fails
  const KernelContext<double> ctx(FamilySpec::chebyshev1(), 2.0, 12);
  const auto real = qk_orthogonality_check(ctx, {0.4}, 10);
  CHECK_FALSE(real.satisfied);
  CHECK_FALSE(real.gram_orthogonal);
}
