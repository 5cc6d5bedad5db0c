#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "opx/error.hpp"
#include "opx/moments.hpp"
#include "opx/transforms.hpp"

using namespace opx;
using doctest::Approx;
using testing::p_value;
using testing::rel;

TEST_CASE("geronimus data") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const auto g = geronimus_data(f, 2.0, 6);
  CHECK(g.A[0] == 0.0);
  CHECK(std::isfinite(g.A[1]));
  CHECK(g.A[1] != 0.0);
  CHECK(g.mass0 == Approx(natural_geronimus_mass(f, 2.0)));
  CHECK(geronimus_poly(f, g, 0, 0.3) == 1.0);
  CHECK_THROWS_AS(geronimus_data(f, 0.5, 4), Error);
}

TEST_CASE("geronimus polynomials are orthogonal for the natural mass") {
  for (const auto& [f, k] : {std::pair{FamilySpec::chebyshev1(), 2.0}, std::pair{FamilySpec::chebyshev1(), -2.0},
                            std::pair{FamilySpec::laguerre(0.5), -1.0}}) {
    const auto g = geronimus_data(f, k, 6);
    std::vector<RealPoly> polys;
    for (int n = 0; n <= 6; ++n) polys.emplace_back([&, n](double x) { return geronimus_poly(f, g, n, x); });
    CHECK(max_off_diagonal(orthogonality_residual(f, functional::Geronimus{k, g.mass0}, polys, 6)) <= 1e-9);
    // any other G(1) breaks the first relation
    CHECK(max_off_diagonal(orthogonality_residual(f, functional::Geronimus{k, 2.0 * g.mass0}, polys, 6)) > 1e-3);
  }
}

TEST_CASE("orthogonal polynomials from geronimus polynomials") {
  const FamilySpec c = FamilySpec::chebyshev1();
  CHECK(op_from_geronimus(c, 2.0, 3, 0.5) == Approx(p_value(c, 3, 0.5)).epsilon(1e-11));
  const FamilySpec l = FamilySpec::laguerre(0.0);
  CHECK(op_from_geronimus(l, -1.0, 2, 1.0) == Approx(p_value(l, 2, 1.0)).epsilon(1e-11));

  const auto g = geronimus_data(c, 2.0, 8);
  for (int n = 1; n <= 7; ++n) CHECK(std::abs(geronimus_numerator(c, g, n, 2.0)) <= 1e-10);
  CHECK(std::abs(geronimus_numerator(c, g, 3, 2.0 + 1e-8)) <= 1e-7);
  CHECK_THROWS_AS(op_from_geronimus(c, g, 3, 2.0), Error);

  // the minus-signed combination does not vanish at the shift
  const int n = 3;
  const double minus = geronimus_poly(c, g, n + 1, 2.0) - c.lambda(n + 1) / g.A[n] * geronimus_poly(c, g, n, 2.0);
  CHECK(std::abs(minus) > 1e-2);
}

TEST_CASE("geronimus recurrence and the christoffel round trip") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const auto g = geronimus_data(f, -2.0, 8);
  const auto rows = geronimus_recurrence(f, g, 8);
  CHECK(rows[0].lambda == Approx(g.mass0));
  const double x = 0.3;
  for (int n = 1; n < 7; ++n) {
    const double lhs = x * geronimus_poly(f, g, n, x);
    const double rhs = geronimus_poly(f, g, n + 1, x) + rows[static_cast<std::size_t>(n)].c * geronimus_poly(f, g, n, x) +
                       rows[static_cast<std::size_t>(n)].lambda * geronimus_poly(f, g, n - 1, x);
    CHECK(lhs == Approx(rhs).epsilon(1e-11));
  }
  CHECK(geronimus_christoffel_roundtrip(f, 3.0, 10) <= 1e-8);
  CHECK(geronimus_christoffel_roundtrip(f, -3.0, 10) <= 1e-8);
  CHECK(geronimus_christoffel_roundtrip(FamilySpec::laguerre(0.5), -1.0, 10) <= 1e-8);
}

TEST_CASE("uvarov polynomials") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const auto u = uvarov_data(f, 2.0, 0.5, 6);
  std::vector<RealPoly> polys;
  for (int n = 0; n <= 6; ++n) polys.emplace_back([&, n](double x) { return uvarov_poly(f, u, n, x); });
  CHECK(max_off_diagonal(orthogonality_residual(f, functional::Uvarov{2.0, 0.5}, polys, 6)) <= 1e-9);

  const FamilySpec l = FamilySpec::laguerre(0.5);
  const auto ul = uvarov_data(l, -1.0, 0.3, 5);
  std::vector<RealPoly> lp;
  for (int n = 0; n <= 5; ++n) lp.emplace_back([&, n](double x) { return uvarov_poly(l, ul, n, x); });
  CHECK(max_off_diagonal(orthogonality_residual(l, functional::Uvarov{-1.0, 0.3}, lp, 5)) <= 1e-9);

  const auto tiny = uvarov_data(f, 2.0, 1e-18, 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(std::abs(tiny.T[static_cast<std::size_t>(n)]) <= 1e-12);
    CHECK(uvarov_poly(f, tiny, n, 0.4) == Approx(p_value(f, n, 0.4)).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("full-norm uvarov coefficient fails the gram test") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const KernelContext<double> ctx(f, 2.0, 6);
  std::vector<RealPoly> full_norm;
  for (int n = 0; n <= 6; ++n)
    full_norm.emplace_back([&, n](double x) {
      if (n == 0) return 1.0;
      return p_value(f, n, x) - uvarov_T_full_norm(ctx, 0.5, n) * kernel_poly(ctx, n - 1, x);
    });
  const double residual = max_off_diagonal(orthogonality_residual(f, functional::Uvarov{2.0, 0.5}, full_norm, 6));
  MESSAGE("full-norm T_n gram residual: " << residual);
  CHECK(residual > 0.1);
}

TEST_CASE("christoffel recovery") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const std::vector<double> B(10, 0.3);
  const auto rc = recover_christoffel(f, 2.0, 2.0, B, 8);
  for (double x : testing::uniform(-1.0, 1.0, 50))
    for (int n = 1; n <= 8; ++n) CHECK(rel(recovered_christoffel(f, 2.0, 2.0, B, rc, n, x), p_value(f, n, x)) <= 1e-9);

  const std::vector<double> zero(10, 0.0);
  const auto rz = recover_christoffel(f, 2.0, 3.0, zero, 8);
  const KernelContext<double> c2(f, 3.0, 10);
  for (int n = 0; n <= 8; ++n) {
    const auto i = static_cast<std::size_t>(n);
    CHECK(rz.eta[i] == Approx(-f.lambda(n + 2) * c2.pk()[i] / c2.pk()[i + 1]));
  }
}

TEST_CASE("geronimus recovery") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const auto g = geronimus_data(f, 3.0, 8);
  const std::vector<double> Bt(8, 0.4);
  const auto rc = recover_geronimus(f, g, 2.0, Bt, 6);
  for (int n = 1; n <= 6; ++n) CHECK(rc.alpha[static_cast<std::size_t>(n)] - 1.0 - rc.eta[static_cast<std::size_t>(n)] == Approx(0.0).scale(1.0));
  for (double x : testing::uniform(-1.0, 1.0, 50))
    for (int n = 1; n <= 6; ++n) CHECK(rel(recovered_geronimus(f, g, 2.0, Bt, rc, n, x), p_value(f, n, x)) <= 1e-8);
  const auto r0 = recover_geronimus(f, g, 2.0, std::vector<double>(8, 1e-13), 6);
  CHECK(r0.eta[3] == Approx(-1.0));
  CHECK(r0.alpha[3] == Approx(0.0).scale(1.0));
}

TEST_CASE("uvarov recovery") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const auto u = uvarov_data(f, 2.0, 0.5, 6);
  const std::vector<double> Bt(8, 0.2);
  const auto rc = recover_uvarov(f, u, 3.0, Bt, 6);
  for (int n = 1; n <= 6; ++n) CHECK(rc.eta[static_cast<std::size_t>(n)] == Approx(rc.alpha[static_cast<std::size_t>(n)] - 1.0));
  for (double x : testing::uniform(-1.0, 1.0, 50))
    for (int n = 1; n <= 6; ++n) CHECK(rel(recovered_uvarov(f, u, 3.0, Bt, rc, n, x), p_value(f, n, x)) <= 1e-8);
  const auto tiny = recover_uvarov(f, uvarov_data(f, 2.0, 1e-15, 6), 3.0, Bt, 6);
  CHECK(tiny.eta[4] == Approx(0.0).scale(1.0));
  CHECK(tiny.alpha[4] == Approx(1.0));
}

TEST_CASE("order two recovery") {
  const FamilySpec f = FamilySpec::chebyshev1();
  const cplx k2(0.0, 1.0), k3(0.0, -1.0);
  const std::vector<double> M(6, 0.5);
  const auto L = order2_constraint_ltilde(f, 3.0, k2, k3, M, 5);
  const auto rc = recover_order2(f, 3.0, k2, k3, L, M, 5);
  for (double x : testing::uniform(-1.0, 1.0, 30))
    for (int n = 1; n <= 5; ++n) {
      const double p = p_value(f, n, x);
      CHECK(std::abs(recovered_order2(f, 3.0, k2, k3, L, M, rc, n, cplx(x)) - p) <= 1e-7 * std::max(1.0, std::abs(p)));
    }
  auto off = L;
  off[2] += 0.1;
  CHECK_THROWS_AS(recover_order2(f, 3.0, k2, k3, off, M, 5), Error);

  const FamilySpec l = FamilySpec::laguerre(0.5);
  const auto Ll = order2_constraint_ltilde(l, -1.0, cplx(2.0, 1.0), cplx(2.0, -1.0), M, 5);
  const auto rl = recover_order2(l, -1.0, cplx(2.0, 1.0), cplx(2.0, -1.0), Ll, M, 5);
  double gap = 0.0;
  for (int n = 1; n <= 5; ++n) gap = std::max(gap, std::abs(rl.beta[static_cast<std::size_t>(n)] - rl.beta_without_m[static_cast<std::size_t>(n)]));
  MESSAGE("beta without M gap (Laguerre 0.5): " << gap);
  CHECK(gap > 1e-3);
}
