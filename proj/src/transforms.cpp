#include "opx/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opx/error.hpp"
#include "opx/moments.hpp"

namespace opx {
namespace {

constexpr double pole_threshold = 1e-12;
constexpr double shift_threshold = 1e-10;

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

void require_size(const std::vector<double>& v, int size, const char* what) {
  if (static_cast<int>(v.size()) < size)
    throw Error(Errc::IndexOutOfRange, std::string(what) + " needs at least " + std::to_string(size) +
                                           " entries");
}

void require_degree(int n, int lo, int hi) {
  if (n < lo || n > hi)
    throw Error(Errc::IndexOutOfRange,
                "index " + std::to_string(n) + " outside " + std::to_string(lo) + ".." + std::to_string(hi));
}

template <Scalar T>
T divide_checked(T num, T den, T a_x, T g) {
  const double scale = std::max({1.0, std::abs(a_x), std::abs(g)});
  if (std::abs(den) < pole_threshold * scale)
    throw Error(Errc::PoleAtSample, "sample point is a root of the recovery denominator");
  return num / den;
}

double ratio(const KernelContext<double>& ctx, int j) { return ctx.pk_ratio()[idx(j)]; }

}  // namespace

GeronimusData geronimus_data(const FamilySpec& family, double k, int n_max) {
  if (n_max < 1) throw Error(Errc::ParameterOutOfRange, "geronimus data needs n_max >= 1");
  const auto q = stieltjes_integrals(family, k, n_max);
  GeronimusData g;
  g.k = k;
  g.mass0 = -q[0];
  g.A.assign(idx(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double den = q[idx(n - 1)];
    if (!(std::abs(den) > 1e-300))
      throw Error(Errc::DegenerateDenominator, "Stieltjes integral q_" + std::to_string(n - 1) + " underflows");
    g.A[idx(n)] = -q[idx(n)] / den;
  }
  return g;
}

double geronimus_poly(const FamilySpec& family, const GeronimusData& g, int n, double x) {
  require_degree(n, 0, static_cast<int>(g.A.size()) - 1);
  if (n == 0) return 1.0;
  const auto seq = eval_sequence(family, n, x);
  return seq.values[idx(n)] + g.A[idx(n)] * seq.values[idx(n - 1)];
}

double geronimus_poly(const FamilySpec& family, double k, int n, double x) {
  return geronimus_poly(family, geronimus_data(family, k, std::max(n, 1)), n, x);
}

double geronimus_numerator(const FamilySpec& family, const GeronimusData& g, int n, double x) {
  require_degree(n, 1, static_cast<int>(g.A.size()) - 2);
  return geronimus_poly(family, g, n + 1, x) +
         family.lambda(n + 1) / g.A[idx(n)] * geronimus_poly(family, g, n, x);
}

double op_from_geronimus(const FamilySpec& family, const GeronimusData& g, int n, double x) {
  if (std::abs(x - g.k) < shift_threshold * (1.0 + std::abs(g.k)))
    throw Error(Errc::EvalAtShift, "x coincides with the Geronimus shift");
  return geronimus_numerator(family, g, n, x) / (x - g.k);
}

double op_from_geronimus(const FamilySpec& family, double k, int n, double x) {
  return op_from_geronimus(family, geronimus_data(family, k, n + 1), n, x);
}

std::vector<Recurrence> geronimus_recurrence(const FamilySpec& family, const GeronimusData& g,
                                             int n_max) {
  require_degree(n_max, 1, static_cast<int>(g.A.size()) - 1);
  std::vector<Recurrence> rows(idx(n_max));
  const auto& A = g.A;
  for (int n = 0; n < n_max; ++n) {
    Recurrence r;
    r.c = family.c(n + 1) + A[idx(n)] - A[idx(n + 1)];
    r.lambda = n == 0 ? g.mass0 : family.lambda(n + 1) + A[idx(n)] * (family.c(n) - r.c);
    rows[idx(n)] = r;
  }
  return rows;
}

double geronimus_christoffel_roundtrip(const FamilySpec& family, double k, int n_max) {
  const GeronimusData g = geronimus_data(family, k, n_max + 2);
  Support hull = family.support();
  hull.lower = std::min(hull.lower, k);
  hull.upper = std::max(hull.upper, k);
  // G(1) < 0 when k lies right of the support; -G has the same monic polynomials.
  auto table = geronimus_recurrence(family, g, n_max + 2);
  const double sign = table.front().lambda < 0.0 ? -1.0 : 1.0;
  table.front().lambda *= sign;
  const FamilySpec tilde = FamilySpec::custom(std::move(table), hull, "geronimus");
  const KernelContext<double> ctx(tilde, k, n_max);
  const auto rows = kernel_recurrence(ctx, n_max);
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const Recurrence orig = family.coeff(n);
    const auto& back = rows[idx(n - 1)];
    const double lambda = n == 1 ? sign * back.lambda : back.lambda;
    worst = std::max(worst, std::abs(back.c - orig.c) / std::max(1.0, std::abs(orig.c)));
    worst = std::max(worst, std::abs(lambda - orig.lambda) / std::max(1.0, std::abs(orig.lambda)));
  }
  return worst;
}

UvarovData uvarov_data(const FamilySpec& family, double k, double r0, int n_max) {
  if (r0 == 0.0) throw Error(Errc::ParameterOutOfRange, "Uvarov mass R0 must be nonzero");
  const KernelContext<double> ctx(family, k, n_max);
  UvarovData u;
  u.k = k;
  u.r0 = r0;
  u.T.assign(idx(n_max) + 1, 0.0);
  // Written with ratios: P_n(k) P_{n-1}(k) / (lambda_1...lambda_n) = r_n * cd_terms[n-1].
  for (int n = 1; n <= n_max; ++n) {
    const double den = 1.0 + r0 * ctx.cd_partials()[idx(n - 1)];
    if (std::abs(den) < 1e-13)
      throw Error(Errc::DegenerateDenominator, "Uvarov denominator vanishes at n = " + std::to_string(n));
    u.T[idx(n)] = r0 * ratio(ctx, n) * ctx.cd_terms()[idx(n - 1)] / den;
  }
  return u;
}

double uvarov_T_full_norm(const KernelContext<double>& ctx, double r0, int n) {
  ctx.require(n);
  if (n < 1) throw Error(Errc::ParameterOutOfRange, "T_n needs n >= 1");
  const double pn = ctx.pk()[idx(n)];
  const double norm = ctx.norms()[idx(n)];
  const double star = kernel_poly(ctx, n - 1, ctx.k());
  return r0 * pn * pn / (norm * (1.0 + r0 * star * pn / norm));
}

double uvarov_poly(const FamilySpec& family, const UvarovData& u, int n, double x) {
  require_degree(n, 0, static_cast<int>(u.T.size()) - 1);
  if (n == 0) return 1.0;
  const KernelContext<double> ctx(family, u.k, n - 1);
  return eval_sequence(family, n, x).values[idx(n)] - u.T[idx(n)] * kernel_poly(ctx, n - 1, x);
}

double uvarov_poly(const FamilySpec& family, double k, double r0, int n, double x) {
  return uvarov_poly(family, uvarov_data(family, k, r0, std::max(n, 1)), n, x);
}

RecoveryCoefficients recover_christoffel(const FamilySpec& family, double k1, double k2,
                                         const std::vector<double>& B, int n_max) {
  require_size(B, n_max + 2, "B");
  const KernelContext<double> c1(family, k1, n_max + 1), c2(family, k2, n_max + 1);
  RecoveryCoefficients rc;
  rc.kind = RecoveryKind::Christoffel;
  rc.first_index = 0;
  rc.gamma.assign(idx(n_max) + 1, 0.0);
  rc.eta.assign(idx(n_max) + 1, 0.0);
  for (int n = 0; n <= n_max; ++n) {
    const double b = B[idx(n + 1)];
    const double eta = -(family.lambda(n + 2) + b * ratio(c1, n + 1)) / ratio(c2, n + 1);
    rc.eta[idx(n)] = eta;
    rc.gamma[idx(n)] = family.c(n + 2) + ratio(c1, n + 2) - b - eta;
  }
  return rc;
}

double recovered_christoffel(const FamilySpec& family, double k1, double k2,
                             const std::vector<double>& B, const RecoveryCoefficients& rc, int n,
                             double x) {
  require_degree(n, 1, static_cast<int>(rc.gamma.size()));
  const KernelContext<double> c1(family, k1, n), c2(family, k2, n);
  const auto s1 = kernel_sequence(c1, n, x);
  const double t = s1[idx(n)] + B[idx(n)] * s1[idx(n - 1)];
  const double g = rc.gamma[idx(n - 1)];
  const double num = (x - k1) * t + rc.eta[idx(n - 1)] * (x - k2) * kernel_poly(c2, n - 1, x);
  return divide_checked(num, x - g, x, g);
}

namespace {

double quasi_star(const KernelContext<double>& ctx, const std::vector<double>& Bt, int n, double x) {
  const auto s = kernel_sequence(ctx, n, x);
  return s[idx(n)] + (n > 0 ? Bt[idx(n)] * s[idx(n - 1)] : 0.0);
}

}  // namespace

RecoveryCoefficients recover_geronimus(const FamilySpec& family, const GeronimusData& g, double k2,
                                       const std::vector<double>& Btilde, int n_max) {
  require_size(Btilde, n_max + 1, "Btilde");
  require_degree(n_max + 1, 1, static_cast<int>(g.A.size()) - 1);
  const KernelContext<double> c2(family, k2, n_max + 1);
  RecoveryCoefficients rc;
  rc.kind = RecoveryKind::Geronimus;
  rc.first_index = 1;
  rc.alpha.assign(idx(n_max) + 1, 0.0);
  rc.gamma.assign(idx(n_max) + 1, 0.0);
  rc.eta.assign(idx(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double lam = family.lambda(n + 1);
    const double den = lam + Btilde[idx(n)] * ratio(c2, n);
    if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(lam)))
      throw Error(Errc::DegenerateDenominator, "lambda_{n+1} + Btilde_n P_n(k2)/P_{n-1}(k2) vanishes");
    const double eta = -lam / den;
    rc.eta[idx(n)] = eta;
    rc.alpha[idx(n)] = 1.0 + eta;
    rc.gamma[idx(n)] = family.c(n + 1) * (1.0 + eta) - g.A[idx(n + 1)] + eta * ratio(c2, n + 1) -
                       eta * Btilde[idx(n)];
  }
  return rc;
}

double recovered_geronimus(const FamilySpec& family, const GeronimusData& g, double k2,
                           const std::vector<double>& Btilde, const RecoveryCoefficients& rc,
                           int n, double x) {
  require_degree(n, 1, static_cast<int>(rc.alpha.size()) - 1);
  const KernelContext<double> c2(family, k2, n);
  const double num = geronimus_poly(family, g, n + 1, x) + rc.eta[idx(n)] * (x - k2) * quasi_star(c2, Btilde, n, x);
  const double ax = rc.alpha[idx(n)] * x;
  return divide_checked(num, ax - rc.gamma[idx(n)], ax, rc.gamma[idx(n)]);
}

RecoveryCoefficients recover_uvarov(const FamilySpec& family, const UvarovData& u, double k2,
                                    const std::vector<double>& Btilde, int n_max) {
  require_size(Btilde, n_max + 1, "Btilde");
  require_degree(n_max, 1, static_cast<int>(u.T.size()) - 1);
  const KernelContext<double> c1(family, u.k, n_max + 1), c2(family, k2, n_max + 1);
  RecoveryCoefficients rc;
  rc.kind = RecoveryKind::Uvarov;
  rc.first_index = 1;
  rc.alpha.assign(idx(n_max) + 1, 0.0);
  rc.beta.assign(idx(n_max) + 1, 0.0);
  rc.eta.assign(idx(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double lam = family.lambda(n + 1);
    const double den = Btilde[idx(n)] * ratio(c2, n) + lam;
    if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(lam)))
      throw Error(Errc::DegenerateDenominator, "Btilde_n P_n(k2)/P_{n-1}(k2) + lambda_{n+1} vanishes");
    const double eta = u.T[idx(n)] * ratio(c1, n) / den;
    rc.eta[idx(n)] = eta;
    rc.alpha[idx(n)] = 1.0 + eta;
    rc.beta[idx(n)] =
        u.k + u.T[idx(n)] + eta * (family.c(n + 1) - Btilde[idx(n)] + ratio(c2, n + 1));
  }
  rc.gamma = rc.beta;
  return rc;
}

double recovered_uvarov(const FamilySpec& family, const UvarovData& u, double k2,
                        const std::vector<double>& Btilde, const RecoveryCoefficients& rc, int n,
                        double x) {
  require_degree(n, 1, static_cast<int>(rc.alpha.size()) - 1);
  const KernelContext<double> c2(family, k2, n);
  const double num = (x - u.k) * uvarov_poly(family, u, n, x) + rc.eta[idx(n)] * (x - k2) * quasi_star(c2, Btilde, n, x);
  const double ax = rc.alpha[idx(n)] * x;
  return divide_checked(num, ax - rc.beta[idx(n)], ax, rc.beta[idx(n)]);
}

namespace {

// Right side of the order-2 constraint at index n.
cplx order2_rhs(const KernelContext<double>& c1, const KernelContext<cplx>& c2,
                const IteratedKernelContext<cplx>& ic, int n) {
  return ratio(c1, n + 2) - c2.pk_ratio()[idx(n + 2)] - ic.star_ratio(n);
}

}  // namespace

std::vector<double> order2_constraint_ltilde(const FamilySpec& family, double k1, cplx k2, cplx k3,
                                             const std::vector<double>& Mtilde, int n_max) {
  require_size(Mtilde, n_max + 1, "Mtilde");
  const KernelContext<double> c1(family, k1, n_max + 1);
  const KernelContext<cplx> c2(family, k2, n_max + 1);
  const IteratedKernelContext<cplx> ic(family, k2, k3, n_max);
  std::vector<double> L(idx(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n)
    L[idx(n)] = order2_rhs(c1, c2, ic, n).real() -
                Mtilde[idx(n)] * ratio(c1, n) / family.lambda(n + 1);
  return L;
}

RecoveryCoefficients recover_order2(const FamilySpec& family, double k1, cplx k2, cplx k3,
                                    const std::vector<double>& Ltilde,
                                    const std::vector<double>& Mtilde, int n_max) {
  require_size(Ltilde, n_max + 1, "Ltilde");
  require_size(Mtilde, n_max + 1, "Mtilde");
  const KernelContext<double> c1(family, k1, n_max + 1);
  const KernelContext<cplx> c2(family, k2, n_max + 1);
  const IteratedKernelContext<cplx> ic(family, k2, k3, n_max);
  RecoveryCoefficients rc;
  rc.kind = RecoveryKind::Order2;
  rc.first_index = 1;
  rc.alpha.assign(idx(n_max) + 1, 0.0);
  rc.beta.assign(idx(n_max) + 1, 0.0);
  rc.beta_without_m.assign(idx(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double lam = family.lambda(n + 1);
    const double L = Ltilde[idx(n)], M = Mtilde[idx(n)];
    const cplx rhs = order2_rhs(c1, c2, ic, n);
    const double lhs = L + M * ratio(c1, n) / lam;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (std::abs(lhs - rhs) > 1e-10 * scale)
      throw Error(Errc::ConstraintViolated,
                  "order-2 constraint fails at n = " + std::to_string(n) + " by " +
                      std::to_string(std::abs(lhs - rhs)));
    const auto& cross = ic.cd_cross();
    const cplx cross_ratio = cross[idx(n + 1)] / cross[idx(n)];
    const double alpha = -M * ratio(c1, n) / lam;
    const double tail = (family.lambda(n + 2) * cross_ratio).real();
    rc.alpha[idx(n)] = alpha;
    rc.beta[idx(n)] = L * ratio(c1, n + 1) - M + tail + alpha * family.c(n + 1);
    rc.beta_without_m[idx(n)] = L * ratio(c1, n + 1) - M + tail - ratio(c1, n) * family.c(n + 1) / lam;
  }
  return rc;
}

cplx recovered_order2(const FamilySpec& family, double k1, cplx k2, cplx k3,
                      const std::vector<double>& Ltilde, const std::vector<double>& Mtilde,
                      const RecoveryCoefficients& rc, int n, cplx x) {
  require_degree(n, 1, static_cast<int>(rc.alpha.size()) - 1);
  const KernelContext<cplx> c1(family, cplx(k1), n + 1);
  const IteratedKernelContext<cplx> ic(family, k2, k3, n);
  const auto s = kernel_sequence(c1, n + 1, x);
  const cplx S = s[idx(n + 1)] + Ltilde[idx(n)] * s[idx(n)] + Mtilde[idx(n)] * s[idx(n - 1)];
  const cplx num = (x - k1) * S - (x - k2) * (x - k3) * iterated_kernel(ic, n, x);
  const cplx ax = rc.alpha[idx(n)] * x;
  const cplx b = rc.beta[idx(n)];
  return divide_checked(num, ax - b, ax, b);
}

}  // namespace opx
