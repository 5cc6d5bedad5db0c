#include "opx/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "opx/error.hpp"

namespace opx {

ConfluentCd confluent_cd(const FamilySpec& family, int n, double x) {
  if (n < 0) throw Error(Errc::ParameterOutOfRange, "confluent CD needs n >= 0");
  const auto seq = eval_sequence(family, n + 1, x, true);
  const auto norms = norm_products(family, n);
  const auto un = static_cast<std::size_t>(n);
  ConfluentCd out;
  for (std::size_t j = 0; j <= un; ++j) out.lhs += seq.values[j] * seq.values[j] / norms[j];
  out.rhs = (seq.derivs[un + 1] * seq.values[un] - seq.values[un + 1] * seq.derivs[un]) / norms[un];
  return out;
}

template <Scalar T>
KernelRatioLimit<T> kernel_ratio_limit(const KernelContext<T>& ctx, int n) {
  ctx.require(n);
  const auto un = static_cast<std::size_t>(n);
  const T r = ctx.pk_ratio()[un + 1];
  const double lam = ctx.family().lambda(n + 2);
  const T t = ctx.cd_terms()[un + 1];
  KernelRatioLimit<T> out;
  out.r_up = lam / r * (T(1) + t / ctx.cd_partials()[un]);
  out.r_down = r / lam * (T(1) - t / ctx.cd_partials()[un + 1]);
  return out;
}

template KernelRatioLimit<double> kernel_ratio_limit(const KernelContext<double>&, int);
template KernelRatioLimit<cplx> kernel_ratio_limit(const KernelContext<cplx>&, int);

double op_kernel_ratio_limit(const KernelContext<double>& ctx, int n) {
  ctx.require(n);
  const auto u = static_cast<std::size_t>(n) + 1;
  return ctx.cd_terms()[u] / ctx.cd_partials()[u];
}

namespace {

constexpr double cf_floor = 1e-300;
constexpr double cf_accept = 1e-13;

struct Pass {
  double value = 0.0;
  bool floored = false;
};

Pass run(const ContinuedFraction& cf, int depth) {
  Pass p;
  double u = 1.0;
  for (int j = depth; j >= 1; --j) {
    if (std::abs(u) < cf_floor) {
      u = std::copysign(cf_floor, u);
      p.floored = true;
    }
    const auto [a, s] = cf.partials(j);
    u = 1.0 + s * a / u;
  }
  if (!(std::abs(u) >= cf_floor) || !std::isfinite(u))
    throw Error(Errc::ZeroDenominator, "continued fraction has a vanishing outer denominator");
  p.value = cf.lead / u;
  return p;
}

bool nonpositive_integer(double v) { return v <= 0.0 && v == std::round(v); }

void require_r(double r) {
  if (nonpositive_integer(r))
    throw Error(Errc::ParameterOutOfRange, "r must not be 0, -1, -2, ...");
}

}  // namespace

CfResult evaluate(const ContinuedFraction& cf) {
  if (cf.depth < 1) throw Error(Errc::ParameterOutOfRange, "continued fraction depth must be >= 1");
  const int cap = std::max(64 * cf.depth, 1024);
  for (int depth = cf.depth; depth <= cap; depth *= 2) {
    const Pass a = run(cf, depth);
    const Pass b = run(cf, depth + 10);
    if (std::abs(a.value - b.value) <= cf_accept * std::abs(b.value)) {
      return {b.value, depth + 10, a.floored || b.floored};
    }
  }
  throw Error(Errc::NonConvergent,
              "continued fraction not settled at depth " + std::to_string(cap));
}

double gauss_g(double p, double q, double r, int j) {
  if (j < 0) throw Error(Errc::IndexOutOfRange, "g_j needs j >= 0");
  if (j == 0) return 0.0;
  const int k = (j + 1) / 2;
  if (j % 2 == 0) return (p + k) / (r + 2 * k - 1);
  return (q + k - 1) / (r + 2 * k - 2);
}

double kummer_d(double p, double r, int j) {
  if (j < 1) throw Error(Errc::IndexOutOfRange, "d_j needs j >= 1");
  if (j == 1) return 1.0 / r;
  const int k = (j + 1) / 2;
  if (j % 2 == 0) return -(p + k) / ((r + 2 * k - 1) * (r + 2 * k - 2));
  return (r - p + k - 2) / ((r + 2 * k - 3) * (r + 2 * k - 2));
}

double gauss_cf_ratio(double p, double q, double r, double z, int depth) {
  require_r(r);
  ContinuedFraction cf;
  cf.depth = depth;
  cf.partials = [=](int j) {
    return std::pair{(1.0 - gauss_g(p, q, r, j - 1)) * gauss_g(p, q, r, j) * z, -1};
  };
  return evaluate(cf).value;
}

double kummer_cf_ratio(double p, double r, double z, int depth) {
  require_r(r);
  ContinuedFraction cf;
  cf.depth = depth;
  cf.partials = [=](int j) { return std::pair{kummer_d(p, r, j) * z, -1}; };
  return evaluate(cf).value;
}

double laguerre_dtilde(double gamma, int n, int j) { return kummer_d(-n, gamma + 2.0, j); }

double laguerre_dprime(double gamma, int n, int j) {
  if (j < 1) throw Error(Errc::IndexOutOfRange, "d'_j needs j >= 1");
  const int k = (j - 1) / 2;
  if (j % 2 == 1) return (n + k + gamma + 1) / ((gamma + 2 * k + 1) * (gamma + 2 * k + 2));
  return (1.0 - n + k) / ((gamma + 2 * k + 2) * (gamma + 2 * k + 3));
}

double laguerre_dprime_shifted(double gamma, int n, int j) {
  if (j < 1) throw Error(Errc::IndexOutOfRange, "d'_j needs j >= 1");
  const int k = (j - 1) / 2;
  const double den = (gamma + 2 * k + 1) * (gamma + 2 * k + 2);
  if (j % 2 == 1) return (n + k + gamma + 1) / den;
  return (1.0 - n + k) / den;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

double log_binom(double top, double m) {
  return std::lgamma(top + 1.0) - std::lgamma(m + 1.0) - std::lgamma(top - m + 1.0);
}

// log of the leading coefficient of the classical Jacobi P^{(a,b)}_m.
double log_jacobi_lead(int m, double a, double b) {
  return std::lgamma(2.0 * m + a + b + 1.0) - std::lgamma(m + a + b + 1.0) - m * std::log(2.0) -
         std::lgamma(m + 1.0);
}

}  // namespace

LaguerreRatio laguerre_ratio_cf(double gamma, int n, double x, int depth) {
  if (!(gamma > -1.0)) throw Error(Errc::ParameterOutOfRange, "Laguerre needs gamma > -1");
  if (n < 1) throw Error(Errc::ParameterOutOfRange, "Laguerre ratio needs n >= 1");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const double dn = n;

  LaguerreRatio out;
  ContinuedFraction cf;
  cf.depth = depth;
  cf.partials = [=](int j) { return std::pair{laguerre_dtilde(gamma, n, j) * x, 1}; };
  out.cf_value = evaluate(cf).value;
  out.same_param_prefactor =
      std::sqrt(std::exp(log_beta(dn, gamma + 2.0) - std::log(dn) - log_beta(dn, gamma + 1.0))) /
      (dn * dn);

  const KernelContext<double> same(FamilySpec::laguerre(gamma), 0.0, n);
  out.direct_same = kernel_poly(same, n - 1, -x) / kernel_poly(same, n, -x);

  out.mixed_param_prefactor = nan;
  out.monic_same = -1.0 / (gamma + dn + 1.0);
  out.mixed_cf_value = nan;
  out.mixed_cf_shifted = nan;
  out.monic_mixed = nan;
  out.mixed_series_value = nan;
  out.direct_mixed = nan;
  if (gamma > 0.0) {
    out.mixed_param_prefactor =
        gamma * gamma / (std::pow(dn, 1.5) * (dn + gamma) * (gamma + 1.0) * (dn + gamma - 1.0));
    ContinuedFraction mixed;
    mixed.depth = depth;
    mixed.partials = [=](int j) {
      return std::pair{laguerre_dprime(gamma, n, j) * x, j % 2 == 1 ? 1 : -1};
    };
    out.mixed_cf_value = evaluate(mixed).value;
    mixed.partials = [=](int j) {
      return std::pair{laguerre_dprime_shifted(gamma, n, j) * x, j % 2 == 1 ? 1 : -1};
    };
    out.mixed_cf_shifted = evaluate(mixed).value;
    out.monic_mixed = -1.0 / (gamma + 1.0);
    out.mixed_series_value = hyp_series(HypKind::F11, {-dn + 1.0, gamma + 2.0}, -x) /
                             hyp_series(HypKind::F11, {-dn, gamma + 1.0}, -x);
    const KernelContext<double> lower(FamilySpec::laguerre(gamma - 1.0), 0.0, n);
    out.direct_mixed = kernel_poly(same, n - 1, -x) / kernel_poly(lower, n, -x);
  }
  return out;
}

double jacobi_e(double gamma, double delta, int n, int j) {
  return gauss_g(-n, n + gamma + delta + 1.0, gamma + 2.0, j);
}

JacobiRatio jacobi_ratio_cf(double gamma, double delta, int n, double x, int depth) {
  if (!(gamma > -1.0) || !(delta > 0.0))
    throw Error(Errc::ParameterOutOfRange, "Jacobi ratio needs gamma > -1 and delta > 0");
  if (n < 1) throw Error(Errc::ParameterOutOfRange, "Jacobi ratio needs n >= 1");
  const double dn = n;
  const double t = (1.0 - x) / 2.0;

  JacobiRatio out;
  ContinuedFraction cf;
  cf.depth = depth;
  cf.partials = [=](int j) {
    return std::pair{(1.0 - jacobi_e(gamma, delta, n, j - 1)) * jacobi_e(gamma, delta, n, j) * t,
                     -1};
  };
  out.cf_value = evaluate(cf).value;

  const double s = gamma + delta;
  const double num = (s + 2.0) * (s + 2.0) * (2.0 * dn + s + 1.0) * std::pow(2.0 * dn + s, 3.0);
  const double den =
      32.0 * dn * dn * dn * (dn + gamma + 1.0) * (gamma + 1.0) * (gamma + 1.0) * delta * delta;
  out.prefactor = std::sqrt(num / den);

  const KernelContext<double> top(FamilySpec::jacobi(gamma, delta), 1.0, n);
  const KernelContext<double> bottom(FamilySpec::jacobi(gamma, delta - 1.0), 1.0, n);
  out.direct = kernel_poly(top, n - 1, x) / kernel_poly(bottom, n, x);
  out.monic_factor = std::exp(log_binom(dn + gamma, dn - 1.0) - log_jacobi_lead(n - 1, gamma + 1.0, delta) -
                              log_binom(dn + gamma + 1.0, dn) +
                              log_jacobi_lead(n, gamma + 1.0, delta - 1.0));
  return out;
}

double hyp_series(HypKind kind, const std::vector<double>& params, double z, int terms) {
  const std::size_t want = kind == HypKind::F21 ? 3 : 2;
  if (params.size() != want)
    throw Error(Errc::ParameterOutOfRange, "hyp_series needs {p, q, r} or {p, r}");
  if (terms < 1) throw Error(Errc::ParameterOutOfRange, "hyp_series needs terms >= 1");
  const double r = params.back();
  const std::size_t nnum = want - 1;
  bool terminating = false;
  for (std::size_t i = 0; i < nnum; ++i) terminating |= nonpositive_integer(params[i]);
  if (!terminating) require_r(r);
  if (kind == HypKind::F21 && !terminating && std::abs(z) >= 1.0)
    throw Error(Errc::Divergent, "2F1 series diverges for |z| >= 1");

  // Terminating sums with z near 1 cancel heavily; 50 digits keep the result exact to double.
  using Wide = boost::multiprecision::cpp_bin_float_50;
  Wide sum = 1, term = 1;
  for (int m = 0; m + 1 < terms || terminating; ++m) {
    Wide f = Wide(z) / ((Wide(r) + m) * (m + 1));
    for (std::size_t i = 0; i < nnum; ++i) f *= Wide(params[i]) + m;
    term *= f;
    if (term == 0) break;
    sum += term;
  }
  return static_cast<double>(sum);
}

namespace {

// Minimal parameters up to n_max; stops early (returns false) when 1 - m_{n-1} = 0.
bool minimal(const std::vector<double>& l, int n_max, std::vector<double>& m) {
  m.assign(1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double den = 1.0 - m.back();
    if (den == 0.0) return false;
    m.push_back(l[static_cast<std::size_t>(n - 1)] / den);
  }
  return true;
}

bool in_open_unit(const std::vector<double>& m) {
  return std::all_of(m.begin() + 1, m.end(), [](double v) { return v > 0.0 && v < 1.0; });
}

}  // namespace

ChainSequence chain_params(const std::vector<double>& l, int n_max) {
  if (n_max < 1) throw Error(Errc::ParameterOutOfRange, "chain needs n_max >= 1");
  if (static_cast<int>(l.size()) < n_max)
    throw Error(Errc::IndexOutOfRange, "chain sequence shorter than n_max");
  ChainSequence out;
  out.l.assign(l.begin(), l.begin() + n_max);
  if (!minimal(out.l, n_max, out.m))
    throw Error(Errc::DivisionByZero,
                "minimal parameter m_" + std::to_string(out.m.size() - 1) + " equals 1");
  out.positive = in_open_unit(out.m);
  for (double v : out.l) out.complement_l.push_back(1.0 - v);
  const bool full = minimal(out.complement_l, n_max, out.complement_m);
  out.complement_positive = full && in_open_unit(out.complement_m);
  return out;
}

std::vector<double> gauss_chain(double p, double q, double r, int n_max) {
  require_r(r);
  std::vector<double> l;
  for (int j = 1; j <= n_max; ++j) l.push_back((1.0 - gauss_g(p, q, r, j - 1)) * gauss_g(p, q, r, j));
  return l;
}

}  // namespace opx
