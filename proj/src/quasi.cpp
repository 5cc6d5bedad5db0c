#include "opx/quasi.hpp"

#include <algorithm>
#include <cmath>

#include "opx/error.hpp"

namespace opx {

template <Scalar T>
T quasi_kernel(const KernelContext<T>& ctx, const QuasiSpec& spec, int n, T x) {
  if (spec.order == 1) {
    if (spec.a == 0.0 && spec.b == 0.0)
      throw Error(Errc::ParameterOutOfRange, "order-1 quasi kernel needs (a, b) != (0, 0)");
    const auto ks = kernel_sequence(ctx, n + 1, x);
    const auto un = static_cast<std::size_t>(n);
    return spec.a * ks[un + 1] + spec.b * ks[un];
  }
  if (spec.order == 2) {
    if (n < 2) throw Error(Errc::ParameterOutOfRange, "order-2 quasi kernel needs n >= 2");
    const auto ks = kernel_sequence(ctx, n, x);
    const auto un = static_cast<std::size_t>(n);
    return ks[un] + spec.Ltilde * ks[un - 1] + spec.Mtilde * ks[un - 2];
  }
  throw Error(Errc::ParameterOutOfRange, "quasi kernel order must be 1 or 2");
}

template double quasi_kernel(const KernelContext<double>&, const QuasiSpec&, int, double);
template cplx quasi_kernel(const KernelContext<cplx>&, const QuasiSpec&, int, cplx);

DifferenceEqCoeffs difference_equation_coeffs(const KernelContext<double>& ctx, double b, int n) {
  if (n < 1) throw Error(Errc::ParameterOutOfRange, "difference equation needs n >= 1");
  const auto rows = kernel_recurrence(ctx, n + 2);
  auto cs = [&](int j) { return rows[static_cast<std::size_t>(j - 1)].c; };
  auto ls = [&](int j) { return rows[static_cast<std::size_t>(j - 1)].lambda; };
  auto D = [&](int j) { return LinearPoly{1.0, -cs(j + 1) + b}; };
  auto J = [&](int j) {
    const LinearPoly d = D(j - 1);
    return LinearPoly{b * d.slope, b * d.intercept + ls(j)};
  };
  DifferenceEqCoeffs out;
  out.n = n;
  out.b = b;
  out.D_n = D(n);
  out.D_n1 = D(n + 1);
  out.J_n = J(n);
  out.J_n1 = J(n + 1);
  out.J_n2 = J(n + 2);
  out.inversion_denominator = {b, b * b + ls(n + 1) - cs(n + 1) * b};
  return out;
}

DifferenceEqResidual difference_equation_residual(const KernelContext<double>& ctx, double b, int n,
                                                  double x) {
  const DifferenceEqCoeffs co = difference_equation_coeffs(ctx, b, n);
  const double lam = kernel_recurrence(ctx, n + 1)[static_cast<std::size_t>(n)].lambda;
  const auto ks = kernel_sequence(ctx, n + 2, x);
  auto Q = [&](int j) {
    const auto uj = static_cast<std::size_t>(j);
    return ks[uj] + (j > 0 ? b * ks[uj - 1] : 0.0);
  };
  const double q0 = Q(n), q1 = Q(n + 1), q2 = Q(n + 2);
  const double d1 = co.D_n1(x), jn = co.J_n(x), jn1 = co.J_n1(x), jn2 = co.J_n2(x);

  auto relative = [](double lhs, double t1, double t2) {
    const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), 1e-300});
    return std::abs(lhs - t1 + t2) / scale;
  };
  DifferenceEqResidual r;
  r.lagged = relative(jn * q2, (d1 * jn - b * jn1) * q1, lam * jn1 * q0);
  r.exact = relative(jn1 * q2, (d1 * jn1 - b * jn2) * q1, lam * jn2 * q0);
  return r;
}

namespace {

using Coeffs = std::vector<double>;

// Multiplication by x in the basis P*_0, P*_1, ...; rows[j] is (c*_{j+1}, lambda*_{j+1}).
Coeffs mul_x(const Coeffs& p, const std::vector<KernelCoeff<double>>& rows) {
  Coeffs out(p.size() + 1, 0.0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    out[j + 1] += p[j];
    out[j] += rows.at(j).c * p[j];
    if (j > 0) out[j - 1] += rows.at(j).lambda * p[j];
  }
  return out;
}

void axpy(Coeffs& y, double a, const Coeffs& x) {
  if (y.size() < x.size()) y.resize(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) y[j] += a * x[j];
}

double max_abs(const Coeffs& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

void flag(std::vector<std::string>& tags, const char* tag) {
  if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.emplace_back(tag);
}

}  // namespace

QkOrthogonalityReport qk_orthogonality_check(const std::vector<KernelCoeff<double>>& rows,
                                             const std::vector<double>& alphas, int n_max,
                                             double tol,
                                             const std::vector<std::vector<double>>& low_order) {
  const int l = static_cast<int>(alphas.size());
  if (l < 1 || alphas.back() == 0.0)
    throw Error(Errc::InvalidAlphas, "need l >= 1 and alpha_l != 0");
  if (n_max < l + 2) throw Error(Errc::ParameterOutOfRange, "n_max must be >= l + 2");
  if (static_cast<int>(rows.size()) < n_max)
    throw Error(Errc::IndexOutOfRange, "kernel table shorter than n_max rows");
  if (!low_order.empty() && static_cast<int>(low_order.size()) != l + 1)
    throw Error(Errc::ParameterOutOfRange, "low_order must hold Q_0..Q_l");

  auto alpha = [&](int m) {
    if (m == 0) return 1.0;
    if (m < 0 || m > l) return 0.0;
    return alphas[static_cast<std::size_t>(m - 1)];
  };
  auto cs = [&](int j) { return rows[static_cast<std::size_t>(j - 1)].c; };
  auto ls = [&](int j) { return rows[static_cast<std::size_t>(j - 1)].lambda; };

  std::vector<Coeffs> Q(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    Coeffs q(static_cast<std::size_t>(n) + 1, 0.0);
    if (n <= l && !low_order.empty()) {
      q = low_order[static_cast<std::size_t>(n)];
      if (static_cast<int>(q.size()) != n + 1 || q.back() != 1.0)
        throw Error(Errc::ParameterOutOfRange, "low_order entries must be monic of matching degree");
    } else {
      for (int m = 0; m <= std::min(n, l); ++m) q[static_cast<std::size_t>(n - m)] = alpha(m);
    }
    Q[static_cast<std::size_t>(n)] = std::move(q);
  }

  QkOrthogonalityReport rep;
  double worst = 0.0;
  auto record = [&](double residual, double scale, const char* tag) {
    const double rel = std::abs(residual) / std::max(scale, 1.0);
    worst = std::max(worst, rel);
    if (!(rel <= tol)) flag(rep.violated_conditions, tag);
  };

  // TTRR fit in coefficient space for every m; which condition a failure
  // belongs to depends on whether Q_{m-1}..Q_{m+1} are low-order or full.
  for (int m = 0; m < n_max; ++m) {
    const auto um = static_cast<std::size_t>(m);
    Coeffs r = mul_x(Q[um], rows);
    axpy(r, -1.0, Q[um + 1]);
    const double scale = max_abs(r);
    const double ct = r[um];
    axpy(r, -ct, Q[um]);
    double lt = 0.0;
    if (m > 0) {
      lt = r[um - 1];
      axpy(r, -lt, Q[um - 1]);
    }
    rep.tilde_c.push_back(ct);
    rep.tilde_lambda.push_back(lt);
    const char* tag = m <= l ? "(i)" : (m == l + 1 ? "(iii)" : "(ii)");
    record(max_abs(r), scale, tag);
    if (m > 0 && m <= l && !(std::abs(lt) > tol * std::max(scale, 1.0))) flag(rep.violated_conditions, "(i)");
  }

  // (ii), n > l + 1: the common value of the first line must be nonzero and
  // agree on both sides; the second line holds for m = 1..l.
  for (int n = l + 2; n < n_max; ++n) {
    const double lhs = ls(n + 1) - ls(n - l + 1);
    const double rhs = alpha(1) * (cs(n + 1) - cs(n));
    const double scale = std::max({std::abs(ls(n + 1)), std::abs(ls(n - l + 1)), std::abs(rhs)});
    record(lhs - rhs, scale, "(ii)");
    if (!(std::abs(rhs) > tol * std::max(scale, 1.0))) flag(rep.violated_conditions, "(ii)");
    const double lt = ls(n + 1) + alpha(1) * (cs(n) - cs(n + 1));
    for (int m = 1; m <= l; ++m) {
      const double t1 = alpha(m) * (cs(n - m + 1) - cs(n + 1));
      const double t2 = alpha(m - 1) * (ls(n - m + 2) - lt);
      record(t1 + t2, std::max(std::abs(t1), std::abs(t2)), "(ii)");
    }
  }

  // (iii), the junction between the low-order Q_l and the full Q_{l+1}, Q_{l+2}.
  {
    const Coeffs& ql = Q[static_cast<std::size_t>(l)];
    auto alpha_l = [&](int m) { return ql[static_cast<std::size_t>(l - m)]; };
    const double lt = ls(l + 2) + alpha(1) * (cs(l + 1) - cs(l + 2));
    if (!(std::abs(lt) > tol * std::max({1.0, std::abs(ls(l + 2))}))) flag(rep.violated_conditions, "(iii)");
    for (int m = 1; m <= l - 1; ++m) {
      const double lhs = alpha(m + 1) * (cs(l + 1 - m) - cs(l + 2)) + alpha(m) * ls(l + 2 - m);
      const double rhs = lt * alpha_l(m);
      record(lhs - rhs, std::max(std::abs(lhs), std::abs(rhs)), "(iii)");
    }
    const double lhs = alpha(l) * ls(2);
    const double rhs = lt * alpha_l(l);
    record(lhs - rhs, std::max(std::abs(lhs), std::abs(rhs)), "(iii)");
  }

  std::sort(rep.violated_conditions.begin(), rep.violated_conditions.end());
  rep.condition_residual = worst;
  rep.satisfied = rep.violated_conditions.empty();

  // u on the P* basis from u(Q_0) = 1, u(Q_i) = 0 (unit lower-triangular solve).
  const auto top = static_cast<std::size_t>(n_max);
  std::vector<double> u(top + 1, 0.0);
  for (std::size_t i = 0; i <= top; ++i) {
    double s = i == 0 ? 1.0 : 0.0;
    for (std::size_t j = 0; j < i; ++j) s -= Q[i][j] * u[j];
    u[i] = s;
  }
  double gram = 0.0;
  for (std::size_t i = 1; i <= top; ++i) {
    Coeffs p = Q[i];
    for (std::size_t m = 0; m < i && m + i <= top; ++m) {
      if (m > 0) p = mul_x(p, rows);
      double value = 0.0, size = 0.0;
      for (std::size_t j = 0; j < p.size(); ++j) {
        value += p[j] * u[j];
        size += std::abs(p[j] * u[j]);
      }
      if (size > 0.0) gram = std::max(gram, std::abs(value) / size);
    }
  }
  rep.gram_residual = gram;
  rep.gram_orthogonal = gram <= tol;
  return rep;
}

QkOrthogonalityReport qk_orthogonality_check(const KernelContext<double>& ctx,
                                             const std::vector<double>& alphas, int n_max,
                                             double tol) {
  return qk_orthogonality_check(kernel_recurrence(ctx, n_max), alphas, n_max, tol);
}

}  // namespace opx
