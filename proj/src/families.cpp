#include "opx/families.hpp"

#include <cmath>
#include <numbers>

#include "opx/error.hpp"

namespace opx {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::ShiftInsideSupport: return "ShiftInsideSupport";
    case Errc::KernelUndefined: return "KernelUndefined";
    case Errc::IteratedUndefined: return "IteratedUndefined";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::EvalAtShift: return "EvalAtShift";
    case Errc::PoleAtSample: return "PoleAtSample";
    case Errc::ConstraintViolated: return "ConstraintViolated";
    case Errc::InvalidAlphas: return "InvalidAlphas";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NonConvergent: return "NonConvergent";
    case Errc::Divergent: return "Divergent";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

bool Support::bounded() const noexcept { return std::isfinite(lower) && std::isfinite(upper); }

FamilySpec FamilySpec::chebyshev1() {
  FamilySpec f;
  f.kind_ = FamilyKind::Chebyshev1;
  f.mu0_ = std::numbers::pi;
  f.support_ = {-1.0, 1.0};
  f.name_ = "chebyshev1";
  return f;
}

FamilySpec FamilySpec::laguerre(double gamma) {
  if (!(gamma > -1.0))
    throw Error(Errc::ParameterOutOfRange, "laguerre requires gamma > -1");
  FamilySpec f;
  f.kind_ = FamilyKind::Laguerre;
  f.gamma_ = gamma;
  f.mu0_ = std::tgamma(gamma + 1.0);
  f.support_ = {0.0, std::numeric_limits<double>::infinity()};
  f.name_ = "laguerre";
  return f;
}

FamilySpec FamilySpec::jacobi(double gamma, double delta) {
  if (!(gamma > -1.0) || !(delta > -1.0))
    throw Error(Errc::ParameterOutOfRange, "jacobi requires gamma > -1 and delta > -1");
  FamilySpec f;
  f.kind_ = FamilyKind::Jacobi;
  f.gamma_ = gamma;
  f.delta_ = delta;
  // 2^{g+d+1} B(g+1, d+1), weight (1-x)^gamma (1+x)^delta
  f.mu0_ = std::exp((gamma + delta + 1.0) * std::log(2.0) + std::lgamma(gamma + 1.0) +
                    std::lgamma(delta + 1.0) - std::lgamma(gamma + delta + 2.0));
  f.support_ = {-1.0, 1.0};
  f.name_ = "jacobi";
  return f;
}

FamilySpec FamilySpec::custom(std::vector<Recurrence> table, Support support, std::string name) {
  if (table.empty())
    throw Error(Errc::ParameterOutOfRange, "custom family needs at least one recurrence row");
  if (!(table.front().lambda > 0.0))
    throw Error(Errc::ParameterOutOfRange, "custom family needs lambda_1 = mu0 > 0");
  FamilySpec f;
  f.kind_ = FamilyKind::Custom;
  f.mu0_ = table.front().lambda;
  f.support_ = support;
  f.name_ = std::move(name);
  f.table_ = std::make_shared<const std::vector<Recurrence>>(std::move(table));
  return f;
}

int FamilySpec::max_index() const noexcept {
  if (kind_ == FamilyKind::Custom) return static_cast<int>(table_->size());
  return std::numeric_limits<int>::max();
}

Recurrence FamilySpec::coeff(int n) const {
  if (n < 1 || n > max_index())
    throw Error(Errc::IndexOutOfRange,
                "recurrence index " + std::to_string(n) + " outside 1.." + std::to_string(max_index()));
  // m = n - 1 is the index of the row in the x P_m = P_{m+1} + c_{m+1} P_m + ... form.
  const double m = n - 1;
  switch (kind_) {
    case FamilyKind::Chebyshev1:
      if (n == 1) return {0.0, mu0_};
      return {0.0, n == 2 ? 0.5 : 0.25};
    case FamilyKind::Laguerre:
      return {2.0 * m + gamma_ + 1.0, n == 1 ? mu0_ : m * (m + gamma_)};
    case FamilyKind::Jacobi: {
      const double g = gamma_, d = delta_, s = g + d;
      const double c = n == 1 ? (d - g) / (s + 2.0)
                              : (d * d - g * g) / ((2.0 * m + s) * (2.0 * m + s + 2.0));
      if (n == 1) return {c, mu0_};
      if (n == 2)  // the (2m+s-1) factor cancels against (m+s) at m = 1
        return {c, 4.0 * (1.0 + g) * (1.0 + d) / ((2.0 + s) * (2.0 + s) * (3.0 + s))};
      const double t = 2.0 * m + s;
      return {c, 4.0 * m * (m + g) * (m + d) * (m + s) / (t * t * (t + 1.0) * (t - 1.0))};
    }
    case FamilyKind::Custom:
      return (*table_)[static_cast<std::size_t>(n - 1)];
  }
  return {};
}

std::vector<Recurrence> recurrence_coefficients(const FamilySpec& family, int n_max) {
  if (n_max < 1) throw Error(Errc::ParameterOutOfRange, "n_max must be >= 1");
  std::vector<Recurrence> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const Recurrence r = family.coeff(n);
    if (n >= 2 && !(r.lambda > 0.0))
      throw Error(Errc::NotPositiveDefinite, "lambda_" + std::to_string(n) + " <= 0");
    out.push_back(r);
  }
  return out;
}

template <Scalar T>
PolySequence<T> eval_sequence(const FamilySpec& family, int n, T x, bool with_derivs) {
  if (n < 0) throw Error(Errc::ParameterOutOfRange, "degree must be >= 0");
  PolySequence<T> seq;
  seq.x = x;
  seq.values.resize(static_cast<std::size_t>(n) + 1);
  seq.values[0] = T(1);
  if (with_derivs) seq.derivs.assign(static_cast<std::size_t>(n) + 1, T(0));
  if (n == 0) return seq;

  const Recurrence r1 = family.coeff(1);
  seq.values[1] = x - r1.c;
  if (with_derivs) seq.derivs[1] = T(1);
  for (int j = 1; j < n; ++j) {
    const Recurrence r = family.coeff(j + 1);
    const auto uj = static_cast<std::size_t>(j);
    seq.values[uj + 1] = (x - r.c) * seq.values[uj] - r.lambda * seq.values[uj - 1];
    if (with_derivs)
      seq.derivs[uj + 1] = seq.values[uj] + (x - r.c) * seq.derivs[uj] - r.lambda * seq.derivs[uj - 1];
  }
  return seq;
}

template PolySequence<double> eval_sequence(const FamilySpec&, int, double, bool);
template PolySequence<cplx> eval_sequence(const FamilySpec&, int, cplx, bool);

std::vector<double> norm_products(const FamilySpec& family, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  double prod = 1.0;
  for (int j = 0; j <= n; ++j) {
    prod *= family.lambda(j + 1);
    out[static_cast<std::size_t>(j)] = prod;
  }
  return out;
}

}  // namespace opx
