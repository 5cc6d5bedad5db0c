#include "opx/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opx/error.hpp"
#include "opx/moments.hpp"

namespace opx {
namespace {

constexpr double zero_threshold = 1e-13;

std::string degree_msg(int j) { return "P_" + std::to_string(j) + "(k) vanishes"; }

}  // namespace

template <Scalar T>
KernelContext<T>::KernelContext(FamilySpec family, T k, int n_max)
    : family_(std::move(family)), k_(k), n_max_(n_max) {
  if (n_max < 0) throw Error(Errc::ParameterOutOfRange, "kernel context needs n_max >= 0");
  const auto top = static_cast<std::size_t>(n_max) + 1;
  pk_.assign(top + 1, T(1));
  ratio_.assign(top + 1, T(1));
  terms_.assign(top + 1, T(0));
  partials_.assign(top + 1, T(0));
  norms_.assign(top + 1, 0.0);

  const auto coeffs = recurrence_coefficients(family_, static_cast<int>(top) + 1);
  // A zero is judged against the size of the terms that cancelled to produce it,
  // so geometrically small but healthy values (e.g. 2^{1-n} at k = 1) pass.
  for (std::size_t j = 1; j <= top; ++j) {
    const Recurrence& r = coeffs[j - 1];
    double scale = 0.0;
    if (j == 1) {
      ratio_[1] = k - r.c;
      scale = std::max({1.0, std::abs(k), std::abs(r.c)});
    } else {
      ratio_[j] = (k - r.c) - r.lambda / ratio_[j - 1];
      scale = std::abs(k - r.c) + r.lambda / std::abs(ratio_[j - 1]);
    }
    pk_[j] = ratio_[j] * pk_[j - 1];
    if (j <= static_cast<std::size_t>(n_max) && std::abs(ratio_[j]) < zero_threshold * scale)
      throw Error(Errc::KernelUndefined, degree_msg(static_cast<int>(j)));
  }

  double prod = 1.0;
  for (std::size_t j = 0; j <= top; ++j) {
    prod *= coeffs[j].lambda;
    norms_[j] = prod;
  }
  terms_[0] = T(1) / coeffs[0].lambda;
  partials_[0] = terms_[0];
  for (std::size_t j = 1; j <= top; ++j) {
    terms_[j] = terms_[j - 1] * ratio_[j] * ratio_[j] / coeffs[j].lambda;
    partials_[j] = partials_[j - 1] + terms_[j];
  }
}

template <Scalar T>
void KernelContext<T>::require(int n) const {
  if (n < 0 || n > n_max_)
    throw Error(Errc::IndexOutOfRange,
                "kernel degree " + std::to_string(n) + " outside 0.." + std::to_string(n_max_));
}

double kernel_switch_radius(double abs_k) noexcept { return 1e-4 * (1.0 + abs_k); }

namespace {

template <Scalar T>
bool use_cd_branch(T x, T k, KernelBranch branch) {
  if (branch == KernelBranch::CdSum) return true;
  if (branch == KernelBranch::DividedDifference) return false;
  return std::abs(x - k) < kernel_switch_radius(std::abs(k));
}

}  // namespace

template <Scalar T>
std::vector<T> kernel_sequence(const KernelContext<T>& ctx, int n, T x, KernelBranch branch) {
  ctx.require(n);
  const auto seq = eval_sequence(ctx.family(), n + 1, x);
  const auto& ratio = ctx.pk_ratio();
  std::vector<T> out(static_cast<std::size_t>(n) + 1);
  if (use_cd_branch(x, ctx.k(), branch)) {
    // P*_j = P_j + (lambda_{j+1} / r_j) P*_{j-1}, the CD sum accumulated by degree.
    out[0] = T(1);
    for (int j = 1; j <= n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      out[uj] = seq.values[uj] + ctx.family().lambda(j + 1) / ratio[uj] * out[uj - 1];
    }
    return out;
  }
  const T dx = x - ctx.k();
  for (int j = 0; j <= n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    out[uj] = (seq.values[uj + 1] - ratio[uj + 1] * seq.values[uj]) / dx;
  }
  return out;
}

template <Scalar T>
T kernel_poly(const KernelContext<T>& ctx, int n, T x, KernelBranch branch) {
  ctx.require(n);
  if (use_cd_branch(x, ctx.k(), branch)) return kernel_sequence(ctx, n, x, branch).back();
  const auto seq = eval_sequence(ctx.family(), n + 1, x);
  const auto un = static_cast<std::size_t>(n);
  return (seq.values[un + 1] - ctx.pk_ratio()[un + 1] * seq.values[un]) / (x - ctx.k());
}

template <Scalar T>
std::vector<KernelCoeff<T>> kernel_recurrence(const KernelContext<T>& ctx, int n_max) {
  if (n_max < 1) throw Error(Errc::ParameterOutOfRange, "kernel recurrence needs n_max >= 1");
  ctx.require(n_max);
  const auto& r = ctx.pk_ratio();
  const FamilySpec& f = ctx.family();
  std::vector<KernelCoeff<T>> out(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const auto un = static_cast<std::size_t>(n);
    KernelCoeff<T> row;
    row.c = f.c(n + 1) - r[un] + r[un + 1];
    row.lambda = n == 1 ? f.mu0() * (f.c(1) - ctx.k()) : f.lambda(n) * r[un] / r[un - 1];
    out[un - 1] = row;
  }
  return out;
}

template <Scalar T>
T cd_kernel(const KernelContext<T>& ctx, int n, T x) {
  ctx.require(n);
  const auto seq = eval_sequence(ctx.family(), n, x);
  T sum{};
  for (int j = 0; j <= n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    sum += seq.values[uj] * ctx.pk()[uj] / ctx.norms()[uj];
  }
  return sum;
}

template <Scalar T>
T cd_kernel_closed(const KernelContext<T>& ctx, int n, T x) {
  ctx.require(n);
  if (x == ctx.k()) throw Error(Errc::EvalAtShift, "closed CD form is singular at x = k");
  const auto seq = eval_sequence(ctx.family(), n + 1, x);
  const auto un = static_cast<std::size_t>(n);
  const auto& pk = ctx.pk();
  return (seq.values[un + 1] * pk[un] - pk[un + 1] * seq.values[un]) /
         ((x - ctx.k()) * ctx.norms()[un]);
}

template <Scalar T>
T op_from_kernels(const KernelContext<T>& ctx, int n, T x) {
  ctx.require(n + 1);
  const auto ks = kernel_sequence(ctx, n + 1, x);
  const auto un = static_cast<std::size_t>(n);
  return ks[un + 1] - ctx.family().lambda(n + 2) / ctx.pk_ratio()[un + 1] * ks[un];
}

template <Scalar T>
IteratedKernelContext<T>::IteratedKernelContext(FamilySpec family, T k2, T k3, int n_max)
    : base_(std::move(family), k2, n_max + 1), k3_(k3), n_max_(n_max) {
  const auto top = static_cast<std::size_t>(n_max) + 1;
  const auto seq3 = eval_sequence(base_.family(), static_cast<int>(top), k3);
  cross_.assign(top + 1, T(0));
  T sum{};
  double mass = 0.0;
  for (std::size_t j = 0; j <= top; ++j) {
    const T term = seq3.values[j] * base_.pk()[j] / base_.norms()[j];
    sum += term;
    mass += std::abs(term);
    cross_[j] = sum;
    if (std::abs(sum) < zero_threshold * mass)
      throw Error(Errc::IteratedUndefined, "cross sum " + std::to_string(j) + " vanishes");
  }
  star_ = kernel_sequence(base_, static_cast<int>(top), k3);
  for (std::size_t j = 0; j <= top; ++j)
    if (star_[j] == T(0))
      throw Error(Errc::IteratedUndefined, "P*_" + std::to_string(j) + "(k2;k3) vanishes");
  coeffs_ = kernel_recurrence(base_, static_cast<int>(top));
}

template <Scalar T>
T IteratedKernelContext<T>::star_ratio(int n) const {
  if (n < 0 || n > n_max_) throw Error(Errc::IndexOutOfRange, "iterated index out of range");
  const auto un = static_cast<std::size_t>(n);
  return star_[un + 1] / star_[un];
}

template <Scalar T>
T IteratedKernelContext<T>::cross_ratio(int n) const {
  if (n < 0 || n > n_max_) throw Error(Errc::IndexOutOfRange, "iterated index out of range");
  const auto un = static_cast<std::size_t>(n);
  return base_.family().lambda(n + 2) / base_.pk_ratio()[un + 1] * cross_[un + 1] / cross_[un];
}

template <Scalar T>
T iterated_kernel(const IteratedKernelContext<T>& ictx, int n, T x) {
  if (n < 0 || n > ictx.n_max()) throw Error(Errc::IndexOutOfRange, "iterated degree out of range");
  const T k3 = ictx.second_shift();
  const auto ks = kernel_sequence(ictx.base(), n + 1, x);
  const auto un = static_cast<std::size_t>(n);
  if (std::abs(x - k3) >= kernel_switch_radius(std::abs(k3)))
    return (ks[un + 1] - ictx.star_ratio(n) * ks[un]) / (x - k3);
  const auto& star = ictx.star_values();
  const auto& coeffs = ictx.kernel_coeffs();
  T value = T(1);
  for (std::size_t j = 1; j <= un; ++j)
    value = ks[j] + coeffs[j].lambda / (star[j] / star[j - 1]) * value;
  return value;
}

double product_orthogonality_check(const FamilySpec& family, int n, int m, int quad_order) {
  if (n < 0 || m < 0) throw Error(Errc::ParameterOutOfRange, "degrees must be >= 0");
  if (quad_order < n + m + 3)
    throw Error(Errc::ParameterOutOfRange, "quad_order must be >= n + m + 3");
  const int top = std::max(n, m);
  const auto rule = gauss_rule(family, quad_order);
  const auto norms = norm_products(family, top);
  const std::size_t q = rule.nodes.size();

  std::vector<std::vector<double>> p(q);
  for (std::size_t i = 0; i < q; ++i) {
    auto seq = eval_sequence(family, top, rule.nodes[i]);
    for (int j = 0; j <= top; ++j)
      seq.values[static_cast<std::size_t>(j)] /= std::sqrt(norms[static_cast<std::size_t>(j)]);
    p[i] = std::move(seq.values);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t l = 0; l < q; ++l) {
      double kn = 0.0, km = 0.0;
      for (int j = 0; j <= top; ++j) {
        const double prod = p[i][static_cast<std::size_t>(j)] * p[l][static_cast<std::size_t>(j)];
        if (j <= n) kn += prod;
        if (j <= m) km += prod;
      }
      const double d = rule.nodes[i] - rule.nodes[l];
      total += rule.weights[i] * rule.weights[l] * d * d * kn * km;
    }
  return total;
}

double product_orthogonality_expected(const FamilySpec& family, int n) {
  return 2.0 * family.lambda(n + 2);
}

template class KernelContext<double>;
template class KernelContext<cplx>;
template class IteratedKernelContext<double>;
template class IteratedKernelContext<cplx>;

#define OPX_KERNEL_INSTANTIATE(T)                                                           \
  template T kernel_poly(const KernelContext<T>&, int, T, KernelBranch);                   \
  template std::vector<T> kernel_sequence(const KernelContext<T>&, int, T, KernelBranch);  \
  template std::vector<KernelCoeff<T>> kernel_recurrence(const KernelContext<T>&, int);    \
  template T cd_kernel(const KernelContext<T>&, int, T);                                   \
  template T cd_kernel_closed(const KernelContext<T>&, int, T);                            \
  template T op_from_kernels(const KernelContext<T>&, int, T);                             \
  template T iterated_kernel(const IteratedKernelContext<T>&, int, T);

OPX_KERNEL_INSTANTIATE(double)
OPX_KERNEL_INSTANTIATE(cplx)

#undef OPX_KERNEL_INSTANTIATE

}  // namespace opx
