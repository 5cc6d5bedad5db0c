#pragma once

#include <vector>

#include "opx/families.hpp"

namespace opx {

/// A family together with a shift k at which all P_j(k) are cached.
///
/// Ratios r_j = P_j(k)/P_{j-1}(k) and the Christoffel-Darboux terms
/// P_j(k)^2/(lambda_1...lambda_{j+1}) are accumulated from ratios, so they stay
/// finite long after P_j(k) and the norm products leave double range.
template <Scalar T>
class KernelContext {
 public:
  /// Caches data for kernels of degree 0..n_max (values P_j(k) up to j = n_max + 1).
  /// Throws KernelUndefined if some P_j(k), j <= n_max, vanishes numerically.
  KernelContext(FamilySpec family, T k, int n_max);

  const FamilySpec& family() const noexcept { return family_; }
  T k() const noexcept { return k_; }
  int n_max() const noexcept { return n_max_; }

  /// P_j(k), j = 0..n_max+1.
  const std::vector<T>& pk() const noexcept { return pk_; }
  /// P_j(k)/P_{j-1}(k), j = 1..n_max+1 (entry 0 is 1).
  const std::vector<T>& pk_ratio() const noexcept { return ratio_; }
  /// lambda_1...lambda_{j+1}, j = 0..n_max+1.
  const std::vector<double>& norms() const noexcept { return norms_; }
  /// P_j(k)^2 / norms[j].
  const std::vector<T>& cd_terms() const noexcept { return terms_; }
  /// S_n(k) = sum_{j<=n} cd_terms[j], n = 0..n_max+1.
  const std::vector<T>& cd_partials() const noexcept { return partials_; }

  void require(int n) const;

 private:
  FamilySpec family_;
  T k_;
  int n_max_;
  std::vector<T> pk_, ratio_, terms_, partials_;
  std::vector<double> norms_;
};

enum class KernelBranch { Auto, DividedDifference, CdSum };

/// |x - k| below this uses the CD-sum branch under KernelBranch::Auto.
double kernel_switch_radius(double abs_k) noexcept;

/// Monic kernel polynomial P*_n(k;x).
template <Scalar T>
T kernel_poly(const KernelContext<T>& ctx, int n, T x, KernelBranch branch = KernelBranch::Auto);

/// P*_0(k;x)..P*_n(k;x).
template <Scalar T>
std::vector<T> kernel_sequence(const KernelContext<T>& ctx, int n, T x,
                               KernelBranch branch = KernelBranch::Auto);

/// Recurrence row of the kernel family, same 1-based convention as Recurrence:
///   x P*_{n-1} = P*_n + c*_n P*_{n-1} + lambda*_n P*_{n-2}.
/// lambda*_1 is the Christoffel mass L((x - k)) = mu0 (c_1 - k).
template <Scalar T>
struct KernelCoeff {
  T c{};
  T lambda{};
};

/// Rows n = 1..n_max of the kernel recurrence.
template <Scalar T>
std::vector<KernelCoeff<T>> kernel_recurrence(const KernelContext<T>& ctx, int n_max);

/// K_n(x,k) = sum_{j<=n} P_j(x) P_j(k) / (lambda_1...lambda_{j+1}).
template <Scalar T>
T cd_kernel(const KernelContext<T>& ctx, int n, T x);

/// (P_{n+1}(x)P_n(k) - P_{n+1}(k)P_n(x)) / ((x - k) lambda_1...lambda_{n+1}); x != k.
template <Scalar T>
T cd_kernel_closed(const KernelContext<T>& ctx, int n, T x);

/// P_{n+1}(x) = P*_{n+1}(k;x) - (P_n(k)/P_{n+1}(k)) lambda_{n+2} P*_n(k;x).
template <Scalar T>
T op_from_kernels(const KernelContext<T>& ctx, int n, T x);

/// Kernel polynomials of the kernel family: Christoffel at k2, then at k3.
template <Scalar T>
class IteratedKernelContext {
 public:
  /// Throws IteratedUndefined if a cross sum vanishes for n <= n_max + 1.
  IteratedKernelContext(FamilySpec family, T k2, T k3, int n_max);

  const KernelContext<T>& base() const noexcept { return base_; }
  T second_shift() const noexcept { return k3_; }
  int n_max() const noexcept { return n_max_; }

  /// sum_{j<=n} P_j(k3) P_j(k2) / (lambda_1...lambda_{j+1}), n = 0..n_max+1.
  const std::vector<T>& cd_cross() const noexcept { return cross_; }
  /// P*_j(k2;k3), j = 0..n_max+1.
  const std::vector<T>& star_values() const noexcept { return star_; }
  /// P*_{n+1}(k2;k3) / P*_n(k2;k3) evaluated directly from star_values.
  T star_ratio(int n) const;
  /// The same ratio from cross sums: lambda_{n+2} P_n(k2)/P_{n+1}(k2) * cross[n+1]/cross[n].
  T cross_ratio(int n) const;

  const std::vector<KernelCoeff<T>>& kernel_coeffs() const noexcept { return coeffs_; }

 private:
  KernelContext<T> base_;
  T k3_;
  int n_max_;
  std::vector<T> cross_, star_;
  std::vector<KernelCoeff<T>> coeffs_;
};

/// Monic P**_n(k2,k3;x) = (x - k3)^{-1} [P*_{n+1}(k2;x) - rho_n P*_n(k2;x)],
/// rho_n = P*_{n+1}(k2;k3)/P*_n(k2;k3), with a CD-sum branch near k3.
template <Scalar T>
T iterated_kernel(const IteratedKernelContext<T>& ictx, int n, T x);

/// Tensor Gauss value of the double integral of (x-u)^2 K_n(x,u) K_m(x,u)
/// over dmu(u) dmu(x), with orthonormal K. Needs quad_order >= n + m + 3.
double product_orthogonality_check(const FamilySpec& family, int n, int m, int quad_order);

/// Diagonal value of the double integral: 2 lambda_{n+2} (monic lambda),
/// i.e. twice the squared off-diagonal entry of the orthonormal Jacobi matrix.
double product_orthogonality_expected(const FamilySpec& family, int n);

}  // namespace opx
