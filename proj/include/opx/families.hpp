#pragma once

#include <complex>
#include <concepts>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace opx {

using cplx = std::complex<double>;

/// Scalar types accepted at evaluation points and shifts.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, cplx>;

enum class FamilyKind { Chebyshev1, Laguerre, Jacobi, Custom };

/// One row of the monic three-term recurrence
///   x P_{n-1}(x) = P_n(x) + c_n P_{n-1}(x) + lambda_n P_{n-2}(x),
/// indexed from n = 1. lambda_1 is the total mass mu0.
struct Recurrence {
  double c = 0.0;
  double lambda = 0.0;
};

/// Closed or half-infinite real interval carrying the orthogonality measure.
struct Support {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x >= lower && x <= upper; }
  bool bounded() const noexcept;
};

/// A moment functional given by its recurrence coefficients.
///
/// Classical families generate coefficients on demand; custom families read
/// them from a table and refuse indices beyond it. Instances are immutable and
/// cheap to copy (the custom table is shared).
class FamilySpec {
 public:
  static FamilySpec chebyshev1();
  static FamilySpec laguerre(double gamma);
  static FamilySpec jacobi(double gamma, double delta);
  /// `table[0]` is the n = 1 row; its lambda is taken as mu0.
  static FamilySpec custom(std::vector<Recurrence> table, Support support,
                           std::string name = "custom");

  FamilyKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }
  const Support& support() const noexcept { return support_; }
  const std::string& name() const noexcept { return name_; }

  /// 1-based recurrence row. Throws IndexOutOfRange past a custom table.
  Recurrence coeff(int n) const;
  double c(int n) const { return coeff(n).c; }
  double lambda(int n) const { return coeff(n).lambda; }
  double mu0() const { return coeff(1).lambda; }

  /// Largest n for which coeff(n) is defined.
  int max_index() const noexcept;

 private:
  FamilyKind kind_ = FamilyKind::Chebyshev1;
  double gamma_ = 0.0;
  double delta_ = 0.0;
  double mu0_ = 0.0;
  Support support_{};
  std::string name_;
  std::shared_ptr<const std::vector<Recurrence>> table_;
};

/// Rows n = 1..n_max. Throws NotPositiveDefinite if some lambda_n <= 0 for n >= 2.
std::vector<Recurrence> recurrence_coefficients(const FamilySpec& family, int n_max);

/// Values (and optionally first derivatives) of P_0..P_n at one point.
template <Scalar T>
struct PolySequence {
  T x{};
  std::vector<T> values;
  std::vector<T> derivs;

  bool has_derivs() const noexcept { return !derivs.empty(); }
  int degree() const noexcept { return static_cast<int>(values.size()) - 1; }
};

template <Scalar T>
PolySequence<T> eval_sequence(const FamilySpec& family, int n, T x, bool with_derivs = false);

/// Squared norms L(P_j^2) = lambda_1 ... lambda_{j+1} for j = 0..n.
std::vector<double> norm_products(const FamilySpec& family, int n);

}  // namespace opx
