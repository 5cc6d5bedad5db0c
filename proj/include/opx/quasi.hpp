#pragma once

#include <string>
#include <vector>

#include "opx/kernels.hpp"

namespace opx {

/// Order 1: a P*_{n+1} + b P*_n. Order 2: P*_n + Ltilde P*_{n-1} + Mtilde P*_{n-2}.
struct QuasiSpec {
  int order = 1;
  double a = 1.0;
  double b = 0.0;
  double Ltilde = 0.0;
  double Mtilde = 0.0;
};

/// Order 1 returns the degree n+1 combination, order 2 the degree n one (n >= 2).
template <Scalar T>
T quasi_kernel(const KernelContext<T>& ctx, const QuasiSpec& spec, int n, T x);

struct LinearPoly {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double x) const noexcept { return slope * x + intercept; }
};

/// D_j(x) = x - c*_{j+1} + b and J_j(x) = b D_{j-1}(x) + lambda*_j around index n.
struct DifferenceEqCoeffs {
  int n = 0;
  double b = 0.0;
  LinearPoly D_n, D_n1;          // D_n, D_{n+1}
  LinearPoly J_n, J_n1, J_n2;    // J_n, J_{n+1}, J_{n+2}
  /// b^2 + lambda*_{n+1} + (x - c*_{n+1}) b, the determinant that inverts the
  /// map from (P*_{n+1}, P*_n) to (Q*_{n+1}, Q*_n); identical to J_{n+1}.
  LinearPoly inversion_denominator;
};

/// Needs n >= 1 and the context valid to n + 2.
DifferenceEqCoeffs difference_equation_coeffs(const KernelContext<double>& ctx, double b, int n);

/// Residuals of the two forms, each divided by the largest term involved.
///   lagged: J_n Q*_{n+2} = [D_{n+1} J_n - b J_{n+1}] Q*_{n+1} - lambda*_{n+1} J_{n+1} Q*_n
///   exact:  J_{n+1} Q*_{n+2} = [D_{n+1} J_{n+1} - b J_{n+2}] Q*_{n+1} - lambda*_{n+1} J_{n+2} Q*_n
/// with Q*_j = P*_j + b P*_{j-1}.
struct DifferenceEqResidual {
  double lagged = 0.0;
  double exact = 0.0;
};

DifferenceEqResidual difference_equation_residual(const KernelContext<double>& ctx, double b, int n,
                                                  double x);

struct QkOrthogonalityReport {
  bool satisfied = false;
  /// Entry m holds the fitted c~_{m+1} and lambda~_{m+1} of
  /// x Q_m = Q_{m+1} + c~_{m+1} Q_m + lambda~_{m+1} Q_{m-1}, m = 0..n_max-1
  /// (lambda~_1 is reported as 0).
  std::vector<double> tilde_c;
  std::vector<double> tilde_lambda;
  /// Subset of "(i)", "(ii)", "(iii)".
  std::vector<std::string> violated_conditions;
  double condition_residual = 0.0;
  /// Independent check: the functional with u(Q_0) = 1, u(Q_i) = 0 annihilates
  /// x^m Q_i for m < i (relative to the size of the summed terms).
  double gram_residual = 0.0;
  bool gram_orthogonal = false;
};

/// Q_n = P*_n + sum_{m=1}^{l} alpha_m P*_{n-m} for n >= l+1. The low-order
/// Q_0..Q_l default to the truncated sums; low_order[m] (size m+1, leading 1,
/// coefficient of P*_j at index j) overrides them.
QkOrthogonalityReport qk_orthogonality_check(const std::vector<KernelCoeff<double>>& kernel_table,
                                             const std::vector<double>& alphas, int n_max,
                                             double tol = 1e-8,
                                             const std::vector<std::vector<double>>& low_order = {});

/// Same, reading c*_n, lambda*_n from the kernel recurrence of ctx.
QkOrthogonalityReport qk_orthogonality_check(const KernelContext<double>& ctx,
                                             const std::vector<double>& alphas, int n_max,
                                             double tol = 1e-8);

}  // namespace opx
