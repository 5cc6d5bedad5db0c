#pragma once

#include <vector>

#include "opx/kernels.hpp"

namespace opx {

/// Geronimus data at a real shift k outside the support.
struct GeronimusData {
  double k = 0.0;
  /// A[n], n = 0..n_max (A[0] = 0).
  std::vector<double> A;
  /// G(1) under which P~_n = P_n + A_n P_{n-1} are orthogonal: \int dmu/(x-k).
  double mass0 = 0.0;
};

/// A_n = -q_n / q_{n-1} with q_j = \int P_j(x)/(k - x) dmu. Throws
/// ShiftInsideSupport, or DegenerateDenominator if some q_{n-1} underflows.
GeronimusData geronimus_data(const FamilySpec& family, double k, int n_max);

double geronimus_poly(const FamilySpec& family, const GeronimusData& g, int n, double x);
double geronimus_poly(const FamilySpec& family, double k, int n, double x);

/// P~_{n+1}(k;x) + (lambda_{n+1}/A_n) P~_n(k;x); vanishes at x = k.
double geronimus_numerator(const FamilySpec& family, const GeronimusData& g, int n, double x);

/// P_n(x) = numerator / (x - k), n >= 1. Throws EvalAtShift near x = k.
double op_from_geronimus(const FamilySpec& family, const GeronimusData& g, int n, double x);
double op_from_geronimus(const FamilySpec& family, double k, int n, double x);

/// Recurrence rows n = 1..n_max of {P~_n}: c~_{n+1} = c_{n+1} + A_n - A_{n+1},
/// lambda~_{n+1} = lambda_{n+1} + A_n (c_n - c~_{n+1}), lambda~_1 = mass0.
std::vector<Recurrence> geronimus_recurrence(const FamilySpec& family, const GeronimusData& g,
                                             int n_max);

/// Christoffel at k applied to the Geronimus family; largest relative
/// deviation from the original rows n = 1..n_max.
double geronimus_christoffel_roundtrip(const FamilySpec& family, double k, int n_max);

struct UvarovData {
  double k = 0.0;
  double r0 = 0.0;
  /// T[n], n = 0..n_max (T[0] = 0).
  std::vector<double> T;
};

/// T_n = R0 P_n(k) P_{n-1}(k) / (lambda_1...lambda_n (1 + R0 S_{n-1}(k))).
UvarovData uvarov_data(const FamilySpec& family, double k, double r0, int n_max);

/// Variant with lambda_1...lambda_{n+1} in both places; does not give orthogonality.
double uvarov_T_full_norm(const KernelContext<double>& ctx, double r0, int n);

/// P^_n = P_n - T_n P*_{n-1}(k;x).
double uvarov_poly(const FamilySpec& family, const UvarovData& u, int n, double x);
double uvarov_poly(const FamilySpec& family, double k, double r0, int n, double x);

enum class RecoveryKind { Christoffel, Geronimus, Uvarov, Order2 };

/// Sequences indexed by n (entry n belongs to Q_{n+1} for Christoffel and to
/// Q_n for the others); entries below first_index are unused.
struct RecoveryCoefficients {
  RecoveryKind kind = RecoveryKind::Christoffel;
  int first_index = 0;
  std::vector<double> gamma;
  std::vector<double> eta;
  std::vector<double> alpha;
  std::vector<double> beta;
  /// Order2 only: beta with last term -(1/lambda_{n+1}) (P_n(k1)/P_{n-1}(k1)) c_{n+1}.
  std::vector<double> beta_without_m;
};

/// B[n] = B_n of T*_n(k1;x) = P*_n(k1;x) + B_n P*_{n-1}(k1;x); needs B.size() >= n_max + 2.
RecoveryCoefficients recover_christoffel(const FamilySpec& family, double k1, double k2,
                                         const std::vector<double>& B, int n_max);

/// Q^C_n(x) = [(x-k1) T*_n(k1;x) + eta_{n-1}(x-k2) P*_{n-1}(k2;x)] / (x - gamma_{n-1}), n >= 1.
double recovered_christoffel(const FamilySpec& family, double k1, double k2,
                             const std::vector<double>& B, const RecoveryCoefficients& rc, int n,
                             double x);

/// Btilde[n] mixes T*_n(k2;x) = P*_n(k2;x) + Btilde_n P*_{n-1}(k2;x); size >= n_max + 1.
RecoveryCoefficients recover_geronimus(const FamilySpec& family, const GeronimusData& g, double k2,
                                       const std::vector<double>& Btilde, int n_max);

/// Q^G_n(x) = [P~_{n+1}(k1;x) + eta_n (x-k2) T*_n(k2;x)] / (alpha_n x - gamma_n), n >= 1.
double recovered_geronimus(const FamilySpec& family, const GeronimusData& g, double k2,
                           const std::vector<double>& Btilde, const RecoveryCoefficients& rc,
                           int n, double x);

/// Populates alpha, beta, eta; gamma is filled with beta (the same sequence).
RecoveryCoefficients recover_uvarov(const FamilySpec& family, const UvarovData& u, double k2,
                                    const std::vector<double>& Btilde, int n_max);

/// Q^U_n(x) = [(x-k1) P^_n(x) + eta_n (x-k2) T*_n(k2;x)] / (alpha_n x - beta_n), n >= 1.
double recovered_uvarov(const FamilySpec& family, const UvarovData& u, double k2,
                        const std::vector<double>& Btilde, const RecoveryCoefficients& rc, int n,
                        double x);

/// Ltilde_n solving the order-2 constraint for given Mtilde_n, n = 1..n_max
/// (entry 0 unused). The constraint's right side is real for k3 = conj(k2);
/// its imaginary part is dropped.
std::vector<double> order2_constraint_ltilde(const FamilySpec& family, double k1, cplx k2, cplx k3,
                                             const std::vector<double>& Mtilde, int n_max);

/// Throws ConstraintViolated unless Ltilde_n + Mtilde_n P_n(k1)/(lambda_{n+1}P_{n-1}(k1))
/// matches P_{n+2}(k1)/P_{n+1}(k1) - P_{n+2}(k2)/P_{n+1}(k2) - P*_{n+1}(k2,k3)/P*_n(k2,k3)
/// to 1e-10 relative for n = 1..n_max.
RecoveryCoefficients recover_order2(const FamilySpec& family, double k1, cplx k2, cplx k3,
                                    const std::vector<double>& Ltilde,
                                    const std::vector<double>& Mtilde, int n_max);

/// Q^S_n(x) = [(x-k1) S*_{n+1}(k1;x) - (x-k2)(x-k3) P**_n(k2,k3;x)] / (alpha_n x - beta_n).
cplx recovered_order2(const FamilySpec& family, double k1, cplx k2, cplx k3,
                      const std::vector<double>& Ltilde, const std::vector<double>& Mtilde,
                      const RecoveryCoefficients& rc, int n, cplx x);

}  // namespace opx
