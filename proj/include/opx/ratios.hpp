#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "opx/kernels.hpp"

namespace opx {

/// sum_{j<=n} P_j(x)^2/(lambda_1...lambda_{j+1}) against
/// (P'_{n+1}P_n - P_{n+1}P'_n)/(lambda_1...lambda_{n+1}).
struct ConfluentCd {
  double lhs = 0.0;
  double rhs = 0.0;
};

ConfluentCd confluent_cd(const FamilySpec& family, int n, double x);

/// lim_{x->k} P*_{n+1}(k;x)/P*_n(k;x) and its reciprocal direction.
template <Scalar T>
struct KernelRatioLimit {
  T r_up{};
  T r_down{};
};

/// Needs the context valid to n + 1.
template <Scalar T>
KernelRatioLimit<T> kernel_ratio_limit(const KernelContext<T>& ctx, int n);

/// lim_{x->k} P_{n+1}(x)/P*_{n+1}(k;x), with the kernel taken from its CD-sum form at x = k.
double op_kernel_ratio_limit(const KernelContext<double>& ctx, int n);

/// 1/(1 + s_1 a_1/(1 + s_2 a_2/(1 + ...))) scaled by lead; partials(j) gives
/// (a_j, s_j) for j >= 1 with a_j already multiplied by the variable.
struct ContinuedFraction {
  double lead = 1.0;
  std::function<std::pair<double, int>(int)> partials;
  int depth = 60;
};

struct CfResult {
  double value = 0.0;
  int depth_used = 0;
  /// Some intermediate denominator was floored at 1e-300.
  bool floored = false;
};

/// Backward evaluation at depth and depth + 10, accepted when they agree to
/// 1e-13 relative; otherwise the depth doubles up to 64x the request. Throws
/// NonConvergent at the cap and ZeroDenominator when the outermost
/// denominator itself vanishes.
CfResult evaluate(const ContinuedFraction& cf);

/// g_j of the Gauss fraction.
double gauss_g(double p, double q, double r, int j);
/// d_j of the Kummer fraction.
double kummer_d(double p, double r, int j);

/// F(p+1,q;r;z)/F(p,q;r;z).
double gauss_cf_ratio(double p, double q, double r, double z, int depth = 60);
/// phi(p+1;r;z)/phi(p;r;z).
double kummer_cf_ratio(double p, double r, double z, int depth = 60);

struct LaguerreRatio {
  /// phi(-n+1;g+2;-x)/phi(-n;g+2;-x) from the plus-signed fraction.
  double cf_value = 0.0;
  double same_param_prefactor = 0.0;
  /// NaN when gamma <= 0.
  double mixed_param_prefactor = 0.0;
  /// Alternating-sign d' fraction for phi(-n+1;g+2;-x)/phi(-n;g+1;-x); NaN when gamma <= 0.
  double mixed_cf_value = 0.0;
  /// Same fraction with even-index denominators (g+2k+1)(g+2k+2); NaN when gamma <= 0.
  double mixed_cf_shifted = 0.0;
  /// Series value of the mixed phi ratio; NaN when gamma <= 0.
  double mixed_series_value = 0.0;
  /// Monic kernel ratios at k = 0 evaluated at -x (same family; gamma and gamma-1).
  double direct_same = 0.0;
  double direct_mixed = 0.0;
  /// direct_same = monic_same * cf_value and direct_mixed = monic_mixed * mixed series.
  double monic_same = 0.0;
  double monic_mixed = 0.0;
};

LaguerreRatio laguerre_ratio_cf(double gamma, int n, double x, int depth = 60);

double laguerre_dtilde(double gamma, int n, int j);
double laguerre_dprime(double gamma, int n, int j);
double laguerre_dprime_shifted(double gamma, int n, int j);

struct JacobiRatio {
  /// F(-n+1,n+g+d+1;g+2;t)/F(-n,n+g+d+1;g+2;t), t = (1-x)/2.
  double cf_value = 0.0;
  double prefactor = 0.0;
  /// Monic P*_{n-1}(1;x) of Jacobi(g,d) over P*_n(1;x) of Jacobi(g,d-1).
  double direct = 0.0;
  /// direct = monic_factor * cf_value.
  double monic_factor = 0.0;
};

JacobiRatio jacobi_ratio_cf(double gamma, double delta, int n, double x, int depth = 60);

double jacobi_e(double gamma, double delta, int n, int j);

enum class HypKind { F21, F11 };

/// Truncated or terminating series; params = {p, q, r} for 2F1, {p, r} for 1F1.
double hyp_series(HypKind kind, const std::vector<double>& params, double z, int terms = 200);

struct ChainSequence {
  /// l[n-1] = l_n.
  std::vector<double> l;
  /// m[0] = 0, m[n] = l_n/(1 - m[n-1]).
  std::vector<double> m;
  bool positive = false;
  /// k_n = 1 - l_n and its minimal parameters (truncated where 1 - m hits 0).
  std::vector<double> complement_l;
  std::vector<double> complement_m;
  bool complement_positive = false;
};

/// Needs l.size() >= n_max. Throws DivisionByZero if some m_{n-1} = 1.
ChainSequence chain_params(const std::vector<double>& l, int n_max);

/// l_j = (1 - g_{j-1}) g_j for j = 1..n_max.
std::vector<double> gauss_chain(double p, double q, double r, int n_max);

/// log B(a, b) through log-Gamma.
double log_beta(double a, double b);

}  // namespace opx
