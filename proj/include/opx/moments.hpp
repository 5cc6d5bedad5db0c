#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "opx/families.hpp"

namespace opx {

/// m-point Gauss rule for a family; exact for polynomials of degree <= 2m-1.
struct GaussRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, summing to mu0
  int order = 0;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Golub-Welsch rule from the symmetric Jacobi matrix (diagonal c_n,
/// off-diagonal sqrt(lambda_{n+1})). Results are memoized per (family, m).
GaussRule gauss_rule(const FamilySpec& family, int m);

/// Monomial moments L(x^j), j = 0..max_degree, as mu0 * (J^j)_{00} with J the
/// Jacobi matrix truncated at a size where the entry is exact. Independent of
/// the eigen-decomposition in gauss_rule.
std::vector<double> monomial_moments(const FamilySpec& family, int max_degree);

namespace functional {
struct Base {};
/// p -> L((x - k) p)
struct Christoffel {
  double k = 0.0;
};
/// Functional G with G((x - k) p) = L(p) and G(1) = mass0.
struct Geronimus {
  double k = 0.0;
  double mass0 = 1.0;
};
/// L + r0 * delta(x - k)
struct Uvarov {
  double k = 0.0;
  double r0 = 0.0;
};
}  // namespace functional

using FunctionalKind =
    std::variant<functional::Base, functional::Christoffel, functional::Geronimus, functional::Uvarov>;

using RealPoly = std::function<double(double)>;

/// Applies the chosen functional to a polynomial of known degree using a Gauss
/// rule of ceil(degree/2) + 2 points (plus point-mass terms where applicable).
double apply_functional(const FamilySpec& family, const FunctionalKind& kind, const RealPoly& p,
                        int degree);

/// Entry (n, m) is the functional applied to polys[n] * polys[m], normalized by
/// sqrt(|diag(n) diag(m)|); diagonal entries keep the sign of the raw value.
/// polys[n] must have degree n.
std::vector<std::vector<double>> orthogonality_residual(const FamilySpec& family,
                                                        const FunctionalKind& kind,
                                                        const std::vector<RealPoly>& polys, int n_max);

double max_off_diagonal(const std::vector<std::vector<double>>& gram);

/// Integrals q_j = \int P_j(x) / (k - x) dmu(x) for j = 0..n, by node doubling
/// until successive rules agree to 1e-11 relative (cap 4096 nodes).
/// k must lie outside the support.
std::vector<double> stieltjes_integrals(const FamilySpec& family, double k, int n);

/// The value of G(1) under which the Geronimus polynomials built from the
/// Stieltjes integrals are orthogonal: \int dmu / (x - k).
double natural_geronimus_mass(const FamilySpec& family, double k);

}  // namespace opx
