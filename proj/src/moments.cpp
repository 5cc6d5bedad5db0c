#include "opx/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <tuple>

#include "opx/error.hpp"

namespace opx {
namespace {

// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix. Only
// the first row of the eigenvector matrix is accumulated (Golub-Welsch), so
// the cost is O(m^2) rather than O(m^3).
//   d: diagonal (eigenvalues on exit); e[i] couples i and i+1, e[m-1] unused;
//   z: first row of the accumulated rotations, e_1 on entry.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  e[static_cast<std::size_t>(n - 1)] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++iter > 100) throw Error(Errc::NonConvergent, "tridiagonal QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      bool deflated = false;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

GaussRule build_rule(const FamilySpec& family, int m) {
  const auto coeffs = recurrence_coefficients(family, m);
  std::vector<double> d(static_cast<std::size_t>(m)), e(static_cast<std::size_t>(m), 0.0),
      z(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    d[i] = coeffs[i].c;
    if (i + 1 < m) e[i] = std::sqrt(coeffs[i + 1].lambda);
  }
  z[0] = 1.0;
  tridiagonal_ql(d, e, z);

  std::vector<std::size_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });
  GaussRule rule;
  rule.order = m;
  rule.nodes.reserve(order.size());
  rule.weights.reserve(order.size());
  const double mu0 = family.mu0();
  for (auto i : order) {
    rule.nodes.push_back(d[i]);
    rule.weights.push_back(mu0 * z[i] * z[i]);
  }
  return rule;
}

using CacheKey = std::tuple<int, double, double, int>;

CacheKey cache_key(const FamilySpec& family, int m) {
  return {static_cast<int>(family.kind()), family.gamma(), family.delta(), m};
}

struct RuleCache {
  std::shared_mutex mutex;
  std::map<CacheKey, GaussRule> rules;
};

RuleCache& rule_cache() {
  static RuleCache cache;
  return cache;
}

int order_for_degree(int degree) { return (std::max(degree, 0) + 1) / 2 + 2; }

void require_outside(const FamilySpec& family, double k) {
  if (family.support().contains(k))
    throw Error(Errc::ShiftInsideSupport,
                "shift " + std::to_string(k) + " lies in the support of " + family.name());
}

}  // namespace

GaussRule gauss_rule(const FamilySpec& family, int m) {
  if (m < 1) throw Error(Errc::ParameterOutOfRange, "gauss rule needs m >= 1");
  // Custom tables are not cached: their identity is not a value.
  if (family.kind() == FamilyKind::Custom) return build_rule(family, m);

  const CacheKey key = cache_key(family, m);
  auto& cache = rule_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.rules.find(key); it != cache.rules.end()) return it->second;
  }
  GaussRule rule = build_rule(family, m);
  std::unique_lock lock(cache.mutex);
  return cache.rules.emplace(key, std::move(rule)).first->second;
}

std::vector<double> monomial_moments(const FamilySpec& family, int max_degree) {
  const int size = max_degree / 2 + 2;
  const auto coeffs = recurrence_coefficients(family, size);
  std::vector<double> diag(static_cast<std::size_t>(size)), off(static_cast<std::size_t>(size), 0.0);
  for (int i = 0; i < size; ++i) {
    diag[i] = coeffs[i].c;
    if (i + 1 < size) off[i] = std::sqrt(coeffs[i + 1].lambda);
  }
  std::vector<double> v(static_cast<std::size_t>(size), 0.0), w(v.size());
  v[0] = 1.0;
  std::vector<double> moments;
  moments.reserve(static_cast<std::size_t>(max_degree) + 1);
  moments.push_back(family.mu0());
  for (int j = 1; j <= max_degree; ++j) {
    for (int i = 0; i < size; ++i) {
      double s = diag[i] * v[i];
      if (i > 0) s += off[i - 1] * v[i - 1];
      if (i + 1 < size) s += off[i] * v[i + 1];
      w[i] = s;
    }
    std::swap(v, w);
    moments.push_back(family.mu0() * v[0]);
  }
  return moments;
}

double apply_functional(const FamilySpec& family, const FunctionalKind& kind, const RealPoly& p,
                        int degree) {
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, functional::Base>) {
          return gauss_rule(family, order_for_degree(degree)).integrate(p);
        } else if constexpr (std::is_same_v<F, functional::Christoffel>) {
          const auto rule = gauss_rule(family, order_for_degree(degree + 1));
          return rule.integrate([&](double x) { return (x - f.k) * p(x); });
        } else if constexpr (std::is_same_v<F, functional::Geronimus>) {
          require_outside(family, f.k);
          const double pk = p(f.k);
          const auto rule = gauss_rule(family, order_for_degree(degree - 1));
          return rule.integrate([&](double x) { return (p(x) - pk) / (x - f.k); }) + pk * f.mass0;
        } else {
          return gauss_rule(family, order_for_degree(degree)).integrate(p) + f.r0 * p(f.k);
        }
      },
      kind);
}

std::vector<std::vector<double>> orthogonality_residual(const FamilySpec& family,
                                                        const FunctionalKind& kind,
                                                        const std::vector<RealPoly>& polys, int n_max) {
  if (static_cast<int>(polys.size()) <= n_max)
    throw Error(Errc::ParameterOutOfRange, "need polynomials up to degree n_max");
  const auto n = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::vector<double>> raw(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const auto& pi = polys[i];
      const auto& pj = polys[j];
      raw[i][j] = raw[j][i] = apply_functional(
          family, kind, [&](double x) { return pi(x) * pj(x); }, static_cast<int>(i + j));
    }
  auto gram = raw;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      gram[i][j] = raw[i][j] / std::sqrt(std::abs(raw[i][i] * raw[j][j]));
    }
  for (std::size_t i = 0; i < n; ++i) gram[i][i] = raw[i][i] < 0.0 ? -1.0 : 1.0;
  return gram;
}

double max_off_diagonal(const std::vector<std::vector<double>>& gram) {
  double worst = 0.0;
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t j = 0; j < gram[i].size(); ++j)
      if (i != j) worst = std::max(worst, std::abs(gram[i][j]));
  return worst;
}

std::vector<double> stieltjes_integrals(const FamilySpec& family, double k, int n) {
  require_outside(family, k);
  // On a bounded support the first j Taylor terms of 1/(k - x) about the centre
  // are orthogonal to P_j, so only the remainder t^j / (k - x),
  // t = (x - centre) / (k - centre), is integrated. That keeps the integrand
  // of the same size as the (geometrically small) result.
  const Support& sup = family.support();
  const bool shifted = sup.bounded();
  const double centre = shifted ? 0.5 * (sup.lower + sup.upper) : 0.0;

  auto evaluate = [&](int m) {
    const auto rule = gauss_rule(family, m);
    std::vector<double> q(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = rule.nodes[i];
      const auto seq = eval_sequence(family, n, x);
      const double base = rule.weights[i] / (k - x);
      const double t = shifted ? (x - centre) / (k - centre) : 1.0;
      double tj = 1.0;
      for (int j = 0; j <= n; ++j) {
        q[static_cast<std::size_t>(j)] += base * seq.values[static_cast<std::size_t>(j)] * tj;
        tj *= t;
      }
    }
    return q;
  };

  constexpr int max_nodes = 4096;
  int m = std::max(16, 2 * (n + 2));
  auto prev = evaluate(m);
  while (m < max_nodes) {
    m = std::min(2 * m, max_nodes);
    auto next = evaluate(m);
    bool agreed = true;
    for (std::size_t j = 0; j < next.size(); ++j)
      if (std::abs(next[j] - prev[j]) > 1e-11 * std::abs(next[j])) agreed = false;
    prev = std::move(next);
    if (agreed) return prev;
  }
  throw Error(Errc::NonConvergent, "Stieltjes integrals did not settle within 4096 nodes");
}

double natural_geronimus_mass(const FamilySpec& family, double k) {
  return -stieltjes_integrals(family, k, 0).front();
}

}  // namespace opx
