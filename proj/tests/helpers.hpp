#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "opx/families.hpp"

namespace testing {

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double p_value(const opx::FamilySpec& f, int n, double x) {
  return opx::eval_sequence(f, n, x).values.back();
}

inline std::vector<double> uniform(double lo, double hi, int count, std::uint64_t seed = 42) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(dist(gen));
  return out;
}

}  // namespace testing
