#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "opx/families.hpp"

namespace opx::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string family = "chebyshev1";
  double gamma = 0.5;
  double delta = 0.5;
  std::vector<double> shifts;
  std::optional<double> mass0;
  double r0 = 0.5;
  int n_max = 8;
  /// Unset means every case keeps its own default tolerance.
  std::optional<double> tol;
  int depth = 60;
  std::uint64_t seed = 42;
  std::string output = "json";
  std::string suite = "all";
  std::string coeffs;
  std::vector<double> support;
  std::vector<double> points;
  std::vector<double> l;
};

struct Case {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Outcome {
  double residual = 0.0;
  bool ok = true;

  Outcome(double r) : residual(r) {}  // NOLINT(google-explicit-constructor)
  Outcome(double r, bool verdict) : residual(r), ok(verdict) {}
};

/// Thrown for flag values that parse but do not validate.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FamilySpec make_family(const RunConfig& cfg);

/// Points well inside the support used for random sampling.
std::pair<double, double> sample_interval(const FamilySpec& family);

/// Two real shifts outside the support (explicit --shift values win).
std::pair<double, double> shifts_for(const FamilySpec& family, const RunConfig& cfg);

std::vector<double> seeded_points(const FamilySpec& family, std::uint64_t seed, int count);

/// Runs one suite name (not "all") and appends its cases; notes go to summary.
void run_suite(const std::string& suite, const FamilySpec& family, const RunConfig& cfg,
               std::vector<Case>& cases, Json& summary);

extern const std::vector<std::string> suite_names;

}  // namespace opx::cli
