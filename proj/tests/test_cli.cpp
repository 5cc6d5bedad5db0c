#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "opx/cli.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "opx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = opx::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json strip_runtime(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("runtime_ms");
  return j;
}

}  // namespace

TEST_CASE("verify recovery on chebyshev") {
  const auto r = run({"verify", "--family", "chebyshev1", "--suite", "recovery", "--n-max", "8", "--tol", "1e-7",
                      "--seed", "42"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "verify");
  CHECK(j["suite"] == "recovery");
  CHECK(j["overall"] == true);
  std::vector<std::string> names;
  for (const auto& c : j["cases"]) {
    names.push_back(c["name"]);
    CHECK(c["tolerance"] == 1e-7);
  }
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(std::find(names.begin(), names.end(), "recovery_order2") != names.end());
}

TEST_CASE("ratio csv") {
  const auto r = run({"ratio", "--family", "chebyshev1", "--shift", "1", "--n-max", "20", "--output", "csv"});
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,r_up,closed_form,abs_diff");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 20);
  CHECK(r.code == 1);
  CHECK(r.err.find("ratio_reference") != std::string::npos);
}

TEST_CASE("eval of degree zero") {
  const auto r = run({"eval", "--family", "laguerre", "--gamma", "0.5", "--n-max", "0", "--points", "3.0"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0][2] == 1.0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"verify", "--family", "hermite"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eval", "--n-max", "-1"}).code == 2);
  CHECK(run({"verify", "--tol", "-1"}).code == 2);
  CHECK(run({"verify", "--output", "csv"}).code == 2);
  CHECK(run({"verify", "--family", "custom"}).code == 2);
  CHECK(run({"verify", "--support", "0,1"}).code == 2);
  const auto r = run({"eval", "--gamma", "abc"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const auto a = run({"verify", "--family", "laguerre", "--gamma", "0.5", "--seed", "7"});
  const auto b = run({"verify", "--family", "laguerre", "--gamma", "0.5", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(strip_runtime(a.out) == strip_runtime(b.out));
  const auto c = run({"verify", "--family", "laguerre", "--gamma", "0.5", "--seed", "8"});
  CHECK(strip_runtime(a.out) != strip_runtime(c.out));
}

TEST_CASE("seed from the environment") {
  ::setenv("OPX_SEED", "99", 1);
  const auto r = run({"eval", "--n-max", "1"});
  ::unsetenv("OPX_SEED");
  CHECK(nlohmann::json::parse(r.out)["config_echo"]["seed"] == 99);
}

TEST_CASE("custom family from a coefficient file") {
  const auto path = std::filesystem::temp_directory_path() / "opx_legendre.csv";
  {
    std::ofstream f(path);
    f << "n,c,lambda\n1,0,2\n";
    for (int n = 2; n <= 30; ++n) f << n << ",0," << (n - 1.0) * (n - 1.0) / (4.0 * (n - 1.0) * (n - 1.0) - 1.0) << '\n';
  }
  const auto r = run({"verify", "--family", "custom", "--coeffs", path.string(), "--support", "-1,1", "--suite", "kernels"});
  CHECK(r.code == 0);
  const auto bad = run({"verify", "--family", "custom", "--coeffs", "/nonexistent.csv", "--support", "-1,1"});
  CHECK(bad.code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("chain and kernel commands") {
  const auto c = run({"chain", "--n-max", "100", "--output", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("n,l,m,complement_l,complement_m", 0) == 0);
  const auto k = run({"kernel", "--family", "jacobi", "--gamma", "0.3", "--delta", "0.7", "--n-max", "6"});
  CHECK(k.code == 0);
  const auto j = nlohmann::json::parse(k.out);
  CHECK(j["columns"][2] == "kernel_poly");
  const auto rec = run({"recover", "--family", "laguerre", "--gamma", "0.5"});
  CHECK(rec.code == 0);
}

TEST_CASE("failing checks exit with 1 and name the case") {
  const auto r = run({"verify", "--suite", "kernels", "--tol", "1e-30"});
  CHECK(r.code == 1);
  CHECK(r.err.find("FAIL") != std::string::npos);
  CHECK(nlohmann::json::parse(r.out)["overall"] == false);
}
