#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "verhulst/random.hpp"
#include "verhulst_cli/cli.hpp"

using namespace verhulst;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "verhulst");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

double field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 1));
}

// estimator -> (mean, stderr)
std::map<std::string, McEstimate> laplace_table(const std::string& csv) {
  std::map<std::string, McEstimate> rows;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("prop", 0) != 0 && line.rfind("direct", 0) != 0) continue;
    std::istringstream ls(line);
    std::string name, mean, se, n;
    std::getline(ls, name, ',');
    std::getline(ls, mean, ',');
    std::getline(ls, se, ',');
    std::getline(ls, n, ',');
    rows[name] = McEstimate{std::stod(mean), std::stod(se), std::stoul(n)};
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("verhulst_cli_test_" + name);
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"density", "--help"}).out.find("--kind") != std::string::npos);
  CHECK(run({}).code == cli::kUsageError);
  const auto bad = run({"simulate", "--t", "abc"});
  CHECK(bad.code == cli::kUsageError);
  CHECK(bad.err.rfind("error: usage:", 0) == 0);
  CHECK(run({"density", "--kind", "cauchy"}).code == cli::kUsageError);
}

TEST_CASE("density curves") {
  const auto ln = run({"density", "--kind", "lognormal", "--mu", "0", "--t", "1"});
  REQUIRE(ln.code == 0);
  CHECK(ln.out.rfind("# kind=lognormal params=mu=0;t=1 mass=", 0) == 0);
  CHECK(field(ln.out, "total_mass") == doctest::Approx(1.0).epsilon(1e-4));

  const auto et = run({"density", "--kind", "exp-time", "--x", "1", "--lambda", "1"});
  REQUIRE(et.code == 0);
  CHECK(std::fabs(field(et.out, "total_mass") - 1.0) < 1e-6);

  const auto eh = run({"density", "--kind", "exact-half", "--x", "1", "--t", "1"});
  REQUIRE(eh.code == 0);
  CHECK(std::fabs(field(eh.out, "total_mass") - 1.0) < 1e-3);
}

TEST_CASE("density below the Theta cutoff fails without writing") {
  const auto path = temp_path("density.csv");
  std::filesystem::remove(path);
  const auto r = run({"density", "--kind", "exact-half", "--x", "1", "--t", "0.05", "--out", path.string()});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.rfind("error: domain:", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("laplace at the origin") {
  const auto r = run({"laplace", "--lambda", "0", "--mu", "0", "--beta", "1", "--t", "1", "--seed", "3", "--n", "2000"});
  REQUIRE(r.code == 0);
  const auto t = laplace_table(r.out);
  REQUIRE(t.size() == 3);
  CHECK(t.at("direct").mean == 1.0);
  CHECK(std::fabs(z_score(t.at("prop7"), 1.0)) < 3.0);
  CHECK(std::fabs(t.at("prop1").mean - 1.0) <= 3.0 * t.at("prop1").std_error + 1e-12);
  // without crowding the prop7 exponent vanishes identically
  const auto free = laplace_table(run({"laplace", "--lambda", "0", "--beta", "0", "--seed", "3", "--n", "100"}).out);
  CHECK(free.at("prop7").mean == 1.0);
}

TEST_CASE("laplace estimators agree") {
  const auto r = run({"laplace", "--lambda", "1", "--mu", "0", "--beta", "1", "--t", "1", "--seed", "11", "--n",
                      "100000"});
  REQUIRE(r.code == 0);
  const auto t = laplace_table(r.out);
  CHECK(std::fabs(z_score(t.at("prop1"), t.at("direct"))) < 3.0);
  CHECK(std::fabs(z_score(t.at("prop7"), t.at("direct"))) < 3.0);
  CHECK(std::fabs(z_score(t.at("prop1"), t.at("prop7"))) < 3.0);
}

TEST_CASE("laplace without crowding rejects only prop1") {
  const auto r = run({"laplace", "--lambda", "1", "--beta", "0", "--seed", "1", "--n", "1000"});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("prop1") != std::string::npos);
  const auto t = laplace_table(r.out);
  CHECK(t.count("prop1") == 0);
  CHECK(t.count("prop7") == 1);
  CHECK(t.count("direct") == 1);
}

TEST_CASE("simulate") {
  const auto one = run({"simulate", "--t", "1", "--dt", "0.01", "--beta", "1", "--seed", "5"});
  REQUIRE(one.code == 0);
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 1 + 101);
  CHECK(one.out.rfind("t,theta,bmd,int_theta,int_theta_sq,a_t,A_t\n", 0) == 0);
  CHECK(run({"simulate", "--t", "1", "--dt", "0.01", "--beta", "1", "--seed", "5"}).out == one.out);

  const auto many = run({"simulate", "--t", "1", "--n", "10", "--seed", "5", "--threads", "2"});
  CHECK(many.out.rfind("replicate,theta_T\n", 0) == 0);
  CHECK(std::count(many.out.begin(), many.out.end(), '\n') == 11);
  CHECK(run({"simulate", "--t", "1", "--n", "10", "--seed", "5", "--threads", "1"}).out == many.out);

  CHECK(run({"simulate", "--t", "-1"}).code == cli::kUsageError);
  CHECK(run({"simulate", "--dt", "0"}).code == cli::kUsageError);
  CHECK(run({"simulate", "--scheme", "milstein"}).code == cli::kUsageError);
}

TEST_CASE("simulate without a seed echoes the one it drew") {
  const auto r = run({"simulate", "--t", "0.1", "--dt", "0.05"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("seed=", 0) == 0);
  const auto seed = r.out.substr(5, r.out.find('\n') - 5);
  const auto again = run({"simulate", "--t", "0.1", "--dt", "0.05", "--seed", seed});
  CHECK(again.out == r.out.substr(r.out.find('\n') + 1));
}

TEST_CASE("simulated GBM mean") {
  const auto path = temp_path("gbm.csv");
  const auto r = run({"simulate", "--t", "1", "--dt", "0.05", "--mu", "0", "--beta", "0", "--n", "100000", "--seed",
                      "9", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(path).rfind("replicate,theta_T\n", 0) == 0);
  const McEstimate e{field(r.out, "mean_theta_T"), field(r.out, "stderr"), 100000};
  CHECK(std::fabs(z_score(e, std::exp(0.5))) < 3.0);
  std::filesystem::remove(path);
}

TEST_CASE("validate") {
  const auto list = run({"validate", "--list"});
  CHECK(list.code == 0);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 13);

  const auto path = temp_path("report.csv");
  const auto one = run({"validate", "--only", "z2_symmetry", "--seed", "1", "--out", path.string()});
  CHECK(one.code == 0);
  CHECK(one.out.find("1/1 checks passed") != std::string::npos);
  const auto csv = slurp(path);
  CHECK(csv.rfind("name,statistic,threshold,passed,details\nz2_symmetry,", 0) == 0);
  std::filesystem::remove(path);

  const auto mc = run({"validate", "--only", "martingale", "--budget", "0.02", "--seed", "1"});
  CHECK(mc.out.find("martingale") != std::string::npos);
  CHECK(mc.out.find("1/1 checks passed") != std::string::npos);

  CHECK(run({"validate", "--only", "representation", "--seed", "1"}).code == cli::kStatisticalFailure);

  CHECK(run({"validate", "--budget", "-1"}).code == cli::kUsageError);
  CHECK(run({"validate", "--budget", "lots"}).code == cli::kUsageError);
  const auto unknown = run({"validate", "--only", "nonsense"});
  CHECK(unknown.code == cli::kUsageError);
  CHECK(unknown.out.empty());
}
