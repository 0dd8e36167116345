#include <cstring>
#include <stdexcept>

#include "doctest.h"
#include "verhulst/suite.hpp"

using namespace verhulst;
using namespace verhulst::validate;

TEST_CASE("empty registry") { CHECK(run_suite({}, SuiteConfig{}).empty()); }

TEST_CASE("default registry covers every acceptance check in order") {
  const auto r = default_registry();
  const char* names[] = {"bessel_product_identity", "hartman_watson_identity", "exact_half_density",
                         "exp_time_density",        "mixture_identity",        "martingale",
                         "measure_change",          "moment_identity",         "laplace_triangle",
                         "general_density",         "representation",          "z2_symmetry",
                         "determinism"};
  REQUIRE(r.size() == 13);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r[i].name == names[i]);
    CHECK_FALSE(r[i].description.empty());
  }
}

TEST_CASE("selection") {
  SuiteConfig c;
  c.only = {"z2_symmetry"};
  const auto reports = run_suite(default_registry(), c);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].name == "z2_symmetry");
  CHECK(reports[0].passed);
  CHECK(reports[0].seconds > 0.0);
  c.only = {"no_such_check"};
  CHECK_THROWS_AS(run_suite(default_registry(), c), InvalidParameter);
}

TEST_CASE("a throwing check becomes a failed report") {
  const std::vector<Check> reg{
      {"boom", "throws", false, [](const SuiteConfig&) -> TestReport { throw std::runtime_error("bad"); }},
      {"fine", "passes", false, [](const SuiteConfig&) { return TestReport::make("fine", 0.0, 1.0, "", ""); }}};
  const auto r = run_suite(reg, SuiteConfig{});
  REQUIRE(r.size() == 2);
  CHECK_FALSE(r[0].passed);
  CHECK(r[0].details.find("bad") != std::string::npos);
  CHECK(r[1].passed);
}

TEST_CASE("family-wise note for large Monte Carlo families") {
  std::vector<Check> reg;
  for (int i = 0; i < 11; ++i) {
    reg.push_back({"mc" + std::to_string(i), "", true,
                   [](const SuiteConfig&) { return TestReport::make("x", 0.0, 3.0, "", "z=0"); }});
  }
  const auto r = run_suite(reg, SuiteConfig{});
  CHECK(r[0].details.find("bonferroni: 11") != std::string::npos);
  reg.pop_back();
  CHECK(run_suite(reg, SuiteConfig{})[0].details == "z=0");
}

TEST_CASE("rerun with the same configuration repeats every statistic") {
  SuiteConfig c;
  c.budget = 0.01;
  c.only = {"bessel_product_identity", "martingale", "laplace_triangle", "z2_symmetry"};
  const auto a = run_suite(default_registry(), c);
  const auto b = run_suite(default_registry(), c);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::memcmp(&a[i].statistic, &b[i].statistic, sizeof(double)) == 0);
    CHECK(a[i].details == b[i].details);
  }
}

TEST_CASE("worker count does not change Monte Carlo statistics") {
  const auto all = default_registry();
  std::vector<Check> reg;
  for (const auto& c : all) {
    if (c.name == "martingale" || c.name == "measure_change") reg.push_back(c);
  }
  SuiteConfig c;
  c.budget = 0.5;
  const auto r = check_determinism(reg, c);
  MESSAGE(r.details);
  CHECK(r.passed);
  CHECK(r.statistic == 0.0);
}
