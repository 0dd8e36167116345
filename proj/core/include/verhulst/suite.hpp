#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "verhulst/specfun.hpp"
#include "verhulst/validate.hpp"

namespace verhulst::validate {

struct SuiteConfig {
  std::uint64_t seed = 20240607;
  int threads = 1;
  /// Multiplies every Monte Carlo sample count (1 = the documented budgets).
  double budget = 1.0;
  /// Names to run; empty means all.
  std::vector<std::string> only;
  specfun::QuadConfig quad = specfun::default_quad_config();
};

/// A named check. `monte_carlo` checks are rerun by the determinism check.
struct Check {
  std::string name;
  std::string description;
  bool monte_carlo = false;
  std::function<TestReport(const SuiteConfig&)> run;
};

/// The thirteen acceptance checks, in order.
std::vector<Check> default_registry();

/// Runs every selected check in registry order. A check that throws is
/// recorded as a failed report; the suite continues.
std::vector<TestReport> run_suite(const std::vector<Check>& registry, const SuiteConfig& config);

/// Throws InvalidParameter if a name in config.only is not registered.
void check_selection(const std::vector<Check>& registry, const SuiteConfig& config);

// Individual acceptance checks.
TestReport check_bessel_product_identity(const SuiteConfig& c);
TestReport check_hartman_watson_identity(const SuiteConfig& c);
TestReport check_exact_half_density(const SuiteConfig& c);
TestReport check_exp_time_density(const SuiteConfig& c);
TestReport check_mixture_identity(const SuiteConfig& c);
TestReport check_martingale(const SuiteConfig& c);
TestReport check_measure_change(const SuiteConfig& c);
TestReport check_moment_identity(const SuiteConfig& c);
TestReport check_laplace_triangle(const SuiteConfig& c);
TestReport check_general_density(const SuiteConfig& c);
TestReport check_representation(const SuiteConfig& c);
TestReport check_z2_symmetry(const SuiteConfig& c);
/// Reruns every Monte Carlo check of `registry` at a reduced budget with 1
/// and 3 workers and compares statistics bit for bit.
TestReport check_determinism(const std::vector<Check>& registry, const SuiteConfig& c);

}  // namespace verhulst::validate
