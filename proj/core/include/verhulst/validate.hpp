#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "verhulst/simulate.hpp"
#include "verhulst/specfun.hpp"

namespace verhulst::validate {

/// Outcome of one check. passed ⇔ statistic ≤ threshold.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string n_or_tolerance;
  bool passed = false;
  std::string details;
  /// Wall time of the check; informational, not part of the CSV.
  double seconds = 0.0;

  static TestReport make(std::string name, double statistic, double threshold, std::string n_or_tolerance,
                         std::string details);
};

inline constexpr const char* kReportCsvHeader = "name,statistic,threshold,passed,details";
void write_report_csv(std::ostream& os, std::span<const TestReport> reports);
void write_report_text(std::ostream& os, std::span<const TestReport> reports);

/// Sup distance between the empirical CDF of sorted samples and cdf.
double ks_distance(std::span<const double> sorted_samples, const std::function<double(double)>& cdf);

/// A bounded test function of θ.
struct TestFunction {
  std::string name;
  std::function<double(double)> f;
};

/// 1{θ ≤ 0.5}, 1{θ ≤ 1}, 1{θ ≤ 2}, e^{-θ}.
std::vector<TestFunction> default_test_functions();

/// Paired check of E[M_t f(θ^{(μ,β)}_t)] = E[f(θ^{(μ,β+γ)}_t)] on shared
/// Brownian paths. Statistic: max |z| over the test functions; threshold 3.
TestReport measure_change_test(const sim::ModelParams& params, double gamma, double t, const sim::McConfig& mc,
                               const std::vector<TestFunction>& test_fns = default_test_functions());

/// α ∈ [0,1), γ > 0, β = γα/(1-α); drift μ; horizon t ≤ T.
struct RepresentationParams {
  double alpha = 0.5;
  double gamma = 1.0;
  double beta = 1.0;
  double mu = 0.0;
  double t = 1.0;
  double T = 1.0;

  static RepresentationParams from_alpha(double alpha, double gamma, double mu, double t, double T);
  void validate() const;
};

/// max over nodes of |B+μs - α(V+μs) - (1-α) ln θ_s| with V = B + γ∫θ,
/// averaged over `paths` independent paths. Threshold 10·dt.
TestReport representation_check(const RepresentationParams& rp, const sim::TimeGrid& grid, std::uint64_t seed,
                                 std::size_t paths = 64);

/// Residual at dt and at dt/2 on shared increments (coarse increments are
/// sums of fine pairs). Statistic |ratio/2 - 1|, threshold 0.2.
TestReport representation_refinement(const RepresentationParams& rp, std::size_t n_steps, std::uint64_t seed,
                                     std::size_t paths = 64);

/// Common kernel 2λ e^{-x-z} √(xz) F_v(x, z) of both sides of the z² relation.
double z2_kernel(double lambda, double x, double z);

/// Left side z² ∫₀^∞ 2e^{-2x} p_λ(x → z) dx of the z² relation.
double z2_lhs(double lambda, double z, const specfun::QuadConfig& cfg);
/// Right side 2e^{-2z} ∫₀^∞ w² p_λ(z → w) dw.
double z2_rhs(double lambda, double z, const specfun::QuadConfig& cfg);

/// Max relative gap between the two sides over z_grid; threshold 1e-3.
TestReport z2_symmetry_check(double lambda, std::span<const double> z_grid, const specfun::QuadConfig& cfg);

}  // namespace verhulst::validate
