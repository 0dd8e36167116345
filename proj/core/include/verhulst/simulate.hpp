#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "verhulst/errors.hpp"
#include "verhulst/random.hpp"

namespace verhulst::sim {

/// Generic: θ_t = x0·e^{B_t+μt} / (1 + β a_t), with β as given.
/// Section3: start x, μ = -1/2 and β = x, i.e. θ_t(x) = x e^{B-t/2}/(1 + x a_t).
enum class Mode { Generic, Section3 };

struct ModelParams {
  double mu = 0.0;
  double beta = 0.0;
  double x0 = 1.0;
  Mode mode = Mode::Generic;

  /// Section-3 parameters for start value x.
  static ModelParams section3(double x);

  /// Crowding coefficient of the SDE dθ = θ dB + ((μ+1/2)θ - c θ²) dt,
  /// c = β / x0 (equal to β for the start-1 process).
  [[nodiscard]] double crowding() const noexcept { return beta / x0; }

  /// Throws InvalidParameter if β < 0, x0 <= 0, or section-3 constraints fail.
  void validate() const;
};

struct TimeGrid {
  double t_end = 1.0;
  std::size_t n_steps = 1000;

  [[nodiscard]] double dt() const noexcept { return t_end / static_cast<double>(n_steps); }
  void validate() const;

  /// Uniform grid on [0, t_end] with step at most dt.
  static TimeGrid with_step(double t_end, double dt);
};

/// Terminal values and running integrals of one path.
struct PathSummary {
  double theta_T = 0.0;
  double bmd_T = 0.0;  ///< B_T + μT
  double int_theta = 0.0;
  double int_theta_sq = 0.0;
  double a_T = 0.0;  ///< ∫ e^{B+μs} ds
  double A_T = 0.0;  ///< ∫ e^{2B+2μs} ds
  std::size_t guard_events = 0;
};

/// A full discretised trajectory; integrals use the trapezoid rule.
struct PathSample {
  TimeGrid grid;
  std::vector<double> theta;
  std::vector<double> bmd;
  std::vector<double> int_theta_path;  ///< running ∫θ at each node
  std::vector<double> int_theta_sq_path;
  std::vector<double> a_path;
  std::vector<double> A_path;
  double int_theta = 0.0;
  double int_theta_sq = 0.0;
  double a_T = 0.0;
  double A_T = 0.0;
  /// Euler steps that crossed zero and were reflected (always 0 for the functional).
  std::size_t guard_events = 0;

  [[nodiscard]] PathSummary summary() const;
};

/// Header of the path CSV.
inline constexpr const char* kPathCsvHeader = "t,theta,bmd,int_theta,int_theta_sq,a_t,A_t";
void write_path_csv(std::ostream& os, const PathSample& path);

/// Exact Gaussian increments of replicate stream (seed, index).
std::vector<double> brownian_increments(const TimeGrid& grid, std::uint64_t seed, std::uint64_t index = 0);

/// Path of the functional θ built from the given Brownian increments.
PathSample functional_from_increments(const ModelParams& params, const TimeGrid& grid,
                                      std::span<const double> dB);
/// Euler-Maruyama path of the SDE driven by the given increments. Steps that
/// land at or below 0 are reflected to 1e-12·x0 and counted.
PathSample euler_from_increments(const ModelParams& params, const TimeGrid& grid, std::span<const double> dB);

/// The functional along a path of replicate stream (seed, index). Same
/// stream ⇒ same increments as simulate_sde_euler.
PathSample simulate_functional(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed,
                               std::uint64_t index = 0);
PathSample simulate_sde_euler(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed,
                              std::uint64_t index = 0);

/// Allocation-free terminal summary of the functional, drawing increments from rng.
PathSummary simulate_functional_summary(const ModelParams& params, const TimeGrid& grid, Rng& rng);

/// Pathwise Girsanov weight
///   M = exp(-γ(θ_T - x0) + γ(μ+1/2)∫θ - (γc + γ²/2)∫θ²),  c = crowding().
double girsanov_weight(const PathSummary& path, double gamma, const ModelParams& params);
double girsanov_weight(const PathSample& path, double gamma, const ModelParams& params);

/// Deterministic bound exp(γx0 + (γ(μ+1/2))² T / (4(γc + γ²/2))) on the weight.
double girsanov_weight_bound(double gamma, const ModelParams& params, double t_end);

/// Exact draw of a dimension-0 squared Bessel process at time s started at
/// x_start: N ~ Poisson(x/2s), 0 if N = 0, else 2s·Gamma(N, 1).
double sample_besq0(double x_start, double s, Rng& rng);

/// Exponential draw with the given rate.
double sample_exp_time(double rate, Rng& rng);

/// Monte Carlo budget shared by the estimators below.
struct McConfig {
  std::size_t n = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  /// Time step for path-based estimators.
  double dt = 1e-3;
};

/// Horizon convention inside the squared-Bessel (prop1) estimator.
///  - FullHorizon: endpoint B_t + 2μt, kernel F at time t.
///  - QuarterKernel: endpoint B_t + 2μt, kernel F at time t/4.
///  - QuarterHorizon: endpoint B_{t/4} + 2μ(t/4), kernel F at time t/4.
/// Only QuarterHorizon reproduces E e^{-λθ_t}; the others are kept so the
/// comparison can be rerun.
enum class Prop1Variant { FullHorizon, QuarterKernel, QuarterHorizon };

const char* to_string(Prop1Variant v);
Prop1Variant prop1_variant_from_string(const char* name);

/// E e^{-λθ_t} via the squared-Bessel representation. Exact sampling, no path
/// discretisation. Throws InvalidParameter when β = 0.
McEstimate laplace_prop1_mc(double lambda, const ModelParams& params, double t, const McConfig& mc,
                            Prop1Variant variant = Prop1Variant::QuarterHorizon);

/// E e^{-λθ_t} = e^β E exp(-(β+λ)e^{B_t+μt} + β(μ+1/2)a_t - β²/2·A_t)
/// (after rescaling λ → x0·λ for a general start value).
McEstimate laplace_prop7_mc(double lambda, const ModelParams& params, double t, const McConfig& mc);

/// Same estimator at an independent exponential horizon T ~ Exp(rate).
McEstimate laplace_prop7_exp_time_mc(double lambda, const ModelParams& params, double rate,
                                     const McConfig& mc);

/// Brute force: average of e^{-λθ_t} over simulated paths.
McEstimate direct_laplace_mc(double lambda, const ModelParams& params, double t, const McConfig& mc);

/// Terminal values θ_T of mc.n independent paths, in replicate order.
std::vector<double> terminal_samples(const ModelParams& params, double t, const McConfig& mc);

/// Terminal values θ_{T_λ} at independent horizons T_λ ~ Exp(rate).
std::vector<double> exp_time_samples(const ModelParams& params, double rate, const McConfig& mc);

}  // namespace verhulst::sim
