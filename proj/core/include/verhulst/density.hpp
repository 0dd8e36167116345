#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "verhulst/random.hpp"
#include "verhulst/simulate.hpp"
#include "verhulst/specfun.hpp"

namespace verhulst::density {

using specfun::QuadConfig;

/// Density of e^{B_t + μt}.
double lognormal_density(double mu, double t, double x);
/// CDF of e^{B_t + μt}.
double lognormal_cdf(double mu, double t, double x);

/// Density at w of θ_t(x) = x e^{B_t - t/2} / (1 + x ∫₀^t e^{B_u - u/2} du):
///
///   e^{-t/8 + x - w} √(x/w³) ∫₀^∞ z⁻¹ e^{-z/2 - (x²+w²)/2z} Θ(xw/z, t) dz.
///
/// The z-integral runs over u = ln z with 32 Gauss-Legendre nodes per unit,
/// on the range where a rigorous bound of the integrand exceeds
/// cfg.abs_tol · 1e-3. Requires t ≥ cfg.t_min_theta.
double density_exact_half(double x_start, double t, double w, const QuadConfig& cfg);

/// Density at z of θ_{T_λ}(x) for an independent T_λ ~ Exp(λ):
/// 2λ e^{x-z} √(x/z³) I_v(x∨z) K_v(x∧z), v = √(2λ + 1/4).
double density_exp_time(double x_start, double lambda, double z);

/// ∫₀^w of density_exp_time by Gauss-Legendre panels in ln z.
double cdf_exp_time(double x_start, double lambda, double w);

/// λ ∫_{t_lo}^∞ e^{-λt} density_exact_half(x, t, w) dt, t_lo = cfg.t_min_theta.
/// The part of the mixture below t_lo is not evaluated (Θ is out of range
/// there), so the value falls short of density_exp_time by that amount.
struct MixtureValue {
  double value = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
};
MixtureValue exp_time_mixture(double x_start, double lambda, double w, const QuadConfig& cfg);

/// Arguments of the conditional kernels: v = a_t, x = B_t + μt.
struct MyorEval {
  double mu = 0.0;
  double t = 1.0;
  double v = 1.0;
  double x = 0.0;
  double lambda = 1.0;

  void validate() const;
};

/// Joint density of (a_t^{(μ)}, B_t + μt) at (v, x):
///   ½ e^{μx - μ²t/2} v⁻¹ e^{-2(1+e^x)/v} Θ(4e^{x/2}/v, t/4).
/// Requires t/4 ≥ cfg.t_min_theta.
double myor_psi(double mu, double t, double v, double x, const QuadConfig& cfg);

/// ψ below which conditional kernels refuse to evaluate.
inline constexpr double kPsiFloor = 1e-12;

/// E[exp(-λ²/2 · A_t) | a_t = v, B_t + μt = x], in (0, 1].
/// Throws OutOfSupport when ψ(v, x) < kPsiFloor.
double myor_conditional_laplace(const MyorEval& eval, const QuadConfig& cfg);

/// H_t(y, x) = e^{γ(μ+1/2)y} E[e^{-γ²/2·A_t} | a_t = y, B_t + μt = ln x].
double h_kernel(double gamma, double mu, double t, double y, double x, const QuadConfig& cfg);

/// Outer law of a_t in the general-μ density.
///  - Unconditional: a_t from unconstrained paths.
///  - EndpointConditional: a_t from Brownian bridges pinned at B_t + μt = ln x.
enum class GeneralVariant { Unconditional, EndpointConditional };
const char* to_string(GeneralVariant v);
GeneralVariant general_variant_from_string(const std::string& name);

struct GeneralDensityEstimate {
  McEstimate estimate;
  /// Samples whose (a_t, ln x) fell outside the ψ support and were skipped.
  std::size_t refused = 0;
};

/// g_t(γ, x) = g_t(0, x) e^{-γ(x-1)} E[H_t(a_t, x)] for the start-1 process
/// with crowding γ and drift μ. The a_t samples use mc.dt.
GeneralDensityEstimate density_general_mc(double gamma, double mu, double t, double x, const sim::McConfig& mc,
                                          const QuadConfig& cfg, GeneralVariant variant);

/// E e^{β ∫₀^t θ ds} = 1 + β/(μ+1/2)·(e^{(μ+1/2)t} - 1), or 1 + βt at μ = -1/2.
double moment_exp_int_theta(const sim::ModelParams& params, double t);

}  // namespace verhulst::density
