#pragma once

#include <cmath>

#include "verhulst/errors.hpp"

namespace verhulst::specfun {

/// Tolerances and truncation policy for the oscillatory Hartman-Watson
/// integral and the outer quadratures built on top of it.
struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_panels = 2000;
  /// Panels stop once the integrand envelope drops below abs_tol / z_cut_factor.
  double z_cut_factor = 10.0;
  /// Smallest t at which Θ(r, t) is evaluated. Below this the e^{π²/2t}
  /// cancellation exceeds the working precision (binary128 where available).
  double t_min_theta = 0.1;

  /// Throws InvalidParameter if any invariant is violated.
  void validate() const;
};

/// The default configuration: abs_tol 1e-10, rel_tol 1e-8, 2000 panels,
/// z_cut_factor 10, t_min_theta 0.1 (0.2 without quad-precision support).
QuadConfig default_quad_config();

/// Order ν ≥ 0 of I_ν / K_ν.
class BesselOrder {
 public:
  explicit BesselOrder(double nu);
  /// ν = √(2λ + 1/4), the order attached to an exponential time of rate λ.
  static BesselOrder from_rate(double lambda);
  [[nodiscard]] double value() const noexcept { return nu_; }

 private:
  double nu_;
};

/// Largest argument accepted by the unscaled bessel_i (e^700 ≈ 1e304).
inline constexpr double kBesselIOverflowGuard = 700.0;

/// Modified Bessel function of the first kind I_ν(x), x ≥ 0.
/// Ascending series for x ≤ 30, large-argument expansion above.
/// Throws DomainError for x < 0 or x > kBesselIOverflowGuard.
double bessel_i(BesselOrder nu, double x);

/// e^{-x} I_ν(x); no overflow guard.
double bessel_i_scaled(BesselOrder nu, double x);

/// Modified Bessel function of the second kind K_ν(x), x > 0, from the
/// representation ∫₀^∞ e^{-x cosh u} cosh(νu) du with step-halving
/// trapezoid sums (geometrically convergent for this integrand).
double bessel_k(BesselOrder nu, double x);

/// e^{x} K_ν(x).
double bessel_k_scaled(BesselOrder nu, double x);

/// F_ν(x, y) = I_ν(min(x, y)) · K_ν(max(x, y)), the Green's function of the
/// modified Bessel equation. Bounded as either argument goes to 0 or ∞.
double bessel_product_F(BesselOrder nu, double x, double y);

/// e^{|x - y|} I_ν(min) K_ν(max), of order one for large, distant arguments.
double bessel_product_F_scaled(BesselOrder nu, double x, double y);

/// Hartman-Watson function
///
///   Θ(r, t) = r / √(2π³t) · e^{π²/2t} ∫₀^∞ e^{-z²/2t} e^{-r cosh z} sinh z sin(πz/t) dz,
///
/// normalised so that ∫₀^∞ e^{-ν²t/2} Θ(r, t) dt = I_ν(r).
///
/// The integral is summed over panels aligned with the zeros z = kt of
/// sin(πz/t), 16-point Gauss-Legendre per (sub)panel, until the integrand
/// envelope is below cfg.abs_tol / cfg.z_cut_factor. Working precision is
/// picked from t: double for t ≥ 0.5, x87 extended for t ≥ 0.2, binary128
/// below. Tiny negative sums (> -abs_tol) are clamped to 0.
///
/// Throws DomainError for r ≤ 0 or t < cfg.t_min_theta, ConvergenceError if
/// the panel count exceeds cfg.max_panels or the sum is clearly negative.
double hartman_watson_theta(double r, double t, const QuadConfig& cfg);

/// Rigorous upper bound Θ(r, t) ≤ r/(2π) · exp(π²/2t + t/2 - r), used to
/// choose truncation ranges of outer integrals.
double theta_upper_bound(double r, double t);

/// φ_x(y) = arcosh(x e^{-y} + cosh y), evaluated in logarithmic form.
double phi_arcosh(double x, double y);

/// F_x(z) at horizon t: exp(-(φ_z(x)² - x²) / 2t), in (0, 1] for z ≥ 0.
double laplace_kernel_F(double x, double z, double t);

}  // namespace verhulst::specfun
