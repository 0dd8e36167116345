#include <cmath>
#include <numbers>
#include <string>

#include "verhulst/specfun.hpp"

namespace verhulst::specfun {

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0)) throw InvalidParameter("QuadConfig: abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw InvalidParameter("QuadConfig: rel_tol must be > 0");
  if (max_panels < 1) throw InvalidParameter("QuadConfig: max_panels must be >= 1");
  if (!(z_cut_factor > 0.0)) throw InvalidParameter("QuadConfig: z_cut_factor must be > 0");
  if (!(t_min_theta > 0.0)) throw InvalidParameter("QuadConfig: t_min_theta must be > 0");
}

QuadConfig default_quad_config() {
  QuadConfig cfg;
#ifndef VERHULST_HAVE_QUADMATH
  cfg.t_min_theta = 0.2;
#endif
  return cfg;
}

double phi_arcosh(double x, double y) {
  if (!(x >= 0.0)) throw DomainError("phi_arcosh: x must be >= 0");
  const double ay = std::fabs(y);
  if (ay > 300.0 || (x > 0.0 && std::log(x) - y > 300.0)) {
    // A = x e^{-y} + cosh y is huge: arcosh A = ln(2A) up to e^{-2 ln A}.
    const double la = x > 0.0 ? std::log(x) - y : -INFINITY;
    const double lb = ay - std::numbers::ln2;
    const double hi = std::fmax(la, lb);
    const double log_a = hi + std::log1p(std::exp(std::fmin(la, lb) - hi));
    return std::numbers::ln2 + log_a;
  }
  // A - 1 without cancellation, then ln(A + √(A² - 1)) = log1p((A-1) + √((A-1)(A+1))).
  const double s = std::sinh(0.5 * y);
  const double am1 = x * std::exp(-y) + 2.0 * s * s;
  return std::log1p(am1 + std::sqrt(am1 * (am1 + 2.0)));
}

double laplace_kernel_F(double x, double z, double t) {
  if (!(z >= 0.0)) throw DomainError("laplace_kernel_F: z must be >= 0");
  if (!(t > 0.0)) throw DomainError("laplace_kernel_F: t must be > 0");
  if (z == 0.0) return 1.0;
  const double phi = phi_arcosh(z, x);
  const double ax = std::fabs(x);
  const double gap = std::fmax(phi - ax, 0.0);
  return std::exp(-gap * (phi + ax) / (2.0 * t));
}

}  // namespace verhulst::specfun
