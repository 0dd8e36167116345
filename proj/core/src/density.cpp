#include "verhulst/density.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "verhulst/quadrature.hpp"

namespace verhulst::density {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be > 0");
}

}  // namespace

double lognormal_density(double mu, double t, double x) {
  require_positive(t, "lognormal_density: t");
  require_positive(x, "lognormal_density: x");
  const double d = std::log(x) - mu * t;
  return std::exp(-d * d / (2.0 * t)) / (x * std::sqrt(2.0 * kPi * t));
}

double lognormal_cdf(double mu, double t, double x) {
  require_positive(t, "lognormal_cdf: t");
  if (x <= 0.0) return 0.0;
  return 0.5 * std::erfc(-(std::log(x) - mu * t) / std::sqrt(2.0 * t));
}

double density_exact_half(double x, double t, double w, const QuadConfig& cfg) {
  require_positive(x, "density_exact_half: x_start");
  require_positive(w, "density_exact_half: w");
  if (!(t >= cfg.t_min_theta)) {
    throw DomainError("density_exact_half: t = " + std::to_string(t) + " below t_min_theta");
  }
  const double log_pref = -t / 8.0 + x - w + 0.5 * std::log(x / (w * w * w));
  const double s = x + w;
  // Integrand in u = ln z is e^{-z/2-(x²+w²)/2z} Θ(xw/z, t); bounded through
  // Θ(r,t) ≤ r/2π e^{π²/2t + t/2 - r}.
  auto log_bound = [&](double u) {
    const double z = std::exp(u);
    return log_pref - 0.5 * z - s * s / (2.0 * z) + std::log(x * w / (2.0 * kPi)) - u + kPi * kPi / (2.0 * t) +
           0.5 * t;
  };
  const double threshold = std::log(cfg.abs_tol) - 7.0;
  const double u0 = std::log(s);
  if (log_bound(u0) < threshold) return 0.0;
  double u_lo = u0;
  while (log_bound(u_lo) > threshold) u_lo -= 0.25;
  double u_hi = u0;
  while (log_bound(u_hi) > threshold) u_hi += 0.25;

  const double xw = x * w;
  const double q = 0.5 * (x * x + w * w);
  auto f = [&](double u) {
    const double z = std::exp(u);
    const double e = -0.5 * z - q / z;
    return std::exp(e) * specfun::hartman_watson_theta(xw / z, t, cfg);
  };
  const int panels = static_cast<int>(std::ceil((u_hi - u_lo) / 0.5));
  const double integral = quad::integrate_gl(f, u_lo, u_lo + 0.5 * panels, panels, quad::gauss_legendre(16));
  return std::exp(log_pref) * integral;
}

double density_exp_time(double x, double lambda, double z) {
  require_positive(x, "density_exp_time: x_start");
  require_positive(lambda, "density_exp_time: lambda");
  require_positive(z, "density_exp_time: z");
  const auto nu = specfun::BesselOrder::from_rate(lambda);
  // e^{x-z} I(min) K(max) = e^{x-z+min-max} · scaled product
  const double shift = z > x ? 2.0 * (x - z) : 0.0;
  return 2.0 * lambda * std::sqrt(x / (z * z * z)) * std::exp(shift) * specfun::bessel_product_F_scaled(nu, x, z);
}

double cdf_exp_time(double x, double lambda, double w) {
  require_positive(x, "cdf_exp_time: x_start");
  require_positive(lambda, "cdf_exp_time: lambda");
  if (w <= 0.0) return 0.0;
  // z·p(z) ~ z^{v-1/2} near 0 with v > 1/2; below e^{-40} the mass is
  // negligible. The density has a kink at z = x, so ln x is a breakpoint.
  const double u_hi = std::log(w);
  const double u_kink = std::log(x);
  std::vector<double> breaks{-40.0};
  if (u_kink > breaks.back() && u_kink < u_hi) breaks.push_back(u_kink);
  if (u_hi <= breaks.front()) return 0.0;
  breaks.push_back(u_hi);
  auto f = [&](double u) {
    const double z = std::exp(u);
    return z * density_exp_time(x, lambda, z);
  };
  return quad::integrate_breaks(f, breaks, 4.0, quad::gauss_legendre(16));
}

MixtureValue exp_time_mixture(double x, double lambda, double w, const QuadConfig& cfg) {
  require_positive(lambda, "exp_time_mixture: lambda");
  MixtureValue out;
  out.t_lo = cfg.t_min_theta;
  // e^{-λt} below 1e-16 relative beyond this point
  out.t_hi = out.t_lo + 37.0 / lambda;
  std::vector<double> breaks{out.t_lo};
  while (breaks.back() < out.t_hi) breaks.push_back(std::min(2.0 * breaks.back(), out.t_hi));
  const auto& rule = quad::gauss_legendre(16);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    sum += quad::integrate_gl(
        [&](double t) { return lambda * std::exp(-lambda * t) * density_exact_half(x, t, w, cfg); }, breaks[k],
        breaks[k + 1], 1, rule);
  }
  out.value = sum;
  return out;
}

double moment_exp_int_theta(const sim::ModelParams& params, double t) {
  params.validate();
  if (!(t >= 0.0)) throw DomainError("moment_exp_int_theta: t must be >= 0");
  const double k = params.mu + 0.5;
  if (k == 0.0) return 1.0 + params.beta * t;
  return 1.0 + params.beta * std::expm1(k * t) / k;
}

}  // namespace verhulst::density
