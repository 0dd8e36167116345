#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "verhulst/specfun.hpp"

namespace verhulst::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesLimit = 30.0;

// e^{-x} Σ (x/2)^{2k+ν} / (k! Γ(k+ν+1)); all terms positive.
double i_scaled_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double q = 0.25 * x * x;
  double term = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) - x);
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (static_cast<double>(k) * (static_cast<double>(k) + nu));
    sum += term;
    if (term < 0.25 * kEps * sum && k > 0.5 * x) return sum;
  }
  throw ConvergenceError("bessel_i: ascending series did not converge");
}

// Large-argument expansion e^{-x} I_ν(x) ~ (2πx)^{-1/2} Σ (-1)^k a_k(ν) / x^k,
// truncated at the smallest term.
double i_scaled_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    const double mag = std::fabs(term);
    if (mag > prev) break;
    sum += term;
    if (mag < 0.25 * kEps * std::fabs(sum)) break;
    prev = mag;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// e^{x} K_ν(x) = ∫₀^∞ exp(-x (cosh u - 1)) cosh(νu) du.
double k_scaled_integral(double nu, double x) {
  auto log_integrand = [&](double u) {
    const double s = std::sinh(0.5 * u);
    return -2.0 * x * s * s + nu * u;
  };
  // Peak of the log-integrand (upper envelope with cosh(νu) ≤ e^{νu}).
  double u_peak = nu > 0.0 ? std::asinh(nu / x) : 0.0;
  const double peak = log_integrand(u_peak);
  double u_max = u_peak + 0.5;
  while (log_integrand(u_max) > peak - 50.0) u_max += 0.5;

  auto f = [&](double u) {
    const double s = std::sinh(0.5 * u);
    return std::exp(-2.0 * x * s * s) * std::cosh(nu * u);
  };
  int n = 16;
  double h = u_max / n;
  double sum = 0.5 * f(0.0) + 0.5 * f(u_max);
  for (int i = 1; i < n; ++i) sum += f(i * h);
  double estimate = h * sum;
  for (int level = 0; level < 20; ++level) {
    double added = 0.0;
    for (int i = 0; i < n; ++i) added += f((i + 0.5) * h);
    sum += added;
    n *= 2;
    h *= 0.5;
    const double refined = h * sum;
    if (std::fabs(refined - estimate) <= 1e-14 * std::fabs(refined)) return refined;
    estimate = refined;
  }
  throw ConvergenceError("bessel_k: trapezoid refinement did not converge");
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw InvalidParameter("BesselOrder: nu must be finite and >= 0, got " + std::to_string(nu));
  }
}

BesselOrder BesselOrder::from_rate(double lambda) {
  if (!(lambda > 0.0)) throw InvalidParameter("BesselOrder::from_rate: lambda must be > 0");
  return BesselOrder(std::sqrt(2.0 * lambda + 0.25));
}

double bessel_i_scaled(BesselOrder nu, double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i: x must be >= 0");
  if (x <= kSeriesLimit) return i_scaled_series(nu.value(), x);
  return i_scaled_asymptotic(nu.value(), x);
}

double bessel_i(BesselOrder nu, double x) {
  if (x > kBesselIOverflowGuard) {
    throw DomainError("bessel_i: x = " + std::to_string(x) + " above overflow guard 700");
  }
  const double scaled = bessel_i_scaled(nu, x);
  return x == 0.0 ? scaled : scaled * std::exp(x);
}

double bessel_k_scaled(BesselOrder nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
  return k_scaled_integral(nu.value(), x);
}

double bessel_k(BesselOrder nu, double x) { return bessel_k_scaled(nu, x) * std::exp(-x); }

double bessel_product_F(BesselOrder nu, double x, double y) {
  const double hi = std::fmax(x, y);
  const double lo = std::fmin(x, y);
  return bessel_product_F_scaled(nu, x, y) * std::exp(lo - hi);
}

double bessel_product_F_scaled(BesselOrder nu, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("bessel_product_F: arguments must be > 0");
  const double hi = std::fmax(x, y);
  const double lo = std::fmin(x, y);
  return bessel_i_scaled(nu, lo) * bessel_k_scaled(nu, hi);
}

}  // namespace verhulst::specfun
