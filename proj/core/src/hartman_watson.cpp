#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gauss_legendre_impl.hpp"
#include "verhulst/specfun.hpp"

#ifdef VERHULST_HAVE_QUADMATH
#include <quadmath.h>
#endif

namespace verhulst::specfun {

namespace {

template <class Real>
struct Math;

template <>
struct Math<double> {
  static double exp(double x) { return std::exp(x); }
  static double expm1(double x) { return std::expm1(x); }
  static double sin(double x) { return std::sin(x); }
  static double cos(double x) { return std::cos(x); }
  static double abs(double x) { return std::fabs(x); }
  static double pi() { return std::numbers::pi; }
  static double eps() { return 1e-16; }
};

template <>
struct Math<long double> {
  static long double exp(long double x) { return std::exp(x); }
  static long double expm1(long double x) { return std::expm1(x); }
  static long double sin(long double x) { return std::sin(x); }
  static long double cos(long double x) { return std::cos(x); }
  static long double abs(long double x) { return std::fabs(x); }
  static long double pi() { return std::numbers::pi_v<long double>; }
  static long double eps() { return 1e-19L; }
};

#ifdef VERHULST_HAVE_QUADMATH
template <>
struct Math<__float128> {
  static __float128 exp(__float128 x) { return expq(x); }
  static __float128 expm1(__float128 x) { return expm1q(x); }
  static __float128 sin(__float128 x) { return sinq(x); }
  static __float128 cos(__float128 x) { return cosq(x); }
  static __float128 abs(__float128 x) { return fabsq(x); }
  static __float128 pi() { return M_PIq; }
  static __float128 eps() { return static_cast<__float128>(1e-32); }
};
#endif

constexpr int kOrder = 16;

template <class Real>
struct Rule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

template <class Real>
const Rule<Real>& rule() {
  static const Rule<Real> r = [] {
    Rule<Real> out;
    quad::detail::legendre_rule<Real>(
        kOrder, out.nodes, out.weights, [](Real v) { return Math<Real>::cos(v); },
        [](Real v) { return Math<Real>::abs(v); }, Math<Real>::pi(), Math<Real>::eps());
    return out;
  }();
  return r;
}

// log of the integrand envelope e^{-z²/2t - r(cosh z - 1)} sinh z, up to the
// constant prefactor; the sinh is bounded by e^z.
double log_envelope(double r, double t, double z) {
  const double s = std::sinh(0.5 * z);
  return -z * z / (2.0 * t) - 2.0 * r * s * s + z;
}

double log_envelope_slope(double r, double t, double z) { return -z / t - r * std::sinh(z) + 1.0; }

// Θ(r,t) = C · I with C = r/√(2π³t)·e^{π²/2t - r} and
// I = ∫₀^∞ e^{-z²/2t - 2r sinh²(z/2)} sinh z sin(πz/t) dz.
template <class Real>
double theta_impl(double r_in, double t_in, const QuadConfig& cfg) {
  using M = Math<Real>;
  const Rule<Real>& gl = rule<Real>();
  const Real r = r_in;
  const Real t = t_in;
  const Real pi = M::pi();

  const double log_prefactor = std::log(r_in) - 0.5 * std::log(2.0 * std::pow(std::numbers::pi, 3) * t_in) +
                               std::numbers::pi * std::numbers::pi / (2.0 * t_in) - r_in;
  const double log_cut = std::log(cfg.abs_tol / cfg.z_cut_factor);

  // Sub-panels per half-period keep each GL16 panel narrower than the local
  // scale of the non-oscillatory factor.
  const double h_max = std::min(1.0, 1.5 / std::sqrt(r_in));
  const int sub = std::max(1, static_cast<int>(std::ceil(t_in / h_max)));

  // sin(πz/t) at the nodes depends only on the relative position inside the
  // half-period, up to the sign (-1)^k.
  std::vector<Real> sin_rel(static_cast<std::size_t>(sub * kOrder));
  for (int j = 0; j < sub; ++j) {
    for (int i = 0; i < kOrder; ++i) {
      const Real rel = (Real(j) + (Real(1) + gl.nodes[i]) / Real(2)) / Real(sub);
      sin_rel[static_cast<std::size_t>(j * kOrder + i)] = M::sin(pi * rel);
    }
  }

  const Real half_width = t / Real(2 * sub);
  Real total = 0;
  int panels = 0;
  for (long k = 0;; ++k) {
    Real half_period = 0;
    bool done = false;
    for (int j = 0; j < sub; ++j) {
      const Real a = t * (Real(k) + Real(j) / Real(sub));
      const Real mid = a + half_width;
      Real acc = 0;
      for (int i = 0; i < kOrder; ++i) {
        const Real z = mid + half_width * gl.nodes[i];
        const Real e = M::expm1(z / Real(2));
        const Real sinh_half = e * (e + Real(2)) / (Real(2) * (e + Real(1)));
        const Real cosh_half = ((e + Real(1)) + Real(1) / (e + Real(1))) / Real(2);
        const Real sinh_z = Real(2) * sinh_half * cosh_half;
        const Real g = M::exp(-z * z / (Real(2) * t) - Real(2) * r * sinh_half * sinh_half);
        acc += gl.weights[i] * g * sinh_z * sin_rel[static_cast<std::size_t>(j * kOrder + i)];
      }
      half_period += half_width * acc;
      if (++panels > cfg.max_panels) {
        throw ConvergenceError("hartman_watson_theta: panel budget exhausted at r=" + std::to_string(r_in) +
                               " t=" + std::to_string(t_in));
      }
      const double z_end = t_in * (static_cast<double>(k) + static_cast<double>(j + 1) / sub);
      if (log_envelope_slope(r_in, t_in, z_end) < 0.0 &&
          log_prefactor + log_envelope(r_in, t_in, z_end) + std::log(z_end + 1.0) < log_cut) {
        done = true;
        break;
      }
    }
    total += (k % 2 == 0) ? half_period : -half_period;
    if (done) break;
  }

  const Real value = M::exp(Real(log_prefactor)) * total;
  const double out = static_cast<double>(value);
  if (out < 0.0) {
    if (out > -cfg.abs_tol) return 0.0;
    throw ConvergenceError("hartman_watson_theta: negative sum " + std::to_string(out) + " at r=" +
                           std::to_string(r_in) + " t=" + std::to_string(t_in));
  }
  return out;
}

}  // namespace

double hartman_watson_theta(double r, double t, const QuadConfig& cfg) {
  cfg.validate();
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("hartman_watson_theta: r must be > 0");
  if (!(t >= cfg.t_min_theta) || !std::isfinite(t)) {
    throw DomainError("hartman_watson_theta: t = " + std::to_string(t) + " below t_min_theta = " +
                      std::to_string(cfg.t_min_theta));
  }
  if (t >= 0.5) return theta_impl<double>(r, t, cfg);
#ifdef VERHULST_HAVE_QUADMATH
  if (t >= 0.2) return theta_impl<long double>(r, t, cfg);
  return theta_impl<__float128>(r, t, cfg);
#else
  return theta_impl<long double>(r, t, cfg);
#endif
}

double theta_upper_bound(double r, double t) {
  return r / (2.0 * std::numbers::pi) * std::exp(std::numbers::pi * std::numbers::pi / (2.0 * t) + 0.5 * t - r);
}

}  // namespace verhulst::specfun
