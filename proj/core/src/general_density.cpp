#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "verhulst/density.hpp"

namespace verhulst::density {

namespace {

// (λv/2) / sinh(λv/2) and (λ coth(λv/2) - 2/v), accurate as λv → 0.
struct HyperbolicTerms {
  double log_ratio;
  double coth_excess;
};

HyperbolicTerms hyperbolic_terms(double lambda, double v) {
  const double y = 0.5 * lambda * v;
  HyperbolicTerms h{};
  if (y < 1e-4) {
    const double y2 = y * y;
    h.log_ratio = -y2 / 6.0 + y2 * y2 / 180.0;
    h.coth_excess = (2.0 / v) * (y2 / 3.0 - y2 * y2 / 45.0);
  } else {
    // ln(y / sinh y) = ln(2y) - y - log1p(-e^{-2y})
    h.log_ratio = std::log(2.0 * y) - y - std::log1p(-std::exp(-2.0 * y));
    h.coth_excess = (2.0 / v) * (y / std::tanh(y) - 1.0);
  }
  return h;
}

double log_sinh(double y) { return y + std::log1p(-std::exp(-2.0 * y)) - std::log(2.0); }

void check_t(double t, const QuadConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("t must be > 0");
  if (0.25 * t < cfg.t_min_theta) {
    throw DomainError("t/4 = " + std::to_string(0.25 * t) + " below t_min_theta = " + std::to_string(cfg.t_min_theta));
  }
}

// ψ in log form without the Θ factor.
double log_psi_prefactor(double mu, double t, double v, double x) {
  return std::log(0.5) + mu * x - 0.5 * mu * mu * t - std::log(v) - 2.0 * (1.0 + std::exp(x)) / v;
}

}  // namespace

void MyorEval::validate() const {
  if (!(t > 0.0)) throw InvalidParameter("MyorEval: t must be > 0");
  if (!(v > 0.0)) throw InvalidParameter("MyorEval: v must be > 0");
  if (!(lambda > 0.0)) throw InvalidParameter("MyorEval: lambda must be > 0");
  if (!std::isfinite(mu) || !std::isfinite(x)) throw InvalidParameter("MyorEval: mu and x must be finite");
}

double myor_psi(double mu, double t, double v, double x, const QuadConfig& cfg) {
  check_t(t, cfg);
  if (!(v > 0.0)) throw DomainError("myor_psi: v must be > 0");
  const double lp = log_psi_prefactor(mu, t, v, x);
  if (lp < -745.0) return 0.0;
  return std::exp(lp) * specfun::hartman_watson_theta(4.0 * std::exp(0.5 * x) / v, 0.25 * t, cfg);
}

double myor_conditional_laplace(const MyorEval& e, const QuadConfig& cfg) {
  e.validate();
  check_t(e.t, cfg);
  const double lp = log_psi_prefactor(e.mu, e.t, e.v, e.x);
  const double r0 = 4.0 * std::exp(0.5 * e.x) / e.v;
  const double theta0 = lp < -745.0 ? 0.0 : specfun::hartman_watson_theta(r0, 0.25 * e.t, cfg);
  const double psi = lp < -745.0 ? 0.0 : std::exp(lp) * theta0;
  if (!(psi >= kPsiFloor)) {
    throw OutOfSupport("myor_conditional_laplace: psi = " + std::to_string(psi) + " below 1e-12 at v=" +
                       std::to_string(e.v) + " x=" + std::to_string(e.x));
  }
  const double y = 0.5 * e.lambda * e.v;
  const HyperbolicTerms h = hyperbolic_terms(e.lambda, e.v);
  const double phi = std::exp(std::log(2.0 * e.lambda) + 0.5 * e.x - log_sinh(y));
  const double theta_phi = specfun::hartman_watson_theta(phi, 0.25 * e.t, cfg);
  return std::exp(h.log_ratio - (1.0 + std::exp(e.x)) * h.coth_excess) * theta_phi / theta0;
}

double h_kernel(double gamma, double mu, double t, double y, double x, const QuadConfig& cfg) {
  if (!(gamma > 0.0)) throw InvalidParameter("h_kernel: gamma must be > 0");
  if (!(x > 0.0)) throw DomainError("h_kernel: x must be > 0");
  const MyorEval e{mu, t, y, std::log(x), gamma};
  return std::exp(gamma * (mu + 0.5) * y) * myor_conditional_laplace(e, cfg);
}

const char* to_string(GeneralVariant v) {
  return v == GeneralVariant::Unconditional ? "unconditional" : "endpoint-conditional";
}

GeneralVariant general_variant_from_string(const std::string& name) {
  if (name == "unconditional") return GeneralVariant::Unconditional;
  if (name == "endpoint-conditional") return GeneralVariant::EndpointConditional;
  throw InvalidParameter("unknown general-density variant '" + name + "'");
}

GeneralDensityEstimate density_general_mc(double gamma, double mu, double t, double x, const sim::McConfig& mc,
                                          const QuadConfig& cfg, GeneralVariant variant) {
  if (!(gamma >= 0.0)) throw InvalidParameter("density_general_mc: gamma must be >= 0");
  if (!(x > 0.0)) throw DomainError("density_general_mc: x must be > 0");
  if (mc.n < 1) throw InvalidParameter("density_general_mc: n must be >= 1");
  check_t(t, cfg);
  const double base = lognormal_density(mu, t, x);
  if (gamma == 0.0) return GeneralDensityEstimate{McEstimate{base, 0.0, mc.n}, 0};

  const sim::TimeGrid grid = sim::TimeGrid::with_step(t, mc.dt);
  const std::size_t steps = grid.n_steps;
  const double dt = grid.dt();
  const double sd = std::sqrt(dt);
  const double end = std::log(x);
  constexpr double kRefused = std::numeric_limits<double>::quiet_NaN();

  const std::vector<double> h = parallel_map<double>(mc.n, mc.threads, [&](std::size_t i) {
    Rng rng(mc.seed, i);
    double a = 0.0;
    if (variant == GeneralVariant::Unconditional) {
      a = sim::simulate_functional_summary(sim::ModelParams{mu, 0.0, 1.0, sim::Mode::Generic}, grid, rng).a_T;
    } else {
      // Bridge pinned at ln x: W_s - (s/t)W_t + (s/t) ln x.
      thread_local std::vector<double> w;
      w.assign(steps + 1, 0.0);
      for (std::size_t k = 1; k <= steps; ++k) w[k] = w[k - 1] + sd * rng.normal();
      const double slope = (end - w[steps]) / t;
      double prev = 1.0;
      for (std::size_t k = 1; k <= steps; ++k) {
        const double cur = std::exp(w[k] + slope * static_cast<double>(k) * dt);
        a += 0.5 * dt * (prev + cur);
        prev = cur;
      }
    }
    try {
      return h_kernel(gamma, mu, t, a, x, cfg);
    } catch (const OutOfSupport&) {
      return kRefused;
    }
  });

  Accumulator acc;
  std::size_t refused = 0;
  for (double v : h) {
    if (std::isnan(v)) {
      ++refused;
    } else {
      acc.add(v);
    }
  }
  McEstimate e = acc.estimate();
  const double scale = base * std::exp(-gamma * (x - 1.0));
  e.mean *= scale;
  e.std_error *= scale;
  return GeneralDensityEstimate{e, refused};
}

}  // namespace verhulst::density
