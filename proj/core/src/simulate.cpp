#include "verhulst/simulate.hpp"

#include <cmath>
#include <cstring>
#include <ostream>
#include <string>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "verhulst/specfun.hpp"

namespace verhulst::sim {

ModelParams ModelParams::section3(double x) { return ModelParams{-0.5, x, x, Mode::Section3}; }

void ModelParams::validate() const {
  if (!std::isfinite(mu)) throw InvalidParameter("ModelParams: mu must be finite");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidParameter("ModelParams: beta must be >= 0");
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw InvalidParameter("ModelParams: x0 must be > 0");
  if (mode == Mode::Section3 && (mu != -0.5 || beta != x0)) {
    throw InvalidParameter("ModelParams: section-3 mode requires mu = -1/2 and beta = x0");
  }
}

void TimeGrid::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidParameter("TimeGrid: t_end must be > 0");
  if (n_steps < 1) throw InvalidParameter("TimeGrid: n_steps must be >= 1");
}

TimeGrid TimeGrid::with_step(double t_end, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("TimeGrid: dt must be > 0");
  const double steps = std::ceil(t_end / dt - 1e-9);
  return TimeGrid{t_end, static_cast<std::size_t>(std::max(1.0, steps))};
}

PathSummary PathSample::summary() const {
  return PathSummary{theta.back(), bmd.back(), int_theta, int_theta_sq, a_T, A_T, guard_events};
}

namespace {

// Records every node when `path` is non-null.
struct Recorder {
  PathSample* path;
  void reset(const TimeGrid& grid) {
    if (!path) return;
    path->grid = grid;
    const std::size_t n = grid.n_steps + 1;
    for (auto* v : {&path->theta, &path->bmd, &path->int_theta_path, &path->int_theta_sq_path, &path->a_path,
                    &path->A_path}) {
      v->clear();
      v->reserve(n);
    }
  }
  void push(double theta, double bmd, double it, double it2, double a, double A) const {
    if (!path) return;
    path->theta.push_back(theta);
    path->bmd.push_back(bmd);
    path->int_theta_path.push_back(it);
    path->int_theta_sq_path.push_back(it2);
    path->a_path.push_back(a);
    path->A_path.push_back(A);
  }
};

template <class Increment>
PathSummary run_functional(const ModelParams& p, const TimeGrid& grid, Increment&& next, Recorder rec) {
  const double dt = grid.dt();
  const double drift = p.mu * dt;
  rec.reset(grid);
  double bmd = 0.0;
  double e_prev = 1.0;
  double a = 0.0;
  double A = 0.0;
  double theta_prev = p.x0;
  double it = 0.0;
  double it2 = 0.0;
  rec.push(theta_prev, 0.0, 0.0, 0.0, 0.0, 0.0);
  for (std::size_t i = 0; i < grid.n_steps; ++i) {
    bmd += next() + drift;
    const double e = std::exp(bmd);
    a += 0.5 * dt * (e_prev + e);
    A += 0.5 * dt * (e_prev * e_prev + e * e);
    const double theta = p.x0 * e / (1.0 + p.beta * a);
    it += 0.5 * dt * (theta_prev + theta);
    it2 += 0.5 * dt * (theta_prev * theta_prev + theta * theta);
    rec.push(theta, bmd, it, it2, a, A);
    e_prev = e;
    theta_prev = theta;
  }
  return PathSummary{theta_prev, bmd, it, it2, a, A, 0};
}

template <class Increment>
PathSummary run_euler(const ModelParams& p, const TimeGrid& grid, Increment&& next, Recorder rec) {
  const double dt = grid.dt();
  const double drift = p.mu * dt;
  const double growth = p.mu + 0.5;
  const double c = p.crowding();
  const double floor = 1e-12 * p.x0;
  rec.reset(grid);
  double bmd = 0.0;
  double e_prev = 1.0;
  double a = 0.0;
  double A = 0.0;
  double theta_prev = p.x0;
  double it = 0.0;
  double it2 = 0.0;
  std::size_t guard = 0;
  rec.push(theta_prev, 0.0, 0.0, 0.0, 0.0, 0.0);
  for (std::size_t i = 0; i < grid.n_steps; ++i) {
    const double db = next();
    bmd += db + drift;
    const double e = std::exp(bmd);
    a += 0.5 * dt * (e_prev + e);
    A += 0.5 * dt * (e_prev * e_prev + e * e);
    double theta = theta_prev + theta_prev * db + (growth * theta_prev - c * theta_prev * theta_prev) * dt;
    if (!(theta > 0.0)) {
      theta = floor;
      ++guard;
    }
    it += 0.5 * dt * (theta_prev + theta);
    it2 += 0.5 * dt * (theta_prev * theta_prev + theta * theta);
    rec.push(theta, bmd, it, it2, a, A);
    e_prev = e;
    theta_prev = theta;
  }
  return PathSummary{theta_prev, bmd, it, it2, a, A, guard};
}

PathSample finish(PathSample path, const PathSummary& s) {
  path.int_theta = s.int_theta;
  path.int_theta_sq = s.int_theta_sq;
  path.a_T = s.a_T;
  path.A_T = s.A_T;
  path.guard_events = s.guard_events;
  return path;
}

auto increments_reader(std::span<const double> dB, std::size_t expected) {
  if (dB.size() != expected) throw InvalidParameter("increment count does not match the grid");
  return [dB, i = std::size_t{0}]() mutable { return dB[i++]; };
}

}  // namespace

void write_path_csv(std::ostream& os, const PathSample& path) {
  os << kPathCsvHeader << '\n';
  os.precision(17);
  const double dt = path.grid.dt();
  for (std::size_t i = 0; i < path.theta.size(); ++i) {
    os << static_cast<double>(i) * dt << ',' << path.theta[i] << ',' << path.bmd[i] << ','
       << path.int_theta_path[i] << ',' << path.int_theta_sq_path[i] << ',' << path.a_path[i] << ','
       << path.A_path[i] << '\n';
  }
}

std::vector<double> brownian_increments(const TimeGrid& grid, std::uint64_t seed, std::uint64_t index) {
  grid.validate();
  Rng rng(seed, index);
  const double sd = std::sqrt(grid.dt());
  std::vector<double> dB(grid.n_steps);
  for (auto& x : dB) x = sd * rng.normal();
  return dB;
}

PathSample functional_from_increments(const ModelParams& params, const TimeGrid& grid,
                                      std::span<const double> dB) {
  params.validate();
  grid.validate();
  PathSample path;
  const auto s = run_functional(params, grid, increments_reader(dB, grid.n_steps), Recorder{&path});
  return finish(std::move(path), s);
}

PathSample euler_from_increments(const ModelParams& params, const TimeGrid& grid, std::span<const double> dB) {
  params.validate();
  grid.validate();
  PathSample path;
  const auto s = run_euler(params, grid, increments_reader(dB, grid.n_steps), Recorder{&path});
  return finish(std::move(path), s);
}

PathSample simulate_functional(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed,
                               std::uint64_t index) {
  return functional_from_increments(params, grid, brownian_increments(grid, seed, index));
}

PathSample simulate_sde_euler(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed,
                              std::uint64_t index) {
  return euler_from_increments(params, grid, brownian_increments(grid, seed, index));
}

PathSummary simulate_functional_summary(const ModelParams& params, const TimeGrid& grid, Rng& rng) {
  const double sd = std::sqrt(grid.dt());
  return run_functional(params, grid, [&] { return sd * rng.normal(); }, Recorder{nullptr});
}

double girsanov_weight(const PathSummary& path, double gamma, const ModelParams& params) {
  if (!(gamma >= 0.0)) throw InvalidParameter("girsanov_weight: gamma must be >= 0");
  const double c = params.crowding();
  const double exponent = -gamma * (path.theta_T - params.x0) + gamma * (params.mu + 0.5) * path.int_theta -
                          (gamma * c + 0.5 * gamma * gamma) * path.int_theta_sq;
  return std::exp(exponent);
}

double girsanov_weight(const PathSample& path, double gamma, const ModelParams& params) {
  return girsanov_weight(path.summary(), gamma, params);
}

double girsanov_weight_bound(double gamma, const ModelParams& params, double t_end) {
  const double c = params.crowding();
  const double lin = gamma * (params.mu + 0.5);
  const double quad = gamma * c + 0.5 * gamma * gamma;
  if (quad <= 0.0) return std::exp(gamma * params.x0);
  return std::exp(gamma * params.x0 + lin * lin * t_end / (4.0 * quad));
}

double sample_besq0(double x_start, double s, Rng& rng) {
  if (!(x_start >= 0.0)) throw InvalidParameter("sample_besq0: x_start must be >= 0");
  if (!(s > 0.0)) throw InvalidParameter("sample_besq0: s must be > 0");
  if (x_start == 0.0) return 0.0;
  const long long count = boost::random::poisson_distribution<long long, double>(x_start / (2.0 * s))(rng.engine());
  if (count == 0) return 0.0;
  return 2.0 * s * boost::random::gamma_distribution<double>(static_cast<double>(count), 1.0)(rng.engine());
}

double sample_exp_time(double rate, Rng& rng) {
  if (!(rate > 0.0)) throw InvalidParameter("sample_exp_time: rate must be > 0");
  // inverse CDF on (0, 1]
  return -std::log1p(-rng.uniform01()) / rate;
}

const char* to_string(Prop1Variant v) {
  switch (v) {
    case Prop1Variant::FullHorizon:
      return "full-horizon";
    case Prop1Variant::QuarterKernel:
      return "quarter-kernel";
    case Prop1Variant::QuarterHorizon:
      return "quarter-horizon";
  }
  return "unknown";
}

Prop1Variant prop1_variant_from_string(const char* name) {
  for (auto v : {Prop1Variant::FullHorizon, Prop1Variant::QuarterKernel, Prop1Variant::QuarterHorizon}) {
    if (std::strcmp(name, to_string(v)) == 0) return v;
  }
  throw InvalidParameter(std::string("unknown prop1 variant '") + name + "'");
}

namespace {

void check_mc(const McConfig& mc) {
  if (mc.n < 1) throw InvalidParameter("McConfig: n must be >= 1");
  if (!(mc.dt > 0.0)) throw InvalidParameter("McConfig: dt must be > 0");
}

void check_rate(double lambda, const char* who) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter(std::string(who) + ": lambda must be >= 0");
  }
}

}  // namespace

McEstimate laplace_prop1_mc(double lambda, const ModelParams& params, double t, const McConfig& mc,
                            Prop1Variant variant) {
  params.validate();
  check_mc(mc);
  check_rate(lambda, "laplace_prop1_mc");
  if (!(params.beta > 0.0)) throw InvalidParameter("laplace_prop1_mc: requires beta > 0");
  if (!(t > 0.0)) throw InvalidParameter("laplace_prop1_mc: t must be > 0");
  const double horizon = variant == Prop1Variant::QuarterHorizon ? 0.25 * t : t;
  const double kernel_time = variant == Prop1Variant::FullHorizon ? t : 0.25 * t;
  const double mean = 2.0 * params.mu * horizon;
  const double sd = std::sqrt(horizon);
  const double rate = lambda * params.x0;
  const double beta = params.beta;
  return mc_estimate(mc.n, mc.threads, [&](std::size_t i) {
    Rng rng(mc.seed, i);
    const double x = mean + sd * rng.normal();
    const double r = sample_besq0(rate * std::exp(2.0 * x), 0.5, rng);
    return specfun::laplace_kernel_F(x, r / (4.0 * beta), kernel_time);
  });
}

namespace {

double prop7_value(double lambda, const ModelParams& p, const PathSummary& s) {
  const double rate = lambda * p.x0;
  const double b = p.beta;
  const double e = std::exp(s.bmd_T);
  return std::exp(b - (b + rate) * e + b * (p.mu + 0.5) * s.a_T - 0.5 * b * b * s.A_T);
}

}  // namespace

McEstimate laplace_prop7_mc(double lambda, const ModelParams& params, double t, const McConfig& mc) {
  params.validate();
  check_mc(mc);
  check_rate(lambda, "laplace_prop7_mc");
  const TimeGrid grid = TimeGrid::with_step(t, mc.dt);
  grid.validate();
  return mc_estimate(mc.n, mc.threads, [&](std::size_t i) {
    Rng rng(mc.seed, i);
    return prop7_value(lambda, params, simulate_functional_summary(params, grid, rng));
  });
}

McEstimate laplace_prop7_exp_time_mc(double lambda, const ModelParams& params, double rate,
                                     const McConfig& mc) {
  params.validate();
  check_mc(mc);
  check_rate(lambda, "laplace_prop7_exp_time_mc");
  if (!(rate > 0.0)) throw InvalidParameter("laplace_prop7_exp_time_mc: rate must be > 0");
  return mc_estimate(mc.n, mc.threads, [&](std::size_t i) {
    Rng rng(mc.seed, i);
    const double horizon = sample_exp_time(rate, rng);
    const TimeGrid grid = TimeGrid::with_step(horizon, mc.dt);
    return prop7_value(lambda, params, simulate_functional_summary(params, grid, rng));
  });
}

McEstimate direct_laplace_mc(double lambda, const ModelParams& params, double t, const McConfig& mc) {
  params.validate();
  check_mc(mc);
  check_rate(lambda, "direct_laplace_mc");
  if (lambda == 0.0) return McEstimate{1.0, 0.0, mc.n};
  const TimeGrid grid = TimeGrid::with_step(t, mc.dt);
  grid.validate();
  return mc_estimate(mc.n, mc.threads, [&](std::size_t i) {
    Rng rng(mc.seed, i);
    return std::exp(-lambda * simulate_functional_summary(params, grid, rng).theta_T);
  });
}

std::vector<double> terminal_samples(const ModelParams& params, double t, const McConfig& mc) {
  params.validate();
  check_mc(mc);
  const TimeGrid grid = TimeGrid::with_step(t, mc.dt);
  grid.validate();
  return parallel_map<double>(mc.n, mc.threads, [&](std::size_t i) {
    Rng rng(mc.seed, i);
    return simulate_functional_summary(params, grid, rng).theta_T;
  });
}

std::vector<double> exp_time_samples(const ModelParams& params, double rate, const McConfig& mc) {
  params.validate();
  check_mc(mc);
  if (!(rate > 0.0)) throw InvalidParameter("exp_time_samples: rate must be > 0");
  return parallel_map<double>(mc.n, mc.threads, [&](std::size_t i) {
    Rng rng(mc.seed, i);
    const double horizon = sample_exp_time(rate, rng);
    return simulate_functional_summary(params, TimeGrid::with_step(horizon, mc.dt), rng).theta_T;
  });
}

}  // namespace verhulst::sim
