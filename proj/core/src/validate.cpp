#include "verhulst/validate.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "verhulst/density.hpp"
#include "verhulst/quadrature.hpp"
#include "verhulst/stats.hpp"

namespace verhulst::validate {

TestReport TestReport::make(std::string name, double statistic, double threshold, std::string n_or_tolerance,
                            std::string details) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.n_or_tolerance = std::move(n_or_tolerance);
  r.passed = statistic <= threshold;
  r.details = std::move(details);
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_report_csv(std::ostream& os, std::span<const TestReport> reports) {
  os << kReportCsvHeader << '\n';
  os.precision(10);
  for (const auto& r : reports) {
    os << csv_field(r.name) << ',' << r.statistic << ',' << r.threshold << ',' << (r.passed ? "true" : "false")
       << ',' << csv_field("[" + r.n_or_tolerance + "] " + r.details) << '\n';
  }
}

void write_report_text(std::ostream& os, std::span<const TestReport> reports) {
  std::size_t failed = 0;
  os.precision(4);
  for (const auto& r : reports) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << "  statistic=" << r.statistic << " threshold=" << r.threshold
       << " (" << r.n_or_tolerance << ")\n";
    if (!r.details.empty()) os << "     " << r.details << '\n';
    if (!r.passed) ++failed;
  }
  os << reports.size() - failed << '/' << reports.size() << " checks passed\n";
}

double ks_distance(std::span<const double> sorted_samples, const std::function<double(double)>& cdf) {
  return stats::ks_distance(sorted_samples, cdf);
}

std::vector<TestFunction> default_test_functions() {
  std::vector<TestFunction> fns;
  for (double c : {0.5, 1.0, 2.0}) {
    std::ostringstream name;
    name << "1{theta<=" << c << "}";
    fns.push_back({name.str(), [c](double th) { return th <= c ? 1.0 : 0.0; }});
  }
  fns.push_back({"exp(-theta)", [](double th) { return std::exp(-th); }});
  return fns;
}

TestReport measure_change_test(const sim::ModelParams& params, double gamma, double t, const sim::McConfig& mc,
                               const std::vector<TestFunction>& test_fns) {
  params.validate();
  if (!(gamma >= 0.0)) throw InvalidParameter("measure_change_test: gamma must be >= 0");
  const sim::TimeGrid grid = sim::TimeGrid::with_step(t, mc.dt);
  const std::size_t k = test_fns.size();
  const double shifted = params.beta + gamma * params.x0;
  // per f: paired difference, weighted side, shifted side
  const auto est = mc_estimate_multi(mc.n, mc.threads, 3 * k, [&](std::size_t i, double* out) {
    Rng rng(mc.seed, i);
    const auto s = sim::simulate_functional_summary(params, grid, rng);
    const double m = sim::girsanov_weight(s, gamma, params);
    const double theta_shift = params.x0 * std::exp(s.bmd_T) / (1.0 + shifted * s.a_T);
    for (std::size_t j = 0; j < k; ++j) {
      const double lhs = m * test_fns[j].f(s.theta_T);
      const double rhs = test_fns[j].f(theta_shift);
      out[3 * j] = lhs - rhs;
      out[3 * j + 1] = lhs;
      out[3 * j + 2] = rhs;
    }
  });
  double worst = 0.0;
  std::ostringstream details;
  details.precision(5);
  details << "mu=" << params.mu << " beta=" << params.beta << " gamma=" << gamma << " t=" << t;
  for (std::size_t j = 0; j < k; ++j) {
    const double z = std::fabs(z_score(est[3 * j], 0.0));
    worst = std::max(worst, z);
    details << "; " << test_fns[j].name << ": " << est[3 * j + 1].mean << " vs " << est[3 * j + 2].mean
            << " z=" << z;
  }
  return TestReport::make("measure_change", worst, 3.0, "n=" + std::to_string(mc.n), details.str());
}

RepresentationParams RepresentationParams::from_alpha(double alpha, double gamma, double mu, double t, double T) {
  RepresentationParams rp{alpha, gamma, gamma * alpha / (1.0 - alpha), mu, t, T};
  rp.validate();
  return rp;
}

void RepresentationParams::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidParameter("RepresentationParams: alpha must lie in [0, 1)");
  if (!(gamma > 0.0)) throw InvalidParameter("RepresentationParams: gamma must be > 0");
  if (!(beta >= 0.0)) throw InvalidParameter("RepresentationParams: beta must be >= 0");
  if (std::fabs(beta * (1.0 - alpha) - gamma * alpha) > 1e-12 * (1.0 + gamma)) {
    throw InvalidParameter("RepresentationParams: beta (1 - alpha) must equal gamma alpha");
  }
  if (!(t > 0.0) || !(T >= t)) throw InvalidParameter("RepresentationParams: need 0 < t <= T");
}

namespace {

double max_residual(const RepresentationParams& rp, const sim::PathSample& path) {
  double worst = 0.0;
  for (std::size_t i = 0; i < path.theta.size(); ++i) {
    const double v_mu = path.bmd[i] + rp.gamma * path.int_theta_path[i];
    const double r = path.bmd[i] - rp.alpha * v_mu - (1.0 - rp.alpha) * std::log(path.theta[i]);
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

sim::ModelParams representation_model(const RepresentationParams& rp) {
  return sim::ModelParams{rp.mu, rp.beta, 1.0, sim::Mode::Generic};
}

}  // namespace

TestReport representation_check(const RepresentationParams& rp, const sim::TimeGrid& grid, std::uint64_t seed,
                                 std::size_t paths) {
  rp.validate();
  grid.validate();
  if (paths < 1) throw InvalidParameter("representation_check: paths must be >= 1");
  const auto params = representation_model(rp);
  const auto res = parallel_map<double>(paths, 1, [&](std::size_t p) {
    return max_residual(rp, sim::simulate_functional(params, grid, seed, p));
  });
  double sum = 0.0;
  double worst = 0.0;
  for (double r : res) {
    sum += r;
    worst = std::max(worst, r);
  }
  const double mean = sum / static_cast<double>(paths);
  std::ostringstream details;
  details.precision(5);
  details << "alpha=" << rp.alpha << " gamma=" << rp.gamma << " beta=" << rp.beta << " mu=" << rp.mu
          << " dt=" << grid.dt() << " mean max-residual over " << paths << " paths; worst path " << worst;
  return TestReport::make("representation", mean, 10.0 * grid.dt(), "threshold=10*dt", details.str());
}

TestReport representation_refinement(const RepresentationParams& rp, std::size_t n_steps, std::uint64_t seed,
                                     std::size_t paths) {
  rp.validate();
  if (n_steps < 1 || paths < 1) throw InvalidParameter("representation_refinement: bad sizes");
  const auto params = representation_model(rp);
  const sim::TimeGrid coarse{rp.t, n_steps};
  const sim::TimeGrid fine{rp.t, 2 * n_steps};
  double sum_coarse = 0.0;
  double sum_fine = 0.0;
  for (std::size_t p = 0; p < paths; ++p) {
    const auto dB = sim::brownian_increments(fine, seed, p);
    std::vector<double> dB2(n_steps);
    for (std::size_t i = 0; i < n_steps; ++i) dB2[i] = dB[2 * i] + dB[2 * i + 1];
    sum_fine += max_residual(rp, sim::functional_from_increments(params, fine, dB));
    sum_coarse += max_residual(rp, sim::functional_from_increments(params, coarse, dB2));
  }
  const double ratio = sum_coarse / sum_fine;
  std::ostringstream details;
  details.precision(5);
  details << "residual(dt=" << coarse.dt() << ")=" << sum_coarse / paths << " residual(dt/2)=" << sum_fine / paths
          << " ratio=" << ratio;
  return TestReport::make("representation_halving", std::fabs(ratio / 2.0 - 1.0), 0.2, "paths=" + std::to_string(paths),
                          details.str());
}

double z2_kernel(double lambda, double x, double z) {
  const auto nu = specfun::BesselOrder::from_rate(lambda);
  const double lo = std::min(x, z);
  const double hi = std::max(x, z);
  return 2.0 * lambda * std::sqrt(x * z) * std::exp(-x - z + lo - hi) * specfun::bessel_product_F_scaled(nu, x, z);
}

namespace {

// ∫₀^∞ g(s) ds over s = e^u with a breakpoint at the kink s = kink and the
// upper limit where e^{-2s} drops below abs_tol·1e-6.
template <class G>
double integrate_positive(G&& g, double kink, const specfun::QuadConfig& cfg) {
  const double s_max = kink + 0.5 * -std::log(cfg.abs_tol * 1e-6);
  const double breaks[] = {-40.0, std::log(kink), std::log(s_max)};
  return quad::integrate_breaks(
      [&](double u) {
        const double s = std::exp(u);
        return s * g(s);
      },
      breaks, 8.0, quad::gauss_legendre(16));
}

}  // namespace

double z2_lhs(double lambda, double z, const specfun::QuadConfig& cfg) {
  if (!(z > 0.0)) throw DomainError("z2_lhs: z must be > 0");
  return z * z *
         integrate_positive([&](double x) { return 2.0 * std::exp(-2.0 * x) * density::density_exp_time(x, lambda, z); },
                            z, cfg);
}

double z2_rhs(double lambda, double z, const specfun::QuadConfig& cfg) {
  if (!(z > 0.0)) throw DomainError("z2_rhs: z must be > 0");
  return 2.0 * std::exp(-2.0 * z) *
         integrate_positive([&](double w) { return w * w * density::density_exp_time(z, lambda, w); }, z, cfg);
}

TestReport z2_symmetry_check(double lambda, std::span<const double> z_grid, const specfun::QuadConfig& cfg) {
  double worst = 0.0;
  std::ostringstream details;
  details.precision(10);
  details << "lambda=" << lambda;
  for (double z : z_grid) {
    const double lhs = z2_lhs(lambda, z, cfg);
    const double rhs = z2_rhs(lambda, z, cfg);
    const double gap = std::fabs(lhs - rhs) / std::fabs(rhs);
    worst = std::max(worst, gap);
    details << "; z=" << z << ": " << lhs << " vs " << rhs;
  }
  return TestReport::make("z2_symmetry", worst, 1e-3, "rel", details.str());
}

}  // namespace verhulst::validate
