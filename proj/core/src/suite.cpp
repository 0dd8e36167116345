#include "verhulst/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <sstream>

#include "verhulst/curve.hpp"
#include "verhulst/density.hpp"
#include "verhulst/quadrature.hpp"
#include "verhulst/simulate.hpp"
#include "verhulst/stats.hpp"

namespace verhulst::validate {

namespace {

using sim::McConfig;
using sim::ModelParams;

std::size_t scaled(const SuiteConfig& c, double full, std::size_t floor = 200) {
  return std::max(floor, static_cast<std::size_t>(std::llround(full * c.budget)));
}

McConfig mc_for(const SuiteConfig& c, std::uint64_t tag, double full_n, double dt = 1e-3) {
  return McConfig{scaled(c, full_n), stream_seed(c.seed, tag), c.threads, dt};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Multi-part criteria report max(part / limit) against 1.
struct Parts {
  double worst = 0.0;
  std::ostringstream details;
  void add(const std::string& name, double value, double limit) {
    worst = std::max(worst, value / limit);
    if (details.tellp() > 0) details << "; ";
    details << name << "=" << fmt(value) << " (limit " << fmt(limit) << ")";
  }
};

// Stream tags, fixed per check.
enum Tag : std::uint64_t {
  kTagExactHalf = 3,
  kTagExpTime = 4,
  kTagMartingale = 6,
  kTagMeasure = 7,
  kTagMoment = 8,
  kTagLaplace = 9,
  kTagGeneral = 10,
  kTagRepresentation = 11,
};

}  // namespace

TestReport check_bessel_product_identity(const SuiteConfig&) {
  const double pts[] = {0.5, 1.0, 2.0, 3.0};
  const auto& rule = quad::gauss_legendre(16);
  double worst = 0.0;
  std::string where;
  for (double nu : {0.6, 1.0, 2.0}) {
    const specfun::BesselOrder order(nu);
    for (double x : pts) {
      for (double w : pts) {
        const double lhs = specfun::bessel_product_F(order, x, w);
        // ½∫ e^{-z/2-(x²+w²)/2z} I_ν(xw/z) dz/z with I_ν = e^{r}·scaled, in u = ln z
        const double gap = std::fabs(w - x);
        auto f = [&](double u) {
          const double z = std::exp(u);
          return std::exp(-0.5 * z - 0.5 * gap * gap / z) * specfun::bessel_i_scaled(order, x * w / z);
        };
        const double breaks[] = {-80.0, std::log(std::max(gap, 1e-3)), std::log(100.0)};
        const double rhs = 0.5 * quad::integrate_breaks(f, breaks, 8.0, rule);
        const double err = std::fabs(lhs - rhs) / lhs;
        if (err > worst) {
          worst = err;
          where = "nu=" + fmt(nu) + " x=" + fmt(x) + " w=" + fmt(w);
        }
      }
    }
  }
  return TestReport::make("bessel_product_identity", worst, 1e-5, "rel", "worst at " + where);
}

TestReport check_hartman_watson_identity(const SuiteConfig& c) {
  const auto& cfg = c.quad;
  const auto& rule = quad::gauss_legendre(16);
  double worst = 0.0;
  double worst_tail = 0.0;
  std::string where;
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    for (double nu : {0.6, 1.0, 2.0}) {
      const double t_max = 2.0 * 36.0 / (nu * nu);
      double integral = 0.0;
      for (double a = cfg.t_min_theta; a < t_max;) {
        const double b = std::min(2.0 * a, t_max);
        integral += quad::integrate_gl(
            [&](double t) { return std::exp(-0.5 * nu * nu * t) * specfun::hartman_watson_theta(r, t, cfg); }, a, b,
            2, rule);
        a = b;
      }
      const double exact = specfun::bessel_i(specfun::BesselOrder(nu), r);
      // Θ(r,·) increases on (0, t_min]: the omitted piece is ≤ t_min Θ(r, t_min).
      const double tail = cfg.t_min_theta * specfun::hartman_watson_theta(r, cfg.t_min_theta, cfg) / exact;
      const double err = std::fabs(integral - exact) / exact;
      worst_tail = std::max(worst_tail, tail);
      if (err > worst) {
        worst = err;
        where = "r=" + fmt(r) + " nu=" + fmt(nu);
      }
    }
  }
  return TestReport::make("hartman_watson_identity", worst, 1e-4, "rel",
                          "integral over t >= " + fmt(cfg.t_min_theta) + "; worst at " + where +
                              "; small-t tail bound (relative) " + fmt(worst_tail));
}

TestReport check_exact_half_density(const SuiteConfig& c) {
  const double x = 1.0;
  const double t = 1.0;
  const auto cfg = c.quad;
  const TabulatedCdf cdf([&](double w) { return density::density_exact_half(x, t, w, cfg); }, 1e-4, 200.0, 150);
  const McConfig mc = mc_for(c, kTagExactHalf, 1e6);
  auto samples = sim::terminal_samples(ModelParams::section3(x), t, mc);
  std::sort(samples.begin(), samples.end());
  const double ks = stats::ks_distance(samples, [&](double w) { return cdf(w); });
  Parts p;
  p.add("|mass-1|", std::fabs(cdf.total() - 1.0), 1e-3);
  p.add("KS", ks, 5e-3);
  return TestReport::make("exact_half_density", p.worst, 1.0, "n=" + std::to_string(mc.n) + " dt=1e-3",
                          p.details.str());
}

TestReport check_exp_time_density(const SuiteConfig& c) {
  const double x = 1.0;
  const double lambda = 1.0;
  const double mass = density::cdf_exp_time(x, lambda, x + 60.0);
  // knots on both sides of the kink at z = x
  std::vector<double> knots = log_grid(x * 1e-8, x, 185);
  const auto upper = log_grid(x, x + 60.0, 120);
  knots.insert(knots.end(), upper.begin() + 1, upper.end());
  const TabulatedCdf cdf([&](double z) { return density::density_exp_time(x, lambda, z); }, knots,
                         density::cdf_exp_time(x, lambda, x * 1e-8));
  const McConfig mc = mc_for(c, kTagExpTime, 1e5);
  auto samples = sim::exp_time_samples(ModelParams::section3(x), lambda, mc);
  std::sort(samples.begin(), samples.end());
  const double ks = stats::ks_distance(samples, [&](double z) { return cdf(z); });
  Parts p;
  p.add("|mass-1|", std::fabs(mass - 1.0), 1e-6);
  p.add("KS", ks, 1e-2);
  return TestReport::make("exp_time_density", p.worst, 1.0, "n=" + std::to_string(mc.n) + " dt=1e-3",
                          p.details.str());
}

TestReport check_mixture_identity(const SuiteConfig& c) {
  double worst = 0.0;
  std::ostringstream details;
  details.precision(8);
  details << "t-integral over [" << c.quad.t_min_theta << ", inf)";
  for (double w : {0.5, 1.0, 2.0}) {
    const auto mix = density::exp_time_mixture(1.0, 1.0, w, c.quad);
    const double exact = density::density_exp_time(1.0, 1.0, w);
    const double err = std::fabs(mix.value - exact) / exact;
    worst = std::max(worst, err);
    details << "; w=" << w << ": mixture " << mix.value << " vs " << exact;
  }
  details << "; the remainder is the part of the mixture with t < t_min_theta";
  return TestReport::make("mixture_identity", worst, 1e-3, "rel", details.str());
}

TestReport check_martingale(const SuiteConfig& c) {
  const double gammas[] = {0.5, 1.0};
  double worst = 0.0;
  std::size_t count = 0;
  std::ostringstream details;
  details.precision(6);
  std::size_t n = 0;
  std::uint64_t combo = 0;
  for (double mu : {-0.5, 0.0, 0.5}) {
    for (double beta : {0.0, 1.0}) {
      for (double T : {0.5, 1.0}) {
        const ModelParams params{mu, beta, 1.0, sim::Mode::Generic};
        McConfig mc = mc_for(c, kTagMartingale * 1000 + combo++, 1e5);
        n = mc.n;
        const auto grid = sim::TimeGrid::with_step(T, mc.dt);
        // both γ values share the paths of one (μ, β, T) cell
        const auto est = mc_estimate_multi(mc.n, mc.threads, 2, [&](std::size_t i, double* out) {
          Rng rng(mc.seed, i);
          const auto s = sim::simulate_functional_summary(params, grid, rng);
          for (int g = 0; g < 2; ++g) out[g] = sim::girsanov_weight(s, gammas[g], params);
        });
        for (int g = 0; g < 2; ++g) {
          const double z = std::fabs(z_score(est[static_cast<std::size_t>(g)], 1.0));
          ++count;
          if (z > worst) {
            worst = z;
            details.str("");
            details << "worst at gamma=" << gammas[g] << " mu=" << mu << " beta=" << beta << " T=" << T
                    << ": E[M]=" << est[static_cast<std::size_t>(g)].mean << " +- "
                    << est[static_cast<std::size_t>(g)].std_error;
          }
        }
      }
    }
  }
  details << "; " << count << " z-scores at 3 sigma (Bonferroni: family-wise false-alarm rate up to "
          << fmt(count * 0.0027) << ")";
  return TestReport::make("martingale", worst, 3.0, "n=" + std::to_string(n) + " per cell", details.str());
}

TestReport check_measure_change(const SuiteConfig& c) {
  double worst = 0.0;
  std::string details;
  std::size_t n = 0;
  for (double beta : {0.0, 1.0}) {
    const McConfig mc = mc_for(c, kTagMeasure * 1000 + static_cast<std::uint64_t>(beta), 1e5);
    n = mc.n;
    const auto r = measure_change_test(ModelParams{0.0, beta, 1.0, sim::Mode::Generic}, 1.0, 1.0, mc);
    worst = std::max(worst, r.statistic);
    details += (details.empty() ? "" : " | ") + r.details;
  }
  return TestReport::make("measure_change", worst, 3.0, "n=" + std::to_string(n), details);
}

TestReport check_moment_identity(const SuiteConfig& c) {
  double worst = 0.0;
  std::ostringstream details;
  details.precision(6);
  std::size_t n = 0;
  std::uint64_t combo = 0;
  for (double mu : {-0.25, 0.0, 0.5}) {
    for (double beta : {0.5, 1.0}) {
      for (double t : {0.5, 1.0}) {
        const ModelParams params{mu, beta, 1.0, sim::Mode::Generic};
        const McConfig mc = mc_for(c, kTagMoment * 1000 + combo++, 1e5);
        n = mc.n;
        const auto grid = sim::TimeGrid::with_step(t, mc.dt);
        const auto est = mc_estimate(mc.n, mc.threads, [&](std::size_t i) {
          Rng rng(mc.seed, i);
          return std::exp(beta * sim::simulate_functional_summary(params, grid, rng).int_theta);
        });
        const double exact = density::moment_exp_int_theta(params, t);
        const double z = std::fabs(z_score(est, exact));
        if (z > worst) {
          worst = z;
          details.str("");
          details << "worst at mu=" << mu << " beta=" << beta << " t=" << t << ": " << est.mean << " +- "
                  << est.std_error << " vs " << exact;
        }
      }
    }
  }
  details << "; 12 z-scores at 3 sigma";
  return TestReport::make("moment_identity", worst, 3.0, "n=" + std::to_string(n) + " dt=1e-3", details.str());
}

TestReport check_laplace_triangle(const SuiteConfig& c) {
  const ModelParams params{0.0, 1.0, 1.0, sim::Mode::Generic};
  const double lambda = 1.0;
  const double t = 1.0;
  const auto direct = sim::direct_laplace_mc(lambda, params, t, mc_for(c, kTagLaplace * 1000 + 1, 1e5));
  const auto prop7 = sim::laplace_prop7_mc(lambda, params, t, mc_for(c, kTagLaplace * 1000 + 2, 1e5));
  std::ostringstream details;
  details.precision(6);
  details << "direct=" << direct.mean << "+-" << direct.std_error << " prop7=" << prop7.mean << "+-"
          << prop7.std_error;
  double best = INFINITY;
  sim::Prop1Variant chosen = sim::Prop1Variant::QuarterHorizon;
  std::uint64_t k = 3;
  for (auto v : {sim::Prop1Variant::FullHorizon, sim::Prop1Variant::QuarterKernel, sim::Prop1Variant::QuarterHorizon}) {
    const auto p1 = sim::laplace_prop1_mc(lambda, params, t, mc_for(c, kTagLaplace * 1000 + k++, 1e5), v);
    const double worst = std::max({std::fabs(z_score(p1, direct)), std::fabs(z_score(p1, prop7))});
    details << "; prop1[" << sim::to_string(v) << "]=" << p1.mean << "+-" << p1.std_error << " max|z|=" << worst;
    if (worst < best) {
      best = worst;
      chosen = v;
    }
  }
  const double z_direct_prop7 = std::fabs(z_score(direct, prop7));
  details << "; |z(direct,prop7)|=" << z_direct_prop7 << "; selected prop1 variant: " << sim::to_string(chosen);
  return TestReport::make("laplace_triangle", std::max(best, z_direct_prop7), 3.0, "n=100000 each", details.str());
}

TestReport check_general_density(const SuiteConfig& c) {
  const double gamma = 1.0;
  const double mu = 0.0;
  const double t = 1.0;
  const auto cfg = c.quad;

  McConfig hist_mc = mc_for(c, kTagGeneral * 1000 + 1, 1e6);
  auto samples = sim::terminal_samples(ModelParams{mu, gamma, 1.0, sim::Mode::Generic}, t, hist_mc);
  std::sort(samples.begin(), samples.end());

  // Arbitration at x = 1 against a Freedman-Diaconis histogram bin.
  const double width = stats::freedman_diaconis_width(samples);
  const auto hist = stats::histogram_density_at(samples, 1.0, width);
  const McConfig arb_mc = mc_for(c, kTagGeneral * 1000 + 2, 1e5);
  std::ostringstream details;
  details.precision(6);
  details << "histogram(x=1, width " << width << ")=" << hist.density << "+-" << hist.std_error;
  double best = INFINITY;
  density::GeneralVariant chosen = density::GeneralVariant::EndpointConditional;
  McEstimate est[2];
  int idx = 0;
  for (auto v : {density::GeneralVariant::Unconditional, density::GeneralVariant::EndpointConditional}) {
    const auto g = density::density_general_mc(gamma, mu, t, 1.0, arb_mc, cfg, v);
    est[idx++] = g.estimate;
    const double z = std::fabs(z_score(g.estimate, McEstimate{hist.density, hist.std_error, samples.size()}));
    details << "; " << density::to_string(v) << "=" << g.estimate.mean << "+-" << g.estimate.std_error
            << " |z|=" << z << " refused=" << g.refused;
    if (z < best) {
      best = z;
      chosen = v;
    }
  }
  if (std::fabs(z_score(est[0], est[1])) > 5.0) details << "; variants disagree by > 5 combined stderr";
  details << "; selected " << density::to_string(chosen);

  // Curve of the selected variant, common random numbers across x.
  const McConfig curve_mc = mc_for(c, kTagGeneral * 1000 + 3, 2000, 1e-3);
  const auto grid = log_grid(0.05, 8.0, 80);
  std::size_t refused = 0;
  const DensityCurve curve = make_curve("general_mc", "gamma=1 mu=0 t=1", grid, [&](double x) {
    const auto g = density::density_general_mc(gamma, mu, t, x, curve_mc, cfg, chosen);
    refused += g.refused;
    return g.estimate.mean;
  });
  const auto cum = curve.cumulative();
  const double base = stats::empirical_cdf(samples, grid.front());
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sup = std::max(sup, std::fabs(cum[i] - (stats::empirical_cdf(samples, grid[i]) - base)));
  }
  Parts p;
  p.add("arbitration |z|", best, 3.0);
  p.add("sup-CDF", sup, 1e-2);
  p.add("|mass-1|", std::fabs(curve.total_mass - 1.0), 2e-2);
  details << "; curve n=" << curve_mc.n << " per point, refused " << refused << "; " << p.details.str();
  return TestReport::make("general_density", p.worst, 1.0,
                          "hist n=" + std::to_string(hist_mc.n) + " arb n=" + std::to_string(arb_mc.n),
                          details.str());
}

TestReport check_representation(const SuiteConfig& c) {
  const auto rp = RepresentationParams::from_alpha(0.5, 1.0, 0.0, 1.0, 1.0);
  const std::size_t paths = scaled(c, 64, 8);
  const auto seed = stream_seed(c.seed, kTagRepresentation);
  const auto base = representation_check(rp, sim::TimeGrid{1.0, 1000}, seed, paths);
  const auto half = representation_refinement(rp, 1000, seed, paths);
  Parts p;
  p.add("residual/dt", base.statistic / 1e-3, 10.0);
  p.add("|ratio/2-1|", half.statistic, 0.2);
  return TestReport::make("representation", p.worst, 1.0, "paths=" + std::to_string(paths),
                          p.details.str() + "; " + half.details);
}

TestReport check_z2_symmetry(const SuiteConfig& c) {
  const double zs[] = {0.5, 1.0, 2.0};
  double worst = 0.0;
  std::string details;
  for (double lambda : {1.0, 2.0}) {
    const auto r = z2_symmetry_check(lambda, zs, c.quad);
    worst = std::max(worst, r.statistic);
    details += (details.empty() ? "" : " | ") + r.details;
  }
  return TestReport::make("z2_symmetry", worst, 1e-3, "rel", details);
}

TestReport check_determinism(const std::vector<Check>& registry, const SuiteConfig& c) {
  SuiteConfig small = c;
  small.budget = std::min(c.budget, 1.0) * 0.01;
  small.only.clear();
  std::size_t mismatches = 0;
  std::ostringstream details;
  for (const auto& check : registry) {
    if (!check.monte_carlo) continue;
    small.threads = 1;
    const auto a = check.run(small);
    small.threads = 3;
    const auto b = check.run(small);
    const bool same = std::memcmp(&a.statistic, &b.statistic, sizeof(double)) == 0 && a.details == b.details;
    if (!same) ++mismatches;
    details << (details.tellp() > 0 ? "; " : "") << check.name << (same ? " identical" : " DIFFERS");
  }
  return TestReport::make("determinism", static_cast<double>(mismatches), 0.0, "threads 1 vs 3", details.str());
}

std::vector<Check> default_registry() {
  std::vector<Check> r{
      {"bessel_product_identity", "I_v(x)K_v(w) against its z-integral representation", false,
       check_bessel_product_identity},
      {"hartman_watson_identity", "order-Laplace transform of Theta reproduces I_v", false,
       check_hartman_watson_identity},
      {"exact_half_density", "mu=-1/2 density: mass and KS against simulated paths", true, check_exact_half_density},
      {"exp_time_density", "exponential-time density: mass and KS against samples", true, check_exp_time_density},
      {"mixture_identity", "lambda-mixture of fixed-time densities equals the exponential-time density", false,
       check_mixture_identity},
      {"martingale", "E[M_T] = 1 for the Girsanov weight", true, check_martingale},
      {"measure_change", "weighted expectations equal those of the shifted process", true, check_measure_change},
      {"moment_identity", "E exp(beta int theta) closed form", true, check_moment_identity},
      {"laplace_triangle", "three Laplace-transform estimators agree", true, check_laplace_triangle},
      {"general_density", "general-mu density via conditional kernels against a histogram", true,
       check_general_density},
      {"representation", "pathwise Brownian representation residual and its refinement", true,
       check_representation},
      {"z2_symmetry", "z^2 relation between exponential-time densities", false, check_z2_symmetry},
  };
  auto snapshot = r;
  r.push_back({"determinism", "Monte Carlo statistics are identical for 1 and 3 workers", false,
               [snapshot](const SuiteConfig& c) { return check_determinism(snapshot, c); }});
  return r;
}

void check_selection(const std::vector<Check>& registry, const SuiteConfig& config) {
  for (const auto& name : config.only) {
    const bool known = std::any_of(registry.begin(), registry.end(), [&](const Check& c) { return c.name == name; });
    if (!known) throw InvalidParameter("unknown check '" + name + "'");
  }
}

std::vector<TestReport> run_suite(const std::vector<Check>& registry, const SuiteConfig& config) {
  check_selection(registry, config);
  std::vector<TestReport> reports;
  for (const auto& check : registry) {
    if (!config.only.empty() &&
        std::find(config.only.begin(), config.only.end(), check.name) == config.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    TestReport report;
    try {
      report = check.run(config);
    } catch (const std::exception& e) {
      report = TestReport::make(check.name, INFINITY, 0.0, "error", std::string("exception: ") + e.what());
    }
    report.name = check.name;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    reports.push_back(std::move(report));
  }
  // Each 3-sigma Monte Carlo check raises a false alarm with probability
  // about 0.0027; say so once the family is large.
  const auto mc_run = static_cast<std::size_t>(std::count_if(registry.begin(), registry.end(), [&](const Check& c) {
    return c.monte_carlo &&
           (config.only.empty() || std::find(config.only.begin(), config.only.end(), c.name) != config.only.end());
  }));
  if (mc_run > 10) {
    for (auto& r : reports) {
      r.details += "; bonferroni: " + std::to_string(mc_run) +
                   " Monte Carlo checks at 3 sigma, family-wise false-alarm rate up to " +
                   fmt(0.0027 * static_cast<double>(mc_run));
    }
  }
  return reports;
}

}  // namespace verhulst::validate
