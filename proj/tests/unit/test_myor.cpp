#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "verhulst/curve.hpp"
#include "verhulst/density.hpp"
#include "verhulst/simulate.hpp"
#include "verhulst/stats.hpp"

using namespace verhulst;
using namespace verhulst::density;

namespace {

const specfun::QuadConfig cfg = specfun::default_quad_config();

// ∫ψ(v, x) dv over v = e^s, Simpson in s
double x_marginal(double mu, double t, double x) {
  return static_cast<double>(oracle::simpson(
      [&](long double s) {
        const double v = std::exp(static_cast<double>(s));
        return myor_psi(mu, t, v, x, cfg) * v;
      },
      std::log(0.02), std::log(40.0), 160));
}

// ∫ψ(v, x) dx, Simpson in x
double v_marginal(double mu, double t, double v) {
  return static_cast<double>(
      oracle::simpson([&](long double x) { return myor_psi(mu, t, v, static_cast<double>(x), cfg); }, -7.0L, 5.0L, 120));
}

}  // namespace

TEST_CASE("x-marginal of psi is the Gaussian endpoint law") {
  for (double x : {-1.0, 0.0, 1.0}) {
    CAPTURE(x);
    CHECK(std::fabs(x_marginal(0.0, 1.0, x) - static_cast<double>(oracle::normal_pdf(x, 0.0, 1.0))) < 5e-3);
  }
  CHECK(std::fabs(x_marginal(0.4, 1.0, 0.4) - static_cast<double>(oracle::normal_pdf(0.4, 0.4, 1.0))) < 5e-3);
}

TEST_CASE("psi integrates to one") {
  const double total = static_cast<double>(
      oracle::simpson([](long double x) { return x_marginal(0.0, 1.0, static_cast<double>(x)); }, -6.0L, 6.0L, 48));
  MESSAGE("mass " << total);
  CHECK(std::fabs(total - 1.0) < 5e-3);
}

TEST_CASE("v-marginal of psi against simulated a_t") {
  const auto grid = log_grid(0.02, 40.0, 121);
  const TabulatedCdf cdf([](double v) { return v_marginal(0.0, 1.0, v); }, grid);
  std::vector<double> a(100000);
  const auto tg = sim::TimeGrid::with_step(1.0, 2e-3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rng rng(61, i);
    a[i] = sim::simulate_functional_summary(sim::ModelParams{0.0, 0.0, 1.0}, tg, rng).a_T;
  }
  std::sort(a.begin(), a.end());
  const double d = stats::ks_distance(a, [&](double v) { return cdf(v); });
  MESSAGE("KS " << d << ", tabulated mass " << cdf.total());
  CHECK(d < 1e-2);
}

TEST_CASE("conditional Laplace transform") {
  MyorEval e{0.0, 1.0, 1.0, 0.0, 1e-4};
  CHECK(myor_conditional_laplace(e, cfg) == doctest::Approx(1.0).epsilon(1e-2));
  double prev = 1.0;
  for (double lambda : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    e.lambda = lambda;
    const double v = myor_conditional_laplace(e, cfg);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  // binned conditional MC, 10^7 driftless paths: 0.586680 ± 0.000150
  e.lambda = 1.0;
  CHECK(std::fabs(myor_conditional_laplace(e, cfg) - 0.586680) < 5e-2);
  CHECK(myor_conditional_laplace(e, cfg) == doctest::Approx(0.586680).epsilon(1e-3));
}

TEST_CASE("conditional kernels refuse points outside the support") {
  const MyorEval far{0.0, 1.0, 0.01, 3.0, 1.0};
  CHECK_THROWS_AS(myor_conditional_laplace(far, cfg), OutOfSupport);
  CHECK_THROWS_AS(myor_psi(0.0, 4.0 * cfg.t_min_theta * 0.9, 1.0, 0.0, cfg), DomainError);
  CHECK_THROWS_AS((MyorEval{0.0, 1.0, -1.0, 0.0, 1.0}.validate()), InvalidParameter);
}

TEST_CASE("H kernel") {
  // drift -1/2: bare conditional value
  const MyorEval e{-0.5, 1.0, 0.8, std::log(1.3), 0.7};
  CHECK(h_kernel(0.7, -0.5, 1.0, 0.8, 1.3, cfg) == doctest::Approx(myor_conditional_laplace(e, cfg)).epsilon(1e-15));
  // composition with the binned oracle
  CHECK(h_kernel(1.0, 0.0, 1.0, 1.0, 1.0, cfg) == doctest::Approx(0.586680 * std::exp(0.5)).epsilon(1e-3));
  // increasing in y for mu > -1/2 at small gamma
  double prev = 0.0;
  for (double y : {0.4, 0.7, 1.0, 1.5, 2.0, 3.0}) {
    const double h = h_kernel(0.05, 1.0, 1.0, y, 1.0, cfg);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("general density at zero crowding is lognormal") {
  const sim::McConfig mc{100, 1, 1, 1e-2};
  for (auto v : {GeneralVariant::Unconditional, GeneralVariant::EndpointConditional}) {
    const auto g = density_general_mc(0.0, 0.3, 1.0, 1.4, mc, cfg, v);
    CHECK(g.estimate.mean == lognormal_density(0.3, 1.0, 1.4));
    const auto tiny = density_general_mc(1e-8, 0.3, 1.0, 1.4, mc, cfg, v);
    CHECK(tiny.estimate.mean == doctest::Approx(lognormal_density(0.3, 1.0, 1.4)).epsilon(1e-6));
  }
  CHECK(general_variant_from_string("endpoint-conditional") == GeneralVariant::EndpointConditional);
  CHECK_THROWS_AS(general_variant_from_string("both"), InvalidParameter);
}

TEST_CASE("general density against a histogram of simulated paths") {
  // 10^6 paths of e^{B}/(1 + a) with dt = 2e-3, bin width 0.05 at x = 1
  const McEstimate histogram{0.350100, 0.002623, 1000000};
  const sim::McConfig mc{20000, 62, 1, 1e-2};
  const auto cond = density_general_mc(1.0, 0.0, 1.0, 1.0, mc, cfg, GeneralVariant::EndpointConditional);
  const auto uncond = density_general_mc(1.0, 0.0, 1.0, 1.0, mc, cfg, GeneralVariant::Unconditional);
  MESSAGE("endpoint-conditional " << cond.estimate.mean << " unconditional " << uncond.estimate.mean);
  CHECK(std::fabs(z_score(cond.estimate, histogram)) < 3.0);
  CHECK(std::fabs(z_score(uncond.estimate, histogram)) > 3.0);
  CHECK(cond.refused == 0);
}

TEST_CASE("general density curve integrates to one") {
  const auto xs = linear_grid(0.05, 8.0, 80);
  const sim::McConfig mc{1500, 63, 1, 2e-2};
  const auto curve = make_curve("general_mc", "gamma=1 mu=0 t=1", xs, [&](double x) {
    return density_general_mc(1.0, 0.0, 1.0, x, mc, cfg, GeneralVariant::EndpointConditional).estimate.mean;
  });
  MESSAGE("mass " << curve.total_mass);
  CHECK(std::fabs(curve.total_mass - 1.0) < 2e-2);
}
