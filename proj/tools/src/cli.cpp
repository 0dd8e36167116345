#include "verhulst_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "verhulst/curve.hpp"
#include "verhulst/density.hpp"
#include "verhulst/simulate.hpp"
#include "verhulst/specfun.hpp"
#include "verhulst/suite.hpp"
#include "verhulst/validate.hpp"

namespace verhulst::cli {

namespace {

struct Options {
  double mu = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double lambda = 1.0;
  double t = 1.0;
  double x = 1.0;
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  int threads = 1;
  double dt = 1e-3;
  std::string out;

  std::string kind;
  std::size_t points = 0;
  std::optional<double> lo;
  std::optional<double> hi;
  std::string general_variant = "endpoint-conditional";
  std::string prop1_variant = "quarter-horizon";
  std::string scheme = "functional";
  bool section3 = false;
  std::vector<std::string> only;
  double budget = 1.0;
  bool list = false;

  double abs_tol = 0.0;
  double t_min_theta = 0.0;
};

void write_atomically(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(entropy_seed() & 0xffffffffULL);
  try {
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw InvalidParameter("cannot open '" + tmp.string() + "' for writing");
      fn(os);
      os.flush();
      if (!os) throw InvalidParameter("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::uint64_t resolve_seed(const Options& o, std::ostream& out) {
  if (o.seed) return *o.seed;
  const std::uint64_t s = entropy_seed();
  out << "seed=" << s << '\n';
  return s;
}

specfun::QuadConfig quad_config(const Options& o) {
  auto cfg = specfun::default_quad_config();
  if (o.abs_tol > 0.0) cfg.abs_tol = o.abs_tol;
  if (o.t_min_theta > 0.0) cfg.t_min_theta = o.t_min_theta;
  cfg.validate();
  return cfg;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

sim::ModelParams model(const Options& o) {
  sim::ModelParams p = o.section3 ? sim::ModelParams::section3(o.x) : sim::ModelParams{o.mu, o.beta, o.x};
  p.validate();
  return p;
}

std::string params_tag(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : ";") << k << '=' << v;
    first = false;
  }
  return os.str();
}

int cmd_density(const Options& o, std::ostream& out) {
  const auto cfg = quad_config(o);
  require(o.t > 0.0, "--t must be > 0");
  require(o.x > 0.0, "--x must be > 0");
  require(!o.lo || *o.lo > 0.0, "--lo must be > 0");
  require(o.threads >= 0, "--threads must be >= 0");

  std::function<double(double)> f;
  std::string params;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = o.points;
  std::uint64_t seed = 0;
  if (o.kind == "lognormal") {
    lo = std::exp(o.mu * o.t - 7.0 * std::sqrt(o.t));
    hi = std::exp(o.mu * o.t + 7.0 * std::sqrt(o.t));
    points = points ? points : 2000;
    params = params_tag({{"mu", o.mu}, {"t", o.t}});
    f = [&](double w) { return density::lognormal_density(o.mu, o.t, w); };
  } else if (o.kind == "exact-half") {
    if (o.t < cfg.t_min_theta) {
      throw DomainError("t = " + std::to_string(o.t) + " below t_min_theta = " + std::to_string(cfg.t_min_theta));
    }
    const double s = std::sqrt(o.t);
    lo = o.x * std::exp(-0.5 * o.t - 7.0 * s) / (1.0 + o.x * o.t * std::exp(7.0 * s));
    hi = o.x * std::exp(-0.5 * o.t + 7.0 * s);
    points = points ? points : 600;
    params = params_tag({{"x", o.x}, {"t", o.t}});
    f = [&](double w) { return density::density_exact_half(o.x, o.t, w, cfg); };
  } else if (o.kind == "exp-time") {
    require(o.lambda > 0.0, "--lambda must be > 0");
    lo = o.x * 1e-9;
    hi = o.x + 40.0;
    points = points ? points : 20000;
    params = params_tag({{"x", o.x}, {"lambda", o.lambda}});
    f = [&](double w) { return density::density_exp_time(o.x, o.lambda, w); };
  } else if (o.kind == "general-mc") {
    require(o.gamma >= 0.0, "--gamma must be >= 0");
    require(o.dt > 0.0, "--dt must be > 0");
    require(0.25 * o.t >= cfg.t_min_theta, "--t must satisfy t/4 >= t_min_theta");
    density::general_variant_from_string(o.general_variant);
    lo = 0.05;
    hi = 8.0;
    points = points ? points : 80;
    seed = resolve_seed(o, out);
    params = params_tag({{"gamma", o.gamma}, {"mu", o.mu}, {"t", o.t}}) + ";variant=" + o.general_variant;
    f = [&, seed](double w) {
      const sim::McConfig mc{o.n ? o.n : 2000, seed, o.threads, o.dt};
      return density::density_general_mc(o.gamma, o.mu, o.t, w, mc, cfg,
                                         density::general_variant_from_string(o.general_variant))
          .estimate.mean;
    };
  } else {
    throw InvalidParameter("--kind must be one of lognormal, exact-half, exp-time, general-mc");
  }
  if (o.lo) lo = *o.lo;
  if (o.hi) hi = *o.hi;
  require(hi > lo, "--hi must exceed --lo");
  require(points >= 2, "--points must be >= 2");

  const auto curve = make_curve(o.kind, params, log_grid(lo, hi, points), f);
  write_atomically(o.out, out, [&](std::ostream& os) { write_curve_csv(os, curve); });
  out.precision(12);
  out << "total_mass=" << curve.total_mass << '\n';
  return kOk;
}

int cmd_laplace(const Options& o, std::ostream& out, std::ostream& err) {
  require(o.lambda >= 0.0, "--lambda must be >= 0");
  require(o.t > 0.0, "--t must be > 0");
  require(o.dt > 0.0, "--dt must be > 0");
  const auto params = model(o);
  const auto variant = sim::prop1_variant_from_string(o.prop1_variant.c_str());
  const std::uint64_t seed = resolve_seed(o, out);
  const std::size_t n = o.n ? o.n : 100000;
  auto mc = [&](std::uint64_t tag) { return sim::McConfig{n, stream_seed(seed, tag), o.threads, o.dt}; };

  out.precision(10);
  out << "estimator,mean,stderr,n\n";
  int code = kOk;
  try {
    const auto e = sim::laplace_prop1_mc(o.lambda, params, o.t, mc(1), variant);
    out << "prop1," << e.mean << ',' << e.std_error << ',' << e.n << '\n';
  } catch (const InvalidParameter& e) {
    err << "error: prop1: " << e.what() << '\n';
    code = kUsageError;
  }
  const auto p7 = sim::laplace_prop7_mc(o.lambda, params, o.t, mc(2));
  out << "prop7," << p7.mean << ',' << p7.std_error << ',' << p7.n << '\n';
  const auto d = sim::direct_laplace_mc(o.lambda, params, o.t, mc(3));
  out << "direct," << d.mean << ',' << d.std_error << ',' << d.n << '\n';
  return code;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  require(o.t > 0.0, "--t must be > 0");
  require(o.dt > 0.0, "--dt must be > 0");
  require(o.scheme == "functional" || o.scheme == "euler", "--scheme must be functional or euler");
  const auto params = model(o);
  const auto grid = sim::TimeGrid::with_step(o.t, o.dt);
  grid.validate();
  const std::uint64_t seed = resolve_seed(o, out);
  const std::size_t n = o.n ? o.n : 1;
  const bool euler = o.scheme == "euler";

  if (n == 1) {
    const auto path =
        euler ? sim::simulate_sde_euler(params, grid, seed, 0) : sim::simulate_functional(params, grid, seed, 0);
    write_atomically(o.out, out, [&](std::ostream& os) { sim::write_path_csv(os, path); });
    if (!o.out.empty() && euler) out << "guard_events=" << path.guard_events << '\n';
    return kOk;
  }
  const auto values = parallel_map<double>(n, o.threads, [&](std::size_t i) {
    if (euler) return sim::simulate_sde_euler(params, grid, seed, i).theta.back();
    Rng rng(seed, i);
    return sim::simulate_functional_summary(params, grid, rng).theta_T;
  });
  write_atomically(o.out, out, [&](std::ostream& os) {
    os.precision(17);
    os << "replicate,theta_T\n";
    for (std::size_t i = 0; i < values.size(); ++i) os << i << ',' << values[i] << '\n';
  });
  if (!o.out.empty()) {
    Accumulator acc;
    for (double v : values) acc.add(v);
    const auto e = acc.estimate();
    out.precision(10);
    out << "mean_theta_T=" << e.mean << " stderr=" << e.std_error << " n=" << e.n << '\n';
  }
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto registry = validate::default_registry();
  if (o.list) {
    for (const auto& c : registry) out << c.name << "  " << c.description << '\n';
    return kOk;
  }
  validate::SuiteConfig cfg;
  cfg.quad = quad_config(o);
  require(o.budget > 0.0, "--budget must be > 0");
  cfg.budget = o.budget;
  cfg.threads = o.threads;
  cfg.only = o.only;
  validate::check_selection(registry, cfg);
  cfg.seed = resolve_seed(o, out);
  const auto reports = validate::run_suite(registry, cfg);
  write_atomically(o.out, out, [&](std::ostream& os) {
    if (o.out.empty()) return;
    validate::write_report_csv(os, reports);
  });
  validate::write_report_text(out, reports);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kStatisticalFailure;
}

void add_model_flags(CLI::App* app, Options& o) {
  app->add_option("--mu", o.mu, "Drift mu");
  app->add_option("--beta", o.beta, "Crowding beta (>= 0)");
  app->add_option("--x", o.x, "Start value x0 (> 0)");
  app->add_flag("--section3", o.section3, "Use mu = -1/2 and beta = x");
}

void add_mc_flags(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "Master seed (drawn from entropy and echoed if absent)");
  app->add_option("--n", o.n, "Number of Monte Carlo replicates");
  app->add_option("--threads", o.threads, "Worker threads (results do not depend on it)");
  app->add_option("--dt", o.dt, "Time step of simulated paths");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact densities, Laplace transforms and Monte Carlo checks for the Verhulst process", "verhulst"};
  app.require_subcommand(1);
  Options o;

  auto* density = app.add_subcommand("density", "Write a density curve as CSV");
  density->add_option("--kind", o.kind, "lognormal | exact-half | exp-time | general-mc")->required();
  density->add_option("--mu", o.mu, "Drift mu (lognormal, general-mc)");
  density->add_option("--t", o.t, "Time horizon");
  density->add_option("--x", o.x, "Start value x (exact-half, exp-time)");
  density->add_option("--lambda", o.lambda, "Exponential-time rate (exp-time)");
  density->add_option("--gamma", o.gamma, "Crowding gamma (general-mc)");
  density->add_option("--points", o.points, "Number of log-spaced abscissae");
  density->add_option("--lo", o.lo, "Smallest abscissa");
  density->add_option("--hi", o.hi, "Largest abscissa");
  density->add_option("--variant", o.general_variant, "general-mc outer law: endpoint-conditional | unconditional");
  add_mc_flags(density, o);

  auto* laplace = app.add_subcommand("laplace", "Three estimates of E exp(-lambda theta_t)");
  laplace->add_option("--lambda", o.lambda, "Transform argument (>= 0)");
  laplace->add_option("--t", o.t, "Time horizon");
  laplace->add_option("--prop1-variant", o.prop1_variant,
                      "Horizon convention: quarter-horizon | quarter-kernel | full-horizon");
  add_model_flags(laplace, o);
  add_mc_flags(laplace, o);

  auto* simulate = app.add_subcommand("simulate", "Simulate paths; one path as full CSV, several as terminal values");
  simulate->add_option("--t", o.t, "Time horizon");
  simulate->add_option("--scheme", o.scheme, "functional | euler");
  add_model_flags(simulate, o);
  add_mc_flags(simulate, o);

  auto* validate_cmd = app.add_subcommand("validate", "Run the acceptance suite");
  validate_cmd->add_option("--only", o.only, "Run only the named checks (repeatable)")->delimiter(',');
  validate_cmd->add_option("--budget", o.budget, "Multiplier on all Monte Carlo sample counts");
  validate_cmd->add_option("--seed", o.seed, "Master seed (drawn from entropy and echoed if absent)");
  validate_cmd->add_option("--threads", o.threads, "Worker threads (results do not depend on it)");
  validate_cmd->add_flag("--list", o.list, "List the registered checks");

  for (auto* sub : {density, laplace, simulate, validate_cmd}) {
    sub->add_option("--out", o.out, "Output file (written atomically; stdout if absent)");
    sub->add_option("--abs-tol", o.abs_tol, "Absolute tolerance of the Theta quadrature");
    sub->add_option("--t-min-theta", o.t_min_theta, "Smallest t at which Theta is evaluated");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*density) return cmd_density(o, out);
    if (*laplace) return cmd_laplace(o, out, err);
    if (*simulate) return cmd_simulate(o, out);
    return cmd_validate(o, out);
  } catch (const OutOfSupport& e) {
    err << "error: out-of-support: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << '\n';
  } catch (const InvalidParameter& e) {
    err << "error: invalid-parameter: " << e.what() << '\n';
  } catch (const ConvergenceError& e) {
    err << "error: convergence: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace verhulst::cli
