// Runs the full validation suite and prints one PASS/FAIL line per
// acceptance criterion, in criterion order.
//
// Two criteria fail by analysis rather than by defect and are listed in
// kKnownFailures with the reason. They still print FAIL; the exit status is
// nonzero only for failures outside that list.
//
// usage: verhulst_acceptance [--budget B] [--threads N] [--seed S]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "verhulst/suite.hpp"

namespace {

struct KnownFailure {
  const char* name;
  const char* reason;
};

constexpr KnownFailure kKnownFailures[] = {
    {"mixture_identity",
     "the t-mixture needs the fixed-time density for t below t_min_theta, where Theta is not evaluated"},
    {"representation", "the residual is second order in dt, so halving dt divides it by about 4, not 2"},
};

const KnownFailure* known_failure(const std::string& name) {
  for (const auto& k : kKnownFailures) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  verhulst::validate::SuiteConfig config;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--budget") == 0) {
      config.budget = std::atof(argv[i + 1]);
    } else if (std::strcmp(argv[i], "--threads") == 0) {
      config.threads = std::atoi(argv[i + 1]);
    } else if (std::strcmp(argv[i], "--seed") == 0) {
      config.seed = std::strtoull(argv[i + 1], nullptr, 10);
    } else {
      std::fprintf(stderr, "unknown argument %s\n", argv[i]);
      return 2;
    }
  }
  if (!(config.budget > 0.0) || config.threads < 1) {
    std::fprintf(stderr, "budget must be > 0 and threads >= 1\n");
    return 2;
  }

  const auto registry = verhulst::validate::default_registry();
  std::printf("acceptance suite: %zu criteria, seed %llu, budget %g, threads %d\n", registry.size(),
              static_cast<unsigned long long>(config.seed), config.budget, config.threads);
  std::fflush(stdout);

  int passed = 0, known = 0, unexpected = 0;
  int index = 0;
  for (const auto& check : registry) {
    ++index;
    verhulst::validate::SuiteConfig one = config;
    one.only = {check.name};
    const auto report = verhulst::validate::run_suite(registry, one).at(0);
    const KnownFailure* k = known_failure(report.name);
    std::printf("%s %2d %-24s statistic=%.6g threshold=%.6g (%s) [%.1f s]%s\n", report.passed ? "PASS" : "FAIL",
                index, report.name.c_str(), report.statistic, report.threshold, report.n_or_tolerance.c_str(),
                report.seconds, !report.passed && k ? " (known failure, see README)" : "");
    std::printf("        %s\n", report.details.c_str());
    if (!report.passed && k) std::printf("        known failure: %s\n", k->reason);
    if (report.passed && k) std::printf("        note: listed as a known failure but passed\n");
    std::fflush(stdout);
    if (report.passed) {
      ++passed;
    } else if (k) {
      ++known;
    } else {
      ++unexpected;
    }
  }
  std::printf("%d/%d criteria passed, %d known failures, %d unexpected failures\n", passed, index, known, unexpected);
  return unexpected == 0 ? 0 : 1;
}
