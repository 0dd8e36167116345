#include "verhulst/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "gauss_legendre_impl.hpp"
#include "verhulst/errors.hpp"

namespace verhulst::quad {

namespace {

GaussLegendreRule make_rule(int order) {
  // n = 1 degenerates in the Newton loop; the midpoint rule is exact there.
  if (order == 1) return GaussLegendreRule{{0.0}, {2.0}};
  std::vector<long double> x;
  std::vector<long double> w;
  detail::legendre_rule<long double>(
      order, x, w, [](long double v) { return std::cos(v); },
      [](long double v) { return std::fabs(v); }, std::numbers::pi_v<long double>, 1e-18L);
  GaussLegendreRule rule;
  rule.nodes.assign(x.begin(), x.end());
  rule.weights.assign(w.begin(), w.end());
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw InvalidParameter("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(make_rule(order));
  return *slot;
}

}  // namespace verhulst::quad
