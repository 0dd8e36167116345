#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace verhulst::quad {

/// Gauss-Legendre nodes and weights on [-1, 1], ordered by increasing node.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  [[nodiscard]] std::size_t order() const noexcept { return nodes.size(); }
};

/// Rule of the given order, computed once per order and cached.
/// Thread-safe. Throws InvalidParameter for order < 1.
const GaussLegendreRule& gauss_legendre(int order);

/// Composite Gauss-Legendre on [a, b] split into `panels` equal panels.
template <class F>
double integrate_gl(F&& f, double a, double b, int panels, const GaussLegendreRule& rule) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    sum += half * panel;
  }
  return sum;
}

/// Composite Gauss-Legendre over consecutive breakpoints; `per_unit` panels
/// per unit length (at least one panel per interval).
template <class F>
double integrate_breaks(F&& f, std::span<const double> breaks, double per_unit,
                        const GaussLegendreRule& rule) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double len = breaks[k + 1] - breaks[k];
    if (len <= 0.0) continue;
    int panels = static_cast<int>(len * per_unit + 0.999999);
    if (panels < 1) panels = 1;
    sum += integrate_gl(f, breaks[k], breaks[k + 1], panels, rule);
  }
  return sum;
}

}  // namespace verhulst::quad
