#include "verhulst/stats.hpp"

#include <algorithm>
#include <cmath>

#include "verhulst/errors.hpp"

namespace verhulst::stats {

namespace {

void require_sorted(std::span<const double> s) {
  if (s.empty()) throw InvalidParameter("empty sample");
  if (!std::is_sorted(s.begin(), s.end())) throw InvalidParameter("sample is not sorted");
}

}  // namespace

double ks_distance(std::span<const double> s, const std::function<double(double)>& cdf) {
  require_sorted(s);
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    // treat ties as one jump
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
    const double f = cdf(s[i]);
    d = std::max({d, std::fabs(f - static_cast<double>(i) / n), std::fabs(static_cast<double>(j + 1) / n - f)});
    i = j + 1;
  }
  return d;
}

double empirical_cdf(std::span<const double> s, double x) {
  require_sorted(s);
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
}

double kolmogorov_critical(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0) throw InvalidParameter("kolmogorov_critical: bad arguments");
  // P(K > k) ≈ 2 e^{-2k²} in the upper tail
  const double k = std::sqrt(-0.5 * std::log(0.5 * alpha));
  return k / std::sqrt(static_cast<double>(n));
}

double quantile(std::span<const double> s, double p) {
  require_sorted(s);
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("quantile: p must lie in [0, 1]");
  const double pos = p * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

double freedman_diaconis_width(std::span<const double> s) {
  require_sorted(s);
  const double iqr = quantile(s, 0.75) - quantile(s, 0.25);
  return 2.0 * iqr / std::cbrt(static_cast<double>(s.size()));
}

HistogramPoint histogram_density_at(std::span<const double> s, double x, double width) {
  require_sorted(s);
  if (!(width > 0.0)) throw InvalidParameter("histogram_density_at: width must be > 0");
  HistogramPoint h;
  h.lo = x - 0.5 * width;
  h.hi = x + 0.5 * width;
  const auto first = std::upper_bound(s.begin(), s.end(), h.lo);
  const auto last = std::upper_bound(s.begin(), s.end(), h.hi);
  const double n = static_cast<double>(s.size());
  const double p = static_cast<double>(last - first) / n;
  h.density = p / width;
  h.std_error = std::sqrt(p * (1.0 - p) / n) / width;
  return h;
}

}  // namespace verhulst::stats
