#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace verhulst::stats {

/// sup_x |F_n(x) - cdf(x)| for sorted samples, checked on both sides of
/// every jump. Throws InvalidParameter on empty or unsorted input.
double ks_distance(std::span<const double> sorted_samples, const std::function<double(double)>& cdf);

/// Empirical CDF of sorted samples at x (fraction ≤ x).
double empirical_cdf(std::span<const double> sorted_samples, double x);

/// Upper α quantile of the Kolmogorov distribution scaled by 1/√n
/// (asymptotic; α = 0.01 gives 1.628/√n).
double kolmogorov_critical(std::size_t n, double alpha);

/// Freedman-Diaconis bin width 2·IQR·n^{-1/3} of sorted samples.
double freedman_diaconis_width(std::span<const double> sorted_samples);

/// Histogram density estimate at x using a bin of the given width centred
/// on x, with its binomial standard error.
struct HistogramPoint {
  double density = 0.0;
  double std_error = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};
HistogramPoint histogram_density_at(std::span<const double> sorted_samples, double x, double width);

/// Quantile by linear interpolation of the order statistics.
double quantile(std::span<const double> sorted_samples, double p);

}  // namespace verhulst::stats
