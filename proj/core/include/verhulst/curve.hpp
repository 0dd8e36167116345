#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace verhulst {

/// Sampled density: strictly increasing abscissae, nonnegative values, and
/// the trapezoid mass of the samples.
struct DensityCurve {
  std::string kind;
  std::string params;
  std::vector<double> abscissae;
  std::vector<double> values;
  double total_mass = 0.0;

  /// Throws InvalidParameter if the shape invariants fail.
  void validate() const;
  /// Trapezoid cumulative integral from the first abscissa.
  [[nodiscard]] std::vector<double> cumulative() const;
};

/// Evaluates f on the abscissae and fills total_mass.
DensityCurve make_curve(std::string kind, std::string params, std::vector<double> abscissae,
                        const std::function<double(double)>& f);

/// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);
/// n equally spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

/// "# kind=... params=... mass=..." then "x,density" and one row per point.
void write_curve_csv(std::ostream& os, const DensityCurve& curve);

/// CDF of a density given on [lo, hi], tabulated on log-spaced panels with
/// Gauss-Legendre and interpolated by cubic Hermite using the density as
/// derivative. Values below lo are `mass_below`; the tail above hi is not
/// included.
class TabulatedCdf {
 public:
  TabulatedCdf(const std::function<double(double)>& density, double lo, double hi, std::size_t panels,
               double mass_below = 0.0);
  /// Same with explicit increasing knots (e.g. to place one on a kink).
  TabulatedCdf(const std::function<double(double)>& density, std::vector<double> knots, double mass_below = 0.0);
  double operator()(double x) const;
  [[nodiscard]] double total() const { return cum_.back(); }
  [[nodiscard]] const std::vector<double>& knots() const { return knots_; }

 private:
  std::vector<double> knots_;
  std::vector<double> cum_;
  std::vector<double> dens_;
  double mass_below_;

  void build(const std::function<double(double)>& density);
};

}  // namespace verhulst
