#include "verhulst/curve.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "verhulst/errors.hpp"
#include "verhulst/quadrature.hpp"

namespace verhulst {

void DensityCurve::validate() const {
  if (abscissae.size() != values.size()) throw InvalidParameter("DensityCurve: length mismatch");
  for (std::size_t i = 1; i < abscissae.size(); ++i) {
    if (!(abscissae[i] > abscissae[i - 1])) throw InvalidParameter("DensityCurve: abscissae not increasing");
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw InvalidParameter("DensityCurve: negative or NaN value");
  }
}

std::vector<double> DensityCurve::cumulative() const {
  std::vector<double> c(abscissae.size(), 0.0);
  for (std::size_t i = 1; i < abscissae.size(); ++i) {
    c[i] = c[i - 1] + 0.5 * (abscissae[i] - abscissae[i - 1]) * (values[i] + values[i - 1]);
  }
  return c;
}

DensityCurve make_curve(std::string kind, std::string params, std::vector<double> abscissae,
                        const std::function<double(double)>& f) {
  DensityCurve c;
  c.kind = std::move(kind);
  c.params = std::move(params);
  c.values.reserve(abscissae.size());
  for (double x : abscissae) c.values.push_back(f(x));
  c.abscissae = std::move(abscissae);
  c.validate();
  c.total_mass = c.abscissae.empty() ? 0.0 : c.cumulative().back();
  return c;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw InvalidParameter("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || n < 2) throw InvalidParameter("linear_grid: need lo < hi and n >= 2");
  std::vector<double> g(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

void write_curve_csv(std::ostream& os, const DensityCurve& curve) {
  os.precision(17);
  os << "# kind=" << curve.kind << " params=" << curve.params << " mass=" << curve.total_mass << '\n';
  os << "x,density\n";
  for (std::size_t i = 0; i < curve.abscissae.size(); ++i) {
    os << curve.abscissae[i] << ',' << curve.values[i] << '\n';
  }
}

TabulatedCdf::TabulatedCdf(const std::function<double(double)>& density, double lo, double hi,
                           std::size_t panels, double mass_below)
    : knots_(log_grid(lo, hi, panels + 1)), mass_below_(mass_below) {
  build(density);
}

TabulatedCdf::TabulatedCdf(const std::function<double(double)>& density, std::vector<double> knots,
                           double mass_below)
    : knots_(std::move(knots)), mass_below_(mass_below) {
  if (knots_.size() < 2 || !(knots_.front() > 0.0)) throw InvalidParameter("TabulatedCdf: need >= 2 positive knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw InvalidParameter("TabulatedCdf: knots must increase");
  }
  build(density);
}

void TabulatedCdf::build(const std::function<double(double)>& density) {
  const auto& rule = quad::gauss_legendre(8);
  cum_.assign(knots_.size(), 0.0);
  dens_.resize(knots_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) dens_[i] = density(knots_[i]);
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double a = std::log(knots_[i]);
    const double b = std::log(knots_[i + 1]);
    const double piece = quad::integrate_gl(
        [&](double u) {
          const double z = std::exp(u);
          return z * density(z);
        },
        a, b, 1, rule);
    cum_[i + 1] = cum_[i] + piece;
  }
}

double TabulatedCdf::operator()(double x) const {
  if (x <= knots_.front()) return mass_below_;
  if (x >= knots_.back()) return mass_below_ + cum_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  const double h = knots_[i + 1] - knots_[i];
  const double s = (x - knots_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return mass_below_ + h00 * cum_[i] + h10 * h * dens_[i] + h01 * cum_[i + 1] + h11 * h * dens_[i + 1];
}

}  // namespace verhulst
