#include <cmath>

#include "doctest.h"
#include "verhulst/specfun.hpp"

using namespace verhulst;

TEST_CASE("phi_arcosh at zero crowding is |y|") {
  for (double y : {-3.0, -0.2, 0.0, 0.7, 5.0}) CHECK(specfun::phi_arcosh(0.0, y) == doctest::Approx(std::fabs(y)));
}

TEST_CASE("phi_arcosh reference points") {
  CHECK(specfun::phi_arcosh(1.0, 0.0) == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-15));
  CHECK(specfun::phi_arcosh(1.0, 0.0) == doctest::Approx(1.316957896924816).epsilon(1e-15));
  const double arg = 3.0 * std::exp(-1.0) + std::cosh(1.0);
  CHECK(specfun::phi_arcosh(3.0, 1.0) == doctest::Approx(std::acosh(arg)).epsilon(1e-15));
}

TEST_CASE("phi_arcosh stays finite for large arguments") {
  const double v = specfun::phi_arcosh(1e300, -5.0);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(std::log(2.0) + std::log(1e300) + 5.0).epsilon(1e-12));
  CHECK(std::isfinite(specfun::phi_arcosh(1.0, 800.0)));
}

TEST_CASE("laplace_kernel_F") {
  for (double x : {-2.0, 0.0, 1.5})
    for (double t : {0.1, 1.0, 9.0}) CHECK(specfun::laplace_kernel_F(x, 0.0, t) == 1.0);
  const double a = std::log(2.0 + std::sqrt(3.0));
  CHECK(specfun::laplace_kernel_F(0.0, 1.0, 1.0) == doctest::Approx(std::exp(-a * a / 2.0)).epsilon(1e-14));
  CHECK(specfun::laplace_kernel_F(0.0, 1.0, 1.0) == doctest::Approx(0.420).epsilon(2e-3));
}
