#include <cmath>
#include <set>

#include "doctest.h"
#include "verhulst/random.hpp"

using namespace verhulst;

TEST_CASE("stream seeds are distinct and reproducible") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(stream_seed(7, i));
  CHECK(seen.size() == 1000);
  CHECK(stream_seed(7, 3) == stream_seed(7, 3));
  CHECK(stream_seed(7, 3) != stream_seed(8, 3));
  Rng a(1, 5), b(1, 5);
  for (int k = 0; k < 10; ++k) CHECK(a.normal() == b.normal());
}

TEST_CASE("accumulator standard error") {
  Accumulator acc;
  for (double x : {1.0, 2.0, 3.0, 4.0}) acc.add(x);
  const auto e = acc.estimate();
  CHECK(e.n == 4);
  CHECK(e.mean == doctest::Approx(2.5));
  // sample sd √(5/3), divided by √4
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  Accumulator one;
  one.add(3.0);
  CHECK(one.estimate().std_error == 0.0);
}

TEST_CASE("z scores") {
  const McEstimate a{1.0, 0.3, 10}, b{0.5, 0.4, 10};
  CHECK(z_score(a, b) == doctest::Approx(1.0));
  CHECK(z_score(a, 0.4) == doctest::Approx(2.0));
}

TEST_CASE("block reduction is independent of the worker count") {
  auto fn = [](std::size_t i) {
    Rng rng(99, i);
    return std::exp(rng.normal());
  };
  const auto one = mc_estimate(20000, 1, fn);
  const auto four = mc_estimate(20000, 4, fn);
  CHECK(one.mean == four.mean);
  CHECK(one.std_error == four.std_error);
  const auto mapped = parallel_map<double>(3000, 3, fn);
  for (std::size_t i = 0; i < mapped.size(); i += 499) CHECK(mapped[i] == fn(i));
}

TEST_CASE("distribution sanity") {
  Accumulator u, n, e;
  Rng rng(3, 0);
  for (int k = 0; k < 100000; ++k) {
    u.add(rng.uniform01());
    n.add(rng.normal());
    e.add(rng.exponential(2.0));
  }
  CHECK(std::fabs(z_score(u.estimate(), 0.5)) < 4.0);
  CHECK(std::fabs(z_score(n.estimate(), 0.0)) < 4.0);
  CHECK(std::fabs(z_score(e.estimate(), 0.5)) < 4.0);
}
