#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace verhulst {

/// Mean, standard error and sample count of a Monte Carlo average.
struct McEstimate {
  double mean = 0.0;
  /// Sample standard deviation / √n (0 when n < 2).
  double std_error = 0.0;
  std::size_t n = 0;
};

/// |a - b| / √(se_a² + se_b²); infinite if both standard errors vanish and
/// the means differ, 0 if they agree exactly.
double z_score(const McEstimate& a, const McEstimate& b);
/// (a.mean - value) / a.std_error with the same conventions.
double z_score(const McEstimate& a, double value);

/// splitmix64 finaliser; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replicate `index` under master seed `seed`. Streams depend only on
/// (seed, index), never on how replicates are distributed over threads.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// 64-bit Mersenne twister seeded from (seed, index).
class Rng {
 public:
  using engine_type = std::mt19937_64;
  Rng(std::uint64_t seed, std::uint64_t index);

  double normal();
  double uniform01();
  double exponential(double rate);
  engine_type& engine() noexcept { return engine_; }

 private:
  engine_type engine_;
};

/// Draw a seed from std::random_device.
std::uint64_t entropy_seed();

/// Running sum and sum of squares in extended precision.
struct Accumulator {
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  std::size_t n = 0;

  void add(double x) noexcept {
    sum += x;
    sum_sq += static_cast<long double>(x) * x;
    ++n;
  }
  void merge(const Accumulator& o) noexcept {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  [[nodiscard]] McEstimate estimate() const;
};

/// Worker count used when threads <= 0.
int default_threads();

/// Replicates are processed in fixed blocks of this size; partial sums are
/// combined in block order so results do not depend on the worker count.
inline constexpr std::size_t kBlockSize = 512;

/// Calls body(begin, end, block) for consecutive blocks of [0, n) on up to
/// `threads` workers. Exceptions from workers are rethrown on the caller.
void for_each_block(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Monte Carlo estimates of `k` quantities. `fn(index, out)` writes the k
/// per-replicate values into `out`; replicates are independent.
template <class Fn>
std::vector<McEstimate> mc_estimate_multi(std::size_t n, int threads, std::size_t k, Fn&& fn) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Accumulator> partial(blocks * k);
  for_each_block(n, threads, [&](std::size_t begin, std::size_t end, std::size_t block) {
    std::vector<double> out(k);
    Accumulator* acc = partial.data() + block * k;
    for (std::size_t i = begin; i < end; ++i) {
      fn(i, out.data());
      for (std::size_t j = 0; j < k; ++j) acc[j].add(out[j]);
    }
  });
  std::vector<McEstimate> result(k);
  for (std::size_t j = 0; j < k; ++j) {
    Accumulator total;
    for (std::size_t b = 0; b < blocks; ++b) total.merge(partial[b * k + j]);
    result[j] = total.estimate();
  }
  return result;
}

/// Single-quantity version of mc_estimate_multi; `fn(index)` returns the value.
template <class Fn>
McEstimate mc_estimate(std::size_t n, int threads, Fn&& fn) {
  return mc_estimate_multi(n, threads, 1, [&](std::size_t i, double* out) { out[0] = fn(i); })[0];
}

/// Evaluates fn(i) for every i in [0, n) in parallel and returns the values
/// in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int threads, Fn&& fn) {
  std::vector<T> out(n);
  for_each_block(n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
  });
  return out;
}

}  // namespace verhulst
