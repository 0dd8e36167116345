#include "verhulst/random.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace verhulst {

double z_score(const McEstimate& a, const McEstimate& b) {
  const double diff = a.mean - b.mean;
  const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

double z_score(const McEstimate& a, double value) {
  const double diff = a.mean - value;
  if (a.std_error == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / a.std_error;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed, std::uint64_t index) : engine_(stream_seed(seed, index)) {}

double Rng::normal() { return boost::random::normal_distribution<double>()(engine_); }

double Rng::uniform01() { return boost::random::uniform_01<double>()(engine_); }

double Rng::exponential(double rate) { return boost::random::exponential_distribution<double>(rate)(engine_); }

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

McEstimate Accumulator::estimate() const {
  McEstimate e;
  e.n = n;
  if (n == 0) return e;
  const long double mean = sum / static_cast<long double>(n);
  e.mean = static_cast<double>(mean);
  if (n >= 2) {
    long double var = (sum_sq - static_cast<long double>(n) * mean * mean) / static_cast<long double>(n - 1);
    if (var < 0.0L) var = 0.0L;
    e.std_error = static_cast<double>(std::sqrt(var / static_cast<long double>(n)));
  }
  return e;
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void for_each_block(std::size_t n, int threads,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  if (blocks == 0) return;
  if (threads <= 0) threads = default_threads();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), blocks);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        body(b * kBlockSize, std::min(n, (b + 1) * kBlockSize), b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace verhulst
