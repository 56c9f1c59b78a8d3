#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace aot {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Counter-based deterministic generator. Draw k of stream (seed, stream) is a
// pure function of (seed, stream, k), so sequences never depend on thread
// scheduling and any stream can be regenerated independently.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(mix64(seed + 0x632be59bd9b4e019ULL) ^
                   mix64(stream + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() {
    return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  // uniform in [0, 1) with 53-bit resolution
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]; safe as a log argument
  double next_open() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // standard normal, Box-Muller
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = next_open();
    const double v = next_double();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // uniform integer in [0, n), rejection from the top to stay unbiased
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Fisher-Yates with our own bounded draws; bit-reproducible across platforms,
// unlike std::shuffle whose draw scheme is implementation-defined.
template <class T>
void deterministic_shuffle(std::vector<T>& v, CounterRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.next_below(i)]);
  }
}

}  // namespace aot
