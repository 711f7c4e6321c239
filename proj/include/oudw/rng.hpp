#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace oudw {

// splitmix64 finalizer; used to decorrelate substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic substream seed for (seed, index). Every replicate, sampler
/// draw or worker derives its own stream through this map, so results do not
/// depend on scheduling or loop order.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Standard-normal generator: mt19937_64 (whose raw output sequence the C++
/// standard pins down) plus Box-Muller. std::normal_distribution is
/// implementation-defined, so it is avoided; this stream reproduces bit for
/// bit across standard libraries.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  /// Uniform draw in (0, 1], safe to pass to log.
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    auto [a, b] = next_pair();
    spare_ = b;
    has_spare_ = true;
    return a;
  }

  std::pair<double, double> next_pair() {
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double phi = 2.0 * 3.14159265358979323846 * uniform01();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace oudw
