#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cpmcmc {

// Counter-based splittable random stream.
//
// A stream is identified by a 64-bit key; outputs are a keyed hash of a
// per-stream counter, and child streams are keyed hashes of (key, label).
// Deriving a child never consumes state from the parent, so the random
// numbers seen by any component depend only on the root seed and the chain
// of labels leading to it, not on execution interleaving. Streams are cheap
// value types; copying one and consuming both copies yields identical
// numbers, which is how common-random-number couplings are expressed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(hash2(seed, 0x6f687061c0b5c0deULL)), ctr_(0) {}

  // Independent child stream; pure in (key, label).
  RngStream derive(std::uint64_t label) const {
    return RngStream(hash2(key_, label ^ kChildDomain), 0);
  }
  RngStream derive(std::uint64_t a, std::uint64_t b) const { return derive(a).derive(b); }
  RngStream derive(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return derive(a).derive(b).derive(c);
  }

  std::uint64_t next_u64() { return hash2(key_, kOutputDomain ^ ctr_++); }

  // Strictly inside (0, 1).
  double uniform() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Uniform over {0, ..., n - 1}.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t i = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return i >= n ? n - 1 : i;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double exponential() { return -std::log(uniform()); }

  // Gamma(shape, scale 1), Marsaglia-Tsang with the shape < 1 boost.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      const double u = uniform();
      return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

  double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

 private:
  RngStream(std::uint64_t key, std::uint64_t ctr) : key_(key), ctr_(ctr) {}

  static constexpr double kPi = 3.14159265358979323846;
  static constexpr std::uint64_t kChildDomain = 0x1b56c4e9ac53fd2bULL;
  static constexpr std::uint64_t kOutputDomain = 0x8000000000000000ULL;

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t hash2(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t x = mix64(a + 0x9e3779b97f4a7c15ULL);
    const std::uint64_t y = mix64(b + 0x2545f4914f6cdd1dULL);
    return mix64(x ^ (y + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2)));
  }

  std::uint64_t key_;
  std::uint64_t ctr_;
};

}  // namespace cpmcmc
