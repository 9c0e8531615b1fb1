#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pv {

// Counter-style splittable generator. Streams are derived by hashing a
// (seed, index) pair into a fresh state, so the draw for coefficient k does
// not depend on how many draws preceded it. That keeps sampling results
// independent of evaluation order.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log argument.
  double next_unit_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  // Uniform on [-1, 1].
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    double u = next_unit_open();
    double v = next_unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled by the
  // usual boost Gamma(shape+1) * U^(1/shape).
  double next_gamma(double shape) {
    if (shape < 1.0) {
      double u = next_unit_open();
      return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = next_gaussian();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = next_unit_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

private:
  std::uint64_t state_;
};

// Derives an independent stream key from a seed and up to two indices.
inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t z = seed;
  z ^= a + 0x9e3779b97f4a7c15ULL + (z << 6) + (z >> 2);
  z ^= b + 0x9e3779b97f4a7c15ULL + (z << 6) + (z >> 2);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace pv
