#pragma once

#include <cmath>
#include <cstdint>

namespace danet {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Labels for derived streams. Each (seed, tag, a, b) quadruple names an
/// independent stream, so results do not depend on scheduling or worker count.
enum class StreamTag : std::uint64_t {
  simulate = 1,
  propagate,
  resample,
  dpf_resample,
  combo_states,
  combo_dpf,
  chain_init,
  chain_step,
  rejection,
  repetition,
  estimator,
};

/// Counter-based generator: a splitmix64 walk from a key mixed out of the
/// (seed, tag, a, b) coordinates. All sampling in the library goes through
/// this type; std:: distributions are implementation-defined and would break
/// bit-reproducibility across toolchains.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(key) {}

  static RngStream derive(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
                          std::uint64_t b = 0) {
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL);
    h = mix64(h ^ (static_cast<std::uint64_t>(tag) + 0xD1B54A32D192ED03ULL));
    h = mix64(h ^ (a + 0x8CB92BA72F3D8DD7ULL));
    h = mix64(h ^ (b + 0xEB44ACCAB455D165ULL));
    return RngStream(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform on [0,1), 53-bit resolution.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1); safe under log().
  double uniform_open() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform on (0,1]; used where a draw of exactly 0 would be ill-defined.
  double uniform_pos() { return (double(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  /// Index uniform on {0,...,n-1}; n >= 1.
  std::uint32_t uniform_index(std::uint32_t n) {
    std::uint32_t i = std::uint32_t(uniform() * double(n));
    return i < n ? i : n - 1;
  }

  /// Standard normal via Box-Muller (two draws, no caching).
  double normal() {
    double u1 = uniform_open();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Gamma(shape, 1), Marsaglia-Tsang; shape > 0.
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

 private:
  std::uint64_t state_;
};

}  // namespace danet
