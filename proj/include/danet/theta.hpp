#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "danet/numeric.hpp"

namespace danet {

/// Model parameter quadruple. All components live in [0,1].
///   pi  probability of the duplication rule (vs. pure attachment)
///   p   per-link copy probability under duplication
///   q   parent-link probability under duplication
///   r   parent-link probability under pure attachment
struct Theta {
  double pi = 1.0;
  double p = 0.5;
  double q = 0.5;
  double r = 0.0;
  /// Bit i set means component i is an inference target (0:pi 1:p 2:q 3:r).
  std::uint8_t free_mask = 0;

  static constexpr const char* kNames[4] = {"pi", "p", "q", "r"};

  double component(int i) const {
    switch (i) {
      case 0: return pi;
      case 1: return p;
      case 2: return q;
      case 3: return r;
    }
    throw std::invalid_argument("theta component index out of range");
  }

  void set_component(int i, double v) {
    switch (i) {
      case 0: pi = v; return;
      case 1: p = v; return;
      case 2: q = v; return;
      case 3: r = v; return;
    }
    throw std::invalid_argument("theta component index out of range");
  }

  bool is_free(int i) const { return (free_mask >> i) & 1; }
  void set_free(int i) { free_mask = std::uint8_t(free_mask | (1u << i)); }

  void validate() const {
    for (int i = 0; i < 4; ++i) {
      double v = component(i);
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string("theta.") + kNames[i] + " outside [0,1]");
    }
  }

  bool same_values(const Theta& o) const {
    return pi == o.pi && p == o.p && q == o.q && r == o.r;
  }
};

/// Log factors of a validated theta, shared across transition-weight calls.
/// std::log(0) == -inf carries the boundary cases without branching.
struct ThetaLog {
  Theta theta;
  double log_pi, log_1pi;
  double log_p, log_1p;
  double log_q, log_1q;
  double log_r, log_1r;

  explicit ThetaLog(const Theta& t)
      : theta(t),
        log_pi(std::log(t.pi)),
        log_1pi(std::log(1.0 - t.pi)),
        log_p(std::log(t.p)),
        log_1p(std::log(1.0 - t.p)),
        log_q(std::log(t.q)),
        log_1q(std::log(1.0 - t.q)),
        log_r(std::log(t.r)),
        log_1r(std::log(1.0 - t.r)) {}
};

}  // namespace danet
