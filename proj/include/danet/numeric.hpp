#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace danet {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(sum(exp(x))) with the usual max shift; -inf entries drop out, an
/// all -inf (or empty) input yields -inf.
inline double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

/// Streaming log-sum-exp accumulator. Deterministic for a fixed feed order.
class RunningLse {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }
  bool empty() const { return max_ == kNegInf; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace danet
