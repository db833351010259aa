#include "danet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace danet {

double sample_mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / double(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance needs at least 2 points");
  double m = sample_mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / double(xs.size() - 1);
}

double standard_error(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs) / double(xs.size()));
}

double ks_distance(std::span<const double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::invalid_argument("KS distance of empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  double n = double(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = cdf(sorted[i]);
    d = std::max(d, std::abs(f - double(i) / n));
    d = std::max(d, std::abs(double(i + 1) / n - f));
  }
  return d;
}

std::vector<std::uint64_t> histogram(std::span<const double> xs, double lo, double hi,
                                     std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (!(hi > lo)) throw std::invalid_argument("histogram needs hi > lo");
  std::vector<std::uint64_t> counts(bins, 0);
  for (double x : xs) {
    double t = (x - lo) / (hi - lo) * double(bins);
    auto b = std::int64_t(std::floor(t));
    b = std::clamp<std::int64_t>(b, 0, std::int64_t(bins) - 1);
    counts[std::size_t(b)] += 1;
  }
  return counts;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope needs two same-length series");
  double mx = sample_mean(x), my = sample_mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope undefined for constant x");
  return sxy / sxx;
}

double t_critical_95(std::uint32_t df) {
  static const double table[30] = {
      6.3138, 2.9200, 2.3534, 2.1318, 2.0150, 1.9432, 1.8946, 1.8595, 1.8331, 1.8125,
      1.7959, 1.7823, 1.7709, 1.7613, 1.7531, 1.7459, 1.7396, 1.7341, 1.7291, 1.7247,
      1.7207, 1.7171, 1.7139, 1.7109, 1.7081, 1.7056, 1.7033, 1.7011, 1.6991, 1.6973};
  if (df == 0 || df > 30)
    throw std::invalid_argument("critical value tabulated for 1..30 degrees of freedom");
  return table[df - 1];
}

}  // namespace danet
