#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace danet {

double sample_mean(std::span<const double> xs);
/// Unbiased (n-1) sample variance; needs at least 2 points.
double sample_variance(std::span<const double> xs);
double standard_error(std::span<const double> xs);

/// One-sample Kolmogorov-Smirnov distance between the empirical distribution
/// of xs and the given CDF.
double ks_distance(std::span<const double> xs, const std::function<double(double)>& cdf);

/// Equal-width histogram counts of xs over [lo, hi); values outside are
/// clamped into the edge bins.
std::vector<std::uint64_t> histogram(std::span<const double> xs, double lo, double hi,
                                     std::size_t bins);

/// Least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

/// One-sided 95% critical value of Student's t for 1..30 degrees of freedom.
double t_critical_95(std::uint32_t df);

}  // namespace danet
