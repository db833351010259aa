#include "danet/resample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "danet/errors.hpp"
#include "danet/numeric.hpp"

namespace danet {

double effective_sample_size(std::span<const double> log_weights) {
  double lse = log_sum_exp(log_weights);
  if (lse == kNegInf) throw EstimatorCollapse("all weights are zero");
  double sum_sq = 0.0;
  for (double lw : log_weights) {
    double w = std::exp(lw - lse);
    sum_sq += w * w;
  }
  return 1.0 / sum_sq;
}

std::vector<std::uint32_t> resample_indices(std::span<const double> log_weights,
                                            std::size_t count, ResampleScheme scheme,
                                            RngStream& rng) {
  double lse = log_sum_exp(log_weights);
  if (lse == kNegInf) throw EstimatorCollapse("cannot resample zero-mass weights");
  std::vector<double> cdf(log_weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    acc += std::exp(log_weights[i] - lse);
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  std::vector<std::uint32_t> out;
  out.reserve(count);
  if (scheme == ResampleScheme::multinomial) {
    for (std::size_t j = 0; j < count; ++j) {
      double u = rng.uniform();
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      out.push_back(std::uint32_t(std::min<std::size_t>(std::size_t(it - cdf.begin()),
                                                        cdf.size() - 1)));
    }
  } else {
    std::size_t i = 0;
    for (std::size_t j = 0; j < count; ++j) {
      double u = (double(j) + rng.uniform()) / double(count);
      while (cdf[i] <= u) ++i;
      out.push_back(std::uint32_t(i));
    }
  }
  return out;
}

}  // namespace danet
