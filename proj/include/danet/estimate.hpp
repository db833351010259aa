#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace danet {

/// One per-step diagnostics row from a particle run.
struct StepDiag {
  std::uint32_t step = 0;      // 1-based removal step
  double ess = 0.0;            // effective sample size before any resample
  std::uint32_t unique = 0;    // distinct removal paths in the pool
  bool resampled = false;
  double log_increment = 0.0;  // contribution of this step to the log estimate
};

struct LikelihoodEstimate {
  double log_value = -std::numeric_limits<double>::infinity();
  std::vector<double> segment_log_increments;  // factors multiplying to value()
  std::vector<std::uint32_t> resample_times;   // steps at which a resample fired
  std::string method;
  double seconds = 0.0;
  std::vector<StepDiag> trace;
  bool collapsed = false;  // every particle hit weight zero

  double value() const { return std::exp(log_value); }
};

}  // namespace danet
