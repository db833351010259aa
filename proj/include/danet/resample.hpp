#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "danet/rng.hpp"

namespace danet {

/// 1 / sum of squared normalized weights. log_weights may contain -inf;
/// throws EstimatorCollapse if every entry is -inf.
double effective_sample_size(std::span<const double> log_weights);

enum class ResampleScheme { multinomial, stratified };

/// Draws `count` ancestor indices from the normalized weights implied by
/// log_weights. Stratified places one uniform in each of `count` equal strata
/// of [0,1), so offspring counts stay within one of count * weight.
std::vector<std::uint32_t> resample_indices(std::span<const double> log_weights,
                                            std::size_t count, ResampleScheme scheme,
                                            RngStream& rng);

}  // namespace danet
