#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "danet/graph.hpp"
#include "danet/prior.hpp"

namespace danet {

/// Exact single-parameter posterior tabulated on a grid. mass sums to 1
/// (trapezoid normalization); cdf() integrates the piecewise-linear density.
struct PosteriorTable {
  int component = 1;
  std::vector<double> grid;      // ascending
  std::vector<double> log_post;  // unnormalized log L(theta) + log prior
  std::vector<double> mass;      // per-point trapezoid mass, sums to 1
  double log_normalizer = 0.0;   // log integral of the unnormalized posterior

  double cdf(double x) const;
  double mode() const;  // grid argmax of log_post

 private:
  friend PosteriorTable exact_posterior_grid(const Graph&, const PriorSpec&,
                                             std::span<const double>);
  std::vector<double> density_;  // normalized density at grid points
  std::vector<double> cdf_;      // cdf at grid points
};

/// Tabulates the posterior of the single free prior component over grid.
/// Exact likelihood per point, so the graph must fit the exact recursion.
PosteriorTable exact_posterior_grid(const Graph& g, const PriorSpec& prior,
                                    std::span<const double> grid);

struct RejectionResult {
  std::vector<double> draws;
  std::uint64_t proposals;
  double acceptance_rate;
  double log_envelope;  // log M
};

/// Rejection sampler for the same single-parameter posterior. Proposals come
/// from the prior; the envelope is 1.1 times the maximum likelihood over a
/// 1024-point scan. Draw i is deterministic in (seed, i), so results are
/// identical for any worker count.
RejectionResult rejection_sample_posterior(const Graph& g, const PriorSpec& prior,
                                           std::size_t count, std::uint64_t seed,
                                           unsigned workers = 1);

}  // namespace danet
