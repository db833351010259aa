#include "danet/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "danet/errors.hpp"
#include "danet/exact.hpp"
#include "danet/numeric.hpp"
#include "danet/parallel.hpp"

namespace danet {

double PosteriorTable::cdf(double x) const {
  if (grid.empty()) return 0.0;
  if (x <= grid.front()) return 0.0;
  if (x >= grid.back()) return 1.0;
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t i = std::size_t(it - grid.begin()) - 1;
  double h = grid[i + 1] - grid[i];
  double t = x - grid[i];
  double slope = (density_[i + 1] - density_[i]) / h;
  return cdf_[i] + density_[i] * t + 0.5 * slope * t * t;
}

double PosteriorTable::mode() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (log_post[i] > log_post[best]) best = i;
  return grid[best];
}

PosteriorTable exact_posterior_grid(const Graph& g, const PriorSpec& prior,
                                    std::span<const double> grid) {
  prior.validate();
  int comp = prior.single_free_component();
  if (grid.size() < 2) throw std::invalid_argument("posterior grid needs at least 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("posterior grid must be strictly ascending");

  PosteriorTable tab;
  tab.component = comp;
  tab.grid.assign(grid.begin(), grid.end());
  tab.log_post.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Theta t = prior.at(comp, grid[i]);
    double ll = exact_likelihood(g, t).log_likelihood;
    tab.log_post[i] = ll + prior.comp[comp].log_pdf(grid[i]);
  }

  double m = *std::max_element(tab.log_post.begin(), tab.log_post.end());
  if (m == kNegInf) throw DegeneratePosterior("posterior is zero on the whole grid");

  std::size_t n = grid.size();
  std::vector<double> dens(n);
  for (std::size_t i = 0; i < n; ++i) dens[i] = std::exp(tab.log_post[i] - m);

  // Trapezoid integral of the shifted density, then normalize everything.
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    integral += 0.5 * (dens[i] + dens[i + 1]) * (grid[i + 1] - grid[i]);
  tab.log_normalizer = m + std::log(integral);

  tab.density_.resize(n);
  for (std::size_t i = 0; i < n; ++i) tab.density_[i] = dens[i] / integral;

  tab.mass.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 0.0;
    if (i > 0) w += 0.5 * (grid[i] - grid[i - 1]);
    if (i + 1 < n) w += 0.5 * (grid[i + 1] - grid[i]);
    tab.mass[i] = w * tab.density_[i];
  }

  tab.cdf_.resize(n);
  tab.cdf_[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    tab.cdf_[i + 1] =
        tab.cdf_[i] + 0.5 * (tab.density_[i] + tab.density_[i + 1]) * (grid[i + 1] - grid[i]);
  // The trapezoid cdf ends at 1 up to rounding; pin it.
  double total = tab.cdf_[n - 1];
  for (double& c : tab.cdf_) c /= total;
  for (double& d : tab.density_) d /= total;
  double mass_total = 0.0;
  for (double v : tab.mass) mass_total += v;
  for (double& v : tab.mass) v /= mass_total;
  return tab;
}

RejectionResult rejection_sample_posterior(const Graph& g, const PriorSpec& prior,
                                           std::size_t count, std::uint64_t seed,
                                           unsigned workers) {
  prior.validate();
  int comp = prior.single_free_component();

  // Proposals come from the prior, so the envelope only has to dominate the
  // likelihood. 1024-point scan with 10% headroom.
  constexpr std::size_t kScan = 1024;
  double max_ll = kNegInf;
  for (std::size_t i = 0; i < kScan; ++i) {
    double x = (double(i) + 0.5) / double(kScan);
    max_ll = std::max(max_ll, exact_likelihood(g, prior.at(comp, x)).log_likelihood);
  }
  if (max_ll == kNegInf)
    throw DegeneratePosterior("likelihood is zero everywhere; nothing to sample");
  double log_m = std::log(1.1) + max_ll;

  RejectionResult res;
  res.draws.resize(count);
  res.log_envelope = log_m;
  std::vector<std::uint64_t> proposals(count, 0);

  parallel_for(count, workers, [&](std::size_t i) {
    RngStream rng = RngStream::derive(seed, StreamTag::rejection, i);
    for (;;) {
      ++proposals[i];
      double x = prior.comp[comp].sample(rng);
      double ll = exact_likelihood(g, prior.at(comp, x)).log_likelihood;
      if (std::log(rng.uniform_pos()) <= ll - log_m) {
        res.draws[i] = x;
        return;
      }
    }
  });

  res.proposals = 0;
  for (std::uint64_t p : proposals) res.proposals += p;
  res.acceptance_rate = double(count) / double(res.proposals);
  return res;
}

}  // namespace danet
