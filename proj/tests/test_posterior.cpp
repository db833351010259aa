#include <cmath>
#include <vector>

#include "doctest.h"

#include "danet/errors.hpp"
#include "danet/exact.hpp"
#include "danet/posterior.hpp"
#include "danet/stats.hpp"
#include "helpers.hpp"

using namespace danet;
using namespace danet::testing;
using doctest::Approx;

namespace {

PriorSpec uniform_p_prior() {
  PriorSpec prior;
  prior.comp[0] = ComponentPrior::parse("fixed:1");
  prior.comp[1] = ComponentPrior::parse("uniform");
  prior.comp[2] = ComponentPrior::parse("fixed:0.33");
  prior.comp[3] = ComponentPrior::parse("fixed:0");
  return prior;
}

std::vector<double> midpoint_grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = (double(i) + 0.5) / double(n);
  return g;
}

}  // namespace

TEST_CASE("grid posterior is a normalized distribution") {
  Graph g = sim_graph(8, make_theta(1.0, 0.66, 0.33, 0.0), 12);
  PriorSpec prior = uniform_p_prior();
  std::vector<double> grid = midpoint_grid(101);
  PosteriorTable tab = exact_posterior_grid(g, prior, grid);

  CHECK(tab.component == 1);
  CHECK(tab.grid.size() == 101);
  double total = 0.0;
  for (double m : tab.mass) total += m;
  CHECK(total == Approx(1.0).epsilon(1e-12));

  CHECK(tab.cdf(0.0) == 0.0);
  CHECK(tab.cdf(1.0) == Approx(1.0).epsilon(1e-12));
  CHECK(tab.cdf(-5.0) == 0.0);
  CHECK(tab.cdf(5.0) == Approx(1.0).epsilon(1e-12));
  double prev = 0.0;
  for (double x = 0.0; x <= 1.0; x += 0.01) {
    double c = tab.cdf(x);
    CHECK(c >= prev - 1e-12);
    prev = c;
  }

  double mode = tab.mode();
  CHECK(mode > 0.0);
  CHECK(mode < 1.0);
  CHECK(std::isfinite(tab.log_normalizer));

  // the log posterior really is likelihood plus log prior on the grid
  std::size_t mid = 50;
  Theta at = prior.at(1, tab.grid[mid]);
  CHECK(tab.log_post[mid] ==
        Approx(exact_likelihood(g, at).log_likelihood).epsilon(1e-12));
}

TEST_CASE("posterior concentrates around the generating parameter with enough data") {
  // not a sharp statement, just a sanity check on the mode's neighborhood
  Graph g = sim_graph(12, make_theta(1.0, 0.7, 0.33, 0.0), 4242);
  PosteriorTable tab = exact_posterior_grid(g, uniform_p_prior(), midpoint_grid(101));
  CHECK(tab.cdf(0.98) > 0.5);  // not all mass jammed at the right edge
}

TEST_CASE("degenerate posteriors are reported") {
  // pi = 0 makes any graph with a copied link impossible at every q
  PriorSpec prior;
  prior.comp[0] = ComponentPrior::parse("fixed:0");
  prior.comp[1] = ComponentPrior::parse("fixed:0.5");
  prior.comp[2] = ComponentPrior::parse("uniform");
  prior.comp[3] = ComponentPrior::parse("fixed:0.5");
  CHECK_THROWS_AS(exact_posterior_grid(make_complete(3), prior, midpoint_grid(21)),
                  DegeneratePosterior);
}

TEST_CASE("grid validation") {
  Graph g = make_complete(3);
  PriorSpec prior = uniform_p_prior();
  std::vector<double> one_point = {0.5};
  CHECK_THROWS_AS(exact_posterior_grid(g, prior, one_point), std::invalid_argument);
  std::vector<double> unsorted = {0.5, 0.2};
  CHECK_THROWS_AS(exact_posterior_grid(g, prior, unsorted), std::invalid_argument);

  PriorSpec two_free = prior;
  two_free.comp[2] = ComponentPrior::parse("uniform");
  CHECK_THROWS_AS(exact_posterior_grid(g, two_free, midpoint_grid(11)),
                  std::invalid_argument);
}

TEST_CASE("rejection draws match the grid posterior") {
  Graph g = sim_graph(8, make_theta(1.0, 0.66, 0.33, 0.0), 12);
  PriorSpec prior = uniform_p_prior();
  PosteriorTable tab = exact_posterior_grid(g, prior, midpoint_grid(201));

  RejectionResult rr = rejection_sample_posterior(g, prior, 4000, 77);
  CHECK(rr.draws.size() == 4000);
  CHECK(rr.acceptance_rate > 0.0);
  CHECK(rr.acceptance_rate <= 1.0);
  CHECK(std::isfinite(rr.log_envelope));
  CHECK(rr.proposals >= 4000);

  double ks = ks_distance(rr.draws, [&](double x) { return tab.cdf(x); });
  CHECK(ks < 0.04);
}

TEST_CASE("rejection sampling is invariant to the worker count") {
  Graph g = sim_graph(7, make_theta(1.0, 0.66, 0.33, 0.0), 9);
  PriorSpec prior = uniform_p_prior();
  RejectionResult one = rejection_sample_posterior(g, prior, 500, 5, 1);
  RejectionResult four = rejection_sample_posterior(g, prior, 500, 5, 4);
  CHECK(one.draws == four.draws);
  CHECK(one.proposals == four.proposals);
}
