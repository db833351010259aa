#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "danet/exact.hpp"
#include "danet/numeric.hpp"
#include "danet/smc.hpp"
#include "danet/stats.hpp"
#include "helpers.hpp"

using namespace danet;
using namespace danet::testing;
using doctest::Approx;

namespace {

const Theta kRef = make_theta(1.0, 0.66, 0.33, 0.0);

SmcOptions opts(std::size_t n, double tau, Proposal::Kind kind = Proposal::Kind::optimal_conditional) {
  SmcOptions o;
  o.particles = n;
  o.ess_threshold = tau;
  o.proposal = kind;
  return o;
}

}  // namespace

TEST_CASE("proposal-matched weights are deterministic on symmetric graphs") {
  // On K3 every step's weight sum is the same whichever vertex is drawn, so
  // even a single particle reproduces the exact value.
  double expect = std::log(0.071874);
  CHECK(smc_estimate(make_complete(3), kRef, opts(1, 0.0), 42).log_value ==
        Approx(expect).epsilon(1e-12));
  CHECK(smc_estimate(make_complete(3), kRef, opts(7, 0.5), 43).log_value ==
        Approx(expect).epsilon(1e-12));
}

TEST_CASE("disabling resampling reproduces plain importance sampling bit for bit") {
  Graph g = sim_graph(9, kRef, 1234);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    LikelihoodEstimate a = smc_estimate(g, kRef, opts(64, 0.0), seed);
    LikelihoodEstimate b = importance_estimate(g, kRef, opts(64, 0.5), seed);
    CHECK(a.log_value == b.log_value);
    CHECK(a.segment_log_increments == b.segment_log_increments);
    CHECK(a.resample_times.empty());
    CHECK(b.resample_times.empty());
    CHECK(b.method == "importance");
  }
}

TEST_CASE("segment increments compose to the estimate") {
  Graph g = sim_graph(10, kRef, 777);
  for (double tau : {0.0, 0.5, 1.0}) {
    LikelihoodEstimate est = smc_estimate(g, kRef, opts(128, tau), 9);
    REQUIRE(!est.collapsed);
    double seg = std::accumulate(est.segment_log_increments.begin(),
                                 est.segment_log_increments.end(), 0.0);
    CHECK(seg == Approx(est.log_value).epsilon(1e-12));
    double steps = 0.0;
    for (const StepDiag& d : est.trace) {
      steps += d.log_increment;
      CHECK(d.ess >= 1.0 - 1e-9);
      CHECK(d.ess <= 128.0 + 1e-9);
      CHECK(d.unique >= 1);
      CHECK(d.unique <= 128);
    }
    CHECK(steps == Approx(est.log_value).epsilon(1e-9));
  }
}

TEST_CASE("forced resampling fires until every particle is absorbed") {
  LikelihoodEstimate est = smc_estimate(make_complete(3), kRef, opts(50, 1.0), 5);
  CHECK(est.resample_times == std::vector<std::uint32_t>{1});
  CHECK(est.trace.size() == 2);
  CHECK(est.trace[0].resampled);
  CHECK(!est.trace[1].resampled);  // nothing left open after the last step
  CHECK(est.log_value == Approx(std::log(0.071874)).epsilon(1e-12));
}

TEST_CASE("a parameter with zero mass everywhere collapses the run") {
  // pi=1 and q=0: the final two-vertex state can only be explained by a
  // parent link, so every path's weight hits zero by the last step
  Theta dead = make_theta(1.0, 0.5, 0.0, 0.0);
  LikelihoodEstimate est = smc_estimate(make_path(3), dead, opts(32, 0.5), 8);
  CHECK(est.collapsed);
  CHECK(std::isinf(est.log_value));
  CHECK(est.value() == 0.0);
  CHECK(est.trace.back().ess == 0.0);
}

TEST_CASE("uniform-proposal importance sampling is unbiased") {
  // Seed 11 yields an asymmetric 6-vertex graph, so the estimator has real
  // variance and the check is not vacuous.
  Graph g = sim_graph(6, kRef, 11);
  REQUIRE(g.edge_count() > 0);
  double exact = exact_likelihood(g, kRef).log_likelihood;
  const int reps = 400;
  std::vector<double> ratio(reps);
  for (int r = 0; r < reps; ++r) {
    LikelihoodEstimate est = smc_estimate(g, kRef, opts(200, 0.0, Proposal::Kind::uniform_removable),
                                          std::uint64_t(r) + 1);
    ratio[r] = std::exp(est.log_value - exact);
  }
  double mean = sample_mean(ratio);
  double se = standard_error(ratio);
  REQUIRE(se > 1e-12);
  CHECK(std::abs(mean - 1.0) < 4 * se);
}

TEST_CASE("driving the proposal at other parameters stays unbiased") {
  Graph g = sim_graph(8, kRef, 21);
  Theta target = make_theta(1.0, 0.55, 0.33, 0.0);
  double exact = exact_likelihood(g, target).log_likelihood;
  SmcOptions o = opts(200, 0.0);
  o.driving = kRef;
  const int reps = 400;
  std::vector<double> ratio(reps);
  for (int r = 0; r < reps; ++r) {
    ratio[r] = std::exp(importance_estimate(g, target, o, std::uint64_t(r) + 1).log_value - exact);
  }
  CHECK(std::abs(sample_mean(ratio) - 1.0) < 4 * standard_error(ratio));
}

TEST_CASE("dynamic resampling stays unbiased") {
  Graph g = sim_graph(9, kRef, 31);
  Theta target = make_theta(1.0, 0.45, 0.33, 0.0);
  double exact = exact_likelihood(g, target).log_likelihood;
  SmcOptions o = opts(100, 0.5);
  o.driving = kRef;
  const int reps = 400;
  std::vector<double> ratio(reps);
  for (int r = 0; r < reps; ++r) {
    ratio[r] = std::exp(smc_estimate(g, target, o, std::uint64_t(r) + 101).log_value - exact);
  }
  CHECK(std::abs(sample_mean(ratio) - 1.0) < 4 * standard_error(ratio));
}

TEST_CASE("reweighting one sampled path set covers a parameter grid") {
  Graph g = sim_graph(9, kRef, 55);
  Theta t0 = kRef;
  Theta t1 = make_theta(1.0, 0.5, 0.33, 0.0);
  Theta t2 = make_theta(1.0, 0.75, 0.4, 0.0);
  std::vector<Theta> grid = {t0, t1, t2};
  SmcOptions o = opts(256, 0.0);
  o.driving = t0;

  std::vector<double> curve = importance_reweight_curve(g, grid, o, 99);
  REQUIRE(curve.size() == 3);

  // the driving point reproduces the plain estimate exactly
  CHECK(curve[0] == importance_estimate(g, t0, o, 99).log_value);
  // and so does every other grid point at the same seed
  CHECK(curve[1] == importance_estimate(g, t1, o, 99).log_value);
  CHECK(curve[2] == importance_estimate(g, t2, o, 99).log_value);

  SmcOptions no_driving = opts(256, 0.0);
  CHECK_THROWS_AS(importance_reweight_curve(g, grid, no_driving, 99), std::invalid_argument);
}

TEST_CASE("reweight curve estimates are unbiased off the driving point") {
  Graph g = sim_graph(8, kRef, 61);
  Theta t1 = make_theta(1.0, 0.5, 0.33, 0.0);
  double exact = exact_likelihood(g, t1).log_likelihood;
  std::vector<Theta> grid = {t1};
  SmcOptions o = opts(100, 0.0);
  o.driving = kRef;
  const int reps = 300;
  std::vector<double> ratio(reps);
  for (int r = 0; r < reps; ++r) {
    std::vector<double> curve = importance_reweight_curve(g, grid, o, std::uint64_t(r) + 1);
    ratio[r] = std::exp(curve[0] - exact);
  }
  CHECK(std::abs(sample_mean(ratio) - 1.0) < 4 * standard_error(ratio));
}

TEST_CASE("capture stops the pool at a requested size") {
  Graph g = sim_graph(10, kRef, 83);
  ParticleCapture cap;
  cap.stop_active_count = 5;
  cap.keep_finals = true;
  cap.keep_paths = true;
  smc_estimate(g, kRef, opts(64, 0.5), 3, &cap);
  REQUIRE(cap.finals.size() == 64);
  REQUIRE(cap.paths.size() == 64);
  for (std::size_t i = 0; i < cap.finals.size(); ++i) {
    std::uint32_t active = std::uint32_t(std::popcount(cap.finals[i].mask));
    if (cap.finals[i].absorbed) {
      CHECK(active >= 5);  // absorbed somewhere on the way down
    } else {
      CHECK(active == 5);
    }
    CHECK(validate_removal_path(g, {cap.paths[i]}));
    CHECK(cap.paths[i].size() == g.active_count() - active);
  }
}
