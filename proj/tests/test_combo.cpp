#include <cmath>
#include <vector>

#include "doctest.h"

#include "danet/combo.hpp"
#include "danet/dpf.hpp"
#include "danet/errors.hpp"
#include "danet/exact.hpp"
#include "danet/stats.hpp"
#include "helpers.hpp"

using namespace danet;
using namespace danet::testing;
using doctest::Approx;

namespace {
const Theta kRef = make_theta(1.0, 0.66, 0.33, 0.0);

ComboOptions copts(std::size_t n, std::uint32_t sw, std::size_t dn) {
  ComboOptions o;
  o.smc.particles = n;
  o.switch_size = sw;
  o.dpf_particles = dn;
  return o;
}
}  // namespace

TEST_CASE("a switch covering the whole graph is a plain discrete filter") {
  Graph g = sim_graph(7, kRef, 3);
  LikelihoodEstimate combo = combo_estimate(g, kRef, copts(50, 7, 200), 11);
  LikelihoodEstimate dpf = dpf_estimate(g, kRef, 200, 11);
  CHECK(combo.log_value == dpf.log_value);
  CHECK(combo.method == "combo");
}

TEST_CASE("handover estimates stay unbiased") {
  Graph g = sim_graph(10, kRef, 29);
  double exact = exact_likelihood(g, kRef).log_likelihood;
  const int reps = 300;
  std::vector<double> ratio(reps);
  for (int r = 0; r < reps; ++r) {
    LikelihoodEstimate est = combo_estimate(g, kRef, copts(100, 6, 400), std::uint64_t(r) + 1);
    REQUIRE(!est.collapsed);
    ratio[r] = std::exp(est.log_value - exact);
  }
  double mean = sample_mean(ratio);
  double se = standard_error(ratio);
  CHECK(std::abs(mean - 1.0) < 4 * se + 1e-9);
}

TEST_CASE("capping the handover states keeps the estimate sane") {
  Graph g = sim_graph(10, kRef, 29);
  double exact = exact_likelihood(g, kRef).log_likelihood;
  ComboOptions o = copts(100, 7, 400);
  o.state_cap = 2;
  const int reps = 300;
  std::vector<double> ratio(reps);
  for (int r = 0; r < reps; ++r) {
    LikelihoodEstimate est = combo_estimate(g, kRef, o, std::uint64_t(r) + 1);
    REQUIRE(!est.collapsed);
    ratio[r] = std::exp(est.log_value - exact);
  }
  CHECK(std::abs(sample_mean(ratio) - 1.0) < 4 * standard_error(ratio) + 1e-9);
}

TEST_CASE("a collapsing particle stage propagates into the combined result") {
  Theta dead = make_theta(1.0, 0.5, 0.0, 0.0);
  LikelihoodEstimate est = combo_estimate(make_path(5), dead, copts(20, 3, 50), 1);
  CHECK(est.collapsed);
  CHECK(std::isinf(est.log_value));
}

TEST_CASE("capacity limit") {
  CHECK_THROWS_AS(combo_estimate(Graph(65), kRef, copts(10, 5, 10), 1), CapacityError);
}
