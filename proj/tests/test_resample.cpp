#include <cmath>
#include <vector>

#include "doctest.h"

#include "danet/errors.hpp"
#include "danet/numeric.hpp"
#include "danet/resample.hpp"
#include "danet/rng.hpp"

using namespace danet;
using doctest::Approx;

TEST_CASE("effective sample size") {
  std::vector<double> equal(10, std::log(0.1));
  CHECK(effective_sample_size(equal) == Approx(10.0).epsilon(1e-12));

  std::vector<double> one_hot = {0.0, kNegInf, kNegInf};
  CHECK(effective_sample_size(one_hot) == Approx(1.0).epsilon(1e-12));

  // weights (0.75, 0.25): 1 / (0.5625 + 0.0625) = 1.6
  std::vector<double> skew = {std::log(0.75), std::log(0.25)};
  CHECK(effective_sample_size(skew) == Approx(1.6).epsilon(1e-12));

  // scale invariance
  std::vector<double> shifted = {std::log(0.75) + 40, std::log(0.25) + 40};
  CHECK(effective_sample_size(shifted) == Approx(1.6).epsilon(1e-12));

  std::vector<double> dead = {kNegInf, kNegInf};
  CHECK_THROWS_AS(effective_sample_size(dead), EstimatorCollapse);
}

TEST_CASE("stratified offspring counts stay within one of expectation") {
  std::vector<double> lw = {std::log(0.5), std::log(0.2), std::log(0.2), std::log(0.1)};
  const std::size_t n = 1000;
  RngStream rng = RngStream::derive(3, StreamTag::resample);
  std::vector<std::uint32_t> idx = resample_indices(lw, n, ResampleScheme::stratified, rng);
  REQUIRE(idx.size() == n);
  std::vector<int> counts(lw.size(), 0);
  std::uint32_t prev = 0;
  for (std::uint32_t i : idx) {
    REQUIRE(i < lw.size());
    CHECK(i >= prev);  // stratified output is sorted by construction
    prev = i;
    counts[i] += 1;
  }
  std::vector<double> w = {0.5, 0.2, 0.2, 0.1};
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(std::abs(counts[i] - double(n) * w[i]) <= 1.0 + 1e-9);
}

TEST_CASE("multinomial counts concentrate near expectation") {
  std::vector<double> lw = {std::log(0.7), std::log(0.3)};
  const std::size_t n = 20000;
  RngStream rng = RngStream::derive(4, StreamTag::resample);
  std::vector<std::uint32_t> idx = resample_indices(lw, n, ResampleScheme::multinomial, rng);
  int c0 = 0;
  for (std::uint32_t i : idx) c0 += i == 0 ? 1 : 0;
  double se = std::sqrt(0.7 * 0.3 * double(n));
  CHECK(std::abs(c0 - 0.7 * double(n)) < 5 * se);
}

TEST_CASE("resampling is deterministic in the stream") {
  std::vector<double> lw = {std::log(0.4), std::log(0.6)};
  RngStream r1 = RngStream::derive(9, StreamTag::resample, 2);
  RngStream r2 = RngStream::derive(9, StreamTag::resample, 2);
  CHECK(resample_indices(lw, 50, ResampleScheme::multinomial, r1) ==
        resample_indices(lw, 50, ResampleScheme::multinomial, r2));

  std::vector<double> dead = {kNegInf};
  RngStream r3 = RngStream::derive(9, StreamTag::resample, 3);
  CHECK_THROWS_AS(resample_indices(dead, 5, ResampleScheme::stratified, r3),
                  EstimatorCollapse);
}

TEST_CASE("zero-weight entries never get offspring") {
  std::vector<double> lw = {std::log(0.5), kNegInf, std::log(0.5)};
  RngStream rng = RngStream::derive(12, StreamTag::resample);
  for (std::uint32_t i : resample_indices(lw, 200, ResampleScheme::stratified, rng))
    CHECK(i != 1);
  for (std::uint32_t i : resample_indices(lw, 200, ResampleScheme::multinomial, rng))
    CHECK(i != 1);
}
