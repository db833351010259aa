#include <cmath>

#include "doctest.h"

#include "danet/numeric.hpp"
#include "danet/prior.hpp"
#include "danet/rng.hpp"

using namespace danet;
using doctest::Approx;

TEST_CASE("component prior parsing") {
  ComponentPrior u = ComponentPrior::parse("uniform");
  CHECK(u.kind == ComponentPrior::Kind::uniform);
  CHECK(u.free());

  ComponentPrior f = ComponentPrior::parse("fixed:0.66");
  CHECK(f.kind == ComponentPrior::Kind::fixed);
  CHECK(f.value == Approx(0.66));
  CHECK(!f.free());

  ComponentPrior b = ComponentPrior::parse("beta:2:5");
  CHECK(b.kind == ComponentPrior::Kind::beta);
  CHECK(b.a == Approx(2.0));
  CHECK(b.b == Approx(5.0));
  CHECK(b.free());

  for (const char* bad : {"", "junk", "fixed", "fixed:", "fixed:x", "beta:2",
                          "beta:2:", "uniform:1", "beta:a:b"}) {
    CHECK_THROWS_AS(ComponentPrior::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("round trip through to_string") {
  for (const char* spec : {"uniform", "fixed:0.250000", "beta:2.000000:5.000000"}) {
    ComponentPrior c = ComponentPrior::parse(spec);
    CHECK(c.to_string() == spec);
  }
}

TEST_CASE("component densities") {
  ComponentPrior u = ComponentPrior::parse("uniform");
  CHECK(u.log_pdf(0.3) == 0.0);
  CHECK(u.log_pdf(-0.1) == kNegInf);

  ComponentPrior f = ComponentPrior::parse("fixed:0.5");
  CHECK(f.log_pdf(0.5) == 0.0);
  CHECK(f.log_pdf(0.4) == kNegInf);

  // Beta(2,2) density at 1/2 is 1.5
  ComponentPrior b = ComponentPrior::parse("beta:2:2");
  CHECK(b.log_pdf(0.5) == Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(b.log_pdf(0.0) == kNegInf);
  CHECK(b.log_pdf(1.0) == kNegInf);
}

TEST_CASE("samples respect the support") {
  RngStream rng = RngStream::derive(21, StreamTag::chain_init);
  ComponentPrior b = ComponentPrior::parse("beta:0.4:0.4");
  for (int i = 0; i < 2000; ++i) {
    double x = b.sample(rng);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  ComponentPrior f = ComponentPrior::parse("fixed:0.25");
  CHECK(f.sample(rng) == 0.25);
}

TEST_CASE("prior spec bookkeeping") {
  PriorSpec spec;
  spec.comp[0] = ComponentPrior::parse("fixed:1");
  spec.comp[1] = ComponentPrior::parse("uniform");
  spec.comp[2] = ComponentPrior::parse("fixed:0.33");
  spec.comp[3] = ComponentPrior::parse("fixed:0");
  spec.validate();
  CHECK(spec.free_count() == 1);
  CHECK(spec.single_free_component() == 1);

  Theta at = spec.at(1, 0.7);
  CHECK(at.pi == 1.0);
  CHECK(at.p == 0.7);
  CHECK(at.q == Approx(0.33));
  CHECK(at.r == 0.0);
  CHECK(at.is_free(1));
  CHECK(!at.is_free(0));

  CHECK(spec.log_pdf(at) == 0.0);

  RngStream rng = RngStream::derive(5, StreamTag::chain_init);
  Theta draw = spec.sample(rng);
  CHECK(draw.pi == 1.0);
  CHECK(draw.p > 0.0);
  CHECK(draw.p < 1.0);
  CHECK(draw.is_free(1));

  PriorSpec all_fixed;
  for (int i = 0; i < 4; ++i) all_fixed.comp[i] = ComponentPrior::parse("fixed:0.5");
  CHECK_THROWS_AS(all_fixed.validate(), std::invalid_argument);
  CHECK_THROWS_AS(all_fixed.single_free_component(), std::invalid_argument);

  PriorSpec two_free = spec;
  two_free.comp[2] = ComponentPrior::parse("uniform");
  two_free.validate();
  CHECK(two_free.free_count() == 2);
  CHECK_THROWS_AS(two_free.single_free_component(), std::invalid_argument);

  PriorSpec bad_beta = spec;
  bad_beta.comp[1] = ComponentPrior::parse("beta:0:1");
  CHECK_THROWS_AS(bad_beta.validate(), std::invalid_argument);
}
