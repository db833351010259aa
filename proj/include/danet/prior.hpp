#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "danet/numeric.hpp"
#include "danet/rng.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Prior for one theta component: pinned to a value, flat on [0,1], or
/// Beta(a,b).
struct ComponentPrior {
  enum class Kind { fixed, uniform, beta };
  Kind kind = Kind::fixed;
  double value = 0.0;  // fixed
  double a = 1.0, b = 1.0;  // beta shapes

  bool free() const { return kind != Kind::fixed; }

  double log_pdf(double x) const {
    switch (kind) {
      case Kind::fixed:
        return x == value ? 0.0 : kNegInf;
      case Kind::uniform:
        return (x >= 0.0 && x <= 1.0) ? 0.0 : kNegInf;
      case Kind::beta: {
        if (x <= 0.0 || x >= 1.0) return kNegInf;
        double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
        return (a - 1.0) * std::log(x) + (b - 1.0) * std::log(1.0 - x) - lb;
      }
    }
    return kNegInf;
  }

  /// Draw; exact-boundary values are rejected and redrawn so downstream
  /// logit transforms stay finite.
  double sample(RngStream& rng) const {
    switch (kind) {
      case Kind::fixed:
        return value;
      case Kind::uniform:
        return rng.uniform_open();
      case Kind::beta: {
        double x;
        do {
          x = rng.beta(a, b);
        } while (x <= 0.0 || x >= 1.0);
        return x;
      }
    }
    return value;
  }

  /// "fixed:v" | "uniform" | "beta:a:b"
  static ComponentPrior parse(const std::string& spec);
  std::string to_string() const;
};

/// Priors for (pi, p, q, r). At least one component must be free.
struct PriorSpec {
  std::array<ComponentPrior, 4> comp;

  int free_count() const {
    int n = 0;
    for (const auto& c : comp) n += c.free() ? 1 : 0;
    return n;
  }

  /// Index of the single free component; throws unless exactly one.
  int single_free_component() const {
    if (free_count() != 1)
      throw std::invalid_argument("operation requires exactly one free prior component");
    for (int i = 0; i < 4; ++i)
      if (comp[i].free()) return i;
    return -1;
  }

  void validate() const {
    if (free_count() == 0) throw std::invalid_argument("prior fixes every component");
    for (int i = 0; i < 4; ++i) {
      const auto& c = comp[i];
      if (c.kind == ComponentPrior::Kind::fixed && !(c.value >= 0.0 && c.value <= 1.0))
        throw std::invalid_argument(std::string("fixed prior value for ") + Theta::kNames[i] +
                                    " outside [0,1]");
      if (c.kind == ComponentPrior::Kind::beta && !(c.a > 0.0 && c.b > 0.0))
        throw std::invalid_argument("beta shapes must be positive");
    }
  }

  double log_pdf(const Theta& t) const {
    double lp = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (!comp[i].free()) continue;
      lp += comp[i].log_pdf(t.component(i));
      if (lp == kNegInf) return kNegInf;
    }
    return lp;
  }

  Theta sample(RngStream& rng) const {
    Theta t;
    for (int i = 0; i < 4; ++i) {
      t.set_component(i, comp[i].sample(rng));
      if (comp[i].free()) t.set_free(i);
    }
    return t;
  }

  /// Theta with fixed components at their pinned values and free components
  /// at the given value (handy for grids over one free component).
  Theta at(int component, double x) const {
    Theta t;
    for (int i = 0; i < 4; ++i) {
      t.set_component(i, comp[i].free() ? 0.0 : comp[i].value);
      if (comp[i].free()) t.set_free(i);
    }
    t.set_component(component, x);
    return t;
  }
};

}  // namespace danet
