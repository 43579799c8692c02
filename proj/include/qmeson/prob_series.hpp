#pragma once

#include <cmath>
#include <optional>

#include "qmeson/series2.hpp"

namespace qmeson {

/// Decay factor multiplying a transition-probability channel.
struct DecayEnvelope {
  enum class Kind { None, Single, Pair, Average };
  Kind kind = Kind::None;
  double gamma_a = 0.0;
  double gamma_b = 0.0;

  static DecayEnvelope none() { return {}; }
  static DecayEnvelope single(double gamma) { return {Kind::Single, gamma, 0.0}; }
  static DecayEnvelope pair(double ga, double gb) { return {Kind::Pair, ga, gb}; }
  static DecayEnvelope average(double ga, double gb) { return {Kind::Average, ga, gb}; }

  double eval(double t) const {
    switch (kind) {
      case Kind::None: return 1.0;
      case Kind::Single: return std::exp(-gamma_a * t);
      case Kind::Pair: return 0.5 * (std::exp(-gamma_a * t) + std::exp(-gamma_b * t));
      case Kind::Average: return std::exp(-0.5 * (gamma_a + gamma_b) * t);
    }
    return 1.0;
  }
};

/// Polynomial-in-time channel coefficients with decay envelope and optional
/// oscillation. The polynomial part is perturbative; `within_guard` bounds
/// where the truncated series can be trusted.
struct ProbSeries {
  Series2 series{1.0, 0.0, 0.0};
  DecayEnvelope envelope;
  std::optional<double> oscillation_delta_m;

  double eval(double t) const {
    double v = series.eval(t) * envelope.eval(t);
    if (oscillation_delta_m) v *= std::cos(*oscillation_delta_m * t);
    return v;
  }

  bool within_guard(double t, double limit = 0.1) const {
    return std::abs(series.c1) * t <= limit;
  }
};

}  // namespace qmeson
