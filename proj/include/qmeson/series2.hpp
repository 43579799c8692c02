#pragma once

#include <cmath>

namespace qmeson {

/// Truncated Taylor series c0 + c1*t + c2*t^2 about t = 0.
struct Series2 {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;

  double eval(double t) const { return c0 + t * (c1 + t * c2); }

  friend Series2 operator+(const Series2& a, const Series2& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend Series2 operator-(const Series2& a, const Series2& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend Series2 operator*(const Series2& a, const Series2& b) {
    return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0,
            a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
  }
  friend Series2 operator*(double s, const Series2& a) {
    return {s * a.c0, s * a.c1, s * a.c2};
  }
};

/// Degree-2 expansion of exp(-rate * t).
inline Series2 exp_decay_series(double rate) {
  return {1.0, -rate, 0.5 * rate * rate};
}

/// Degree-2 expansion of cos(omega * t).
inline Series2 cos_series(double omega) { return {1.0, 0.0, -0.5 * omega * omega}; }

/// 1 - rate*t + (second_order_factor/2) * rate^2 * t^2.
/// second_order_factor = 1 reproduces the exponential through t^2.
inline Series2 collapse_series(double rate, double second_order_factor) {
  return {1.0, -rate, 0.5 * second_order_factor * rate * rate};
}

}  // namespace qmeson
