#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmeson {

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double initial_step = 0.0;  // 0: derived from the interval
  long max_steps = 5'000'000;
};

/// Embedded Cash-Karp 4(5) pair with standard step control. `State` needs
/// vector-space arithmetic and cwiseAbs/maxCoeff (Eigen vectors qualify).
/// Advances y from t to t_end, hitting t_end exactly.
template <typename State, typename Rhs>
void integrate_to(Rhs&& rhs, State& y, double t, double t_end,
                  const OdeOptions& opts = {}) {
  if (t_end == t) return;
  const double direction = t_end > t ? 1.0 : -1.0;
  double h = opts.initial_step != 0.0 ? std::abs(opts.initial_step)
                                      : std::abs(t_end - t) / 100.0;

  constexpr double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
  constexpr double b21 = 1.0 / 5;
  constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
  constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
  constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                   b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
  constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                   c6 = 512.0 / 1771;
  constexpr double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                   d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336,
                   d6 = c6 - 1.0 / 4;

  long steps = 0;
  while (direction * (t_end - t) > 0.0) {
    if (++steps > opts.max_steps)
      throw std::runtime_error("integrate_to: step budget exhausted");
    h = std::min(h, std::abs(t_end - t));
    const double hs = direction * h;

    const State k1 = rhs(t, y);
    const State k2 = rhs(t + a2 * hs, State(y + hs * b21 * k1));
    const State k3 = rhs(t + a3 * hs, State(y + hs * (b31 * k1 + b32 * k2)));
    const State k4 = rhs(t + a4 * hs, State(y + hs * (b41 * k1 + b42 * k2 + b43 * k3)));
    const State k5 =
        rhs(t + a5 * hs, State(y + hs * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4)));
    const State k6 = rhs(t + a6 * hs, State(y + hs * (b61 * k1 + b62 * k2 + b63 * k3 +
                                                      b64 * k4 + b65 * k5)));

    const State y_new = y + hs * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    const State err = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);

    double ratio = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double scale =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      ratio = std::max(ratio, std::abs(err[i]) / scale);
    }

    if (ratio <= 1.0) {
      t += hs;
      y = y_new;
      h *= std::clamp(0.9 * std::pow(std::max(ratio, 1e-12), -0.2), 1.0, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(ratio, -0.25), 0.1, 0.9);
      if (h < 1e-14 * std::max(std::abs(t), std::abs(t_end)))
        throw std::runtime_error("integrate_to: step size underflow");
    }
  }
}

}  // namespace qmeson
