#pragma once

#include <functional>

namespace qmeson {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 40;
};

/// Adaptive Simpson with Richardson extrapolation on [a, b].
/// Throws std::runtime_error when the target tolerance is unreachable.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace qmeson
