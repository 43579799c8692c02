#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qmeson {

/// A measured value with asymmetric first-order uncertainties.
///
/// Uncertainties are carried as two *signed* deviation tracks: `dev_up` is
/// the first-order shift of this quantity when every underlying measured
/// input moves up by its plus error at once, `dev_down` when every input
/// moves down by its minus error. Keeping the sign (rather than |err|)
/// preserves the correlations between quantities derived from the same raw
/// inputs, so that cancellations (e.g. a mean lifetime dropping out of a
/// width ratio) survive later propagation steps.
struct Quantity {
  double value = 0.0;
  double dev_up = 0.0;    // signed deviation, all raw inputs at +err_plus
  double dev_down = 0.0;  // signed deviation, all raw inputs at -err_minus
  std::string unit;

  static Quantity exact(double v, std::string unit = "") {
    return {v, 0.0, 0.0, std::move(unit)};
  }
  static Quantity symmetric(double v, double err, std::string unit = "") {
    return {v, err, -err, std::move(unit)};
  }
  static Quantity asymmetric(double v, double err_plus, double err_minus,
                             std::string unit = "") {
    return {v, err_plus, -err_minus, std::move(unit)};
  }

  double err_plus() const { return std::max({dev_up, dev_down, 0.0}); }
  double err_minus() const { return std::max({-dev_up, -dev_down, 0.0}); }
  bool symmetric_errors(double rel = 1e-9) const;
};

/// First-order propagation of `inputs` through f with an explicit gradient,
/// keeping the two deviation tracks coherent.
Quantity propagate_with_gradient(double value, std::span<const double> gradient,
                                 std::span<const Quantity> inputs,
                                 std::string unit = "");

/// Same, with the gradient obtained by central finite differences.
Quantity propagate(const std::function<double(std::span<const double>)>& f,
                   std::span<const Quantity> inputs, std::string unit = "");

}  // namespace qmeson
