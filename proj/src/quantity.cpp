#include "qmeson/quantity.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeson {

bool Quantity::symmetric_errors(double rel) const {
  const double p = err_plus(), m = err_minus();
  return std::abs(p - m) <= rel * std::max(p, m);
}

Quantity propagate_with_gradient(double value, std::span<const double> gradient,
                                 std::span<const Quantity> inputs,
                                 std::string unit) {
  if (gradient.size() != inputs.size())
    throw std::invalid_argument("propagate: gradient/input size mismatch");
  Quantity out{value, 0.0, 0.0, std::move(unit)};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out.dev_up += gradient[i] * inputs[i].dev_up;
    out.dev_down += gradient[i] * inputs[i].dev_down;
  }
  return out;
}

Quantity propagate(const std::function<double(std::span<const double>)>& f,
                   std::span<const Quantity> inputs, std::string unit) {
  std::vector<double> x(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) x[i] = inputs[i].value;
  const double value = f(x);

  // Central differences; h ~ cbrt(eps)*|x| balances truncation and roundoff.
  std::vector<double> grad(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double xi = x[i];
    const double h = 6e-6 * (xi != 0.0 ? std::abs(xi) : 1.0);
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return propagate_with_gradient(value, grad, inputs, std::move(unit));
}

}  // namespace qmeson
