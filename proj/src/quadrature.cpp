#include "qmeson/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeson {
namespace {

struct Worker {
  const std::function<double(double)>& f;
  const QuadratureOptions& opts;

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * (opts.abs_tol + opts.rel_tol * std::abs(left + right)))
      return left + right + delta / 15.0;
    if (depth >= opts.max_depth)
      throw std::runtime_error("integrate: adaptive Simpson did not converge");
    return recurse(a, m, fa, flm, fm, left, depth + 1) +
           recurse(m, b, fm, frm, fb, right, depth + 1);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Worker{f, opts}.recurse(a, b, fa, fm, fb, whole, 0);
}

}  // namespace qmeson
