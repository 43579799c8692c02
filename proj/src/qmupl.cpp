#include "qmeson/qmupl.hpp"

#include <cmath>
#include <stdexcept>

#include "qmeson/quadrature.hpp"

namespace qmeson {

QmuplParams::QmuplParams(double lambda_, double alpha_, double m0_, ThetaZero theta0_,
                         int dim_)
    : lambda(lambda_), alpha(alpha_), m0(m0_), theta0(theta0_), dim(dim_) {
  if (lambda < 0.0) throw std::domain_error("qmupl: lambda must be >= 0");
  if (alpha <= 0.0) throw std::domain_error("qmupl: alpha must be > 0");
  if (m0 <= 0.0) throw std::domain_error("qmupl: m0 must be > 0");
  if (dim < 1 || dim > 3) throw std::domain_error("qmupl: dim must be 1, 2 or 3");
}

double lambda_qmupl(const QmuplParams& params, double m_mu) {
  const double r = m_mu / params.m0;
  return 0.5 * params.alpha_lambda() * r * r * (1.0 - 2.0 * params.theta0.value);
}

Series2 mass_series_qmupl(const QmuplParams& params, double m_mu) {
  return collapse_series(lambda_qmupl(params, m_mu), 3.0);
}

double interference_rate_qmupl(const QmuplParams& params, const MassPair& masses) {
  const double a = 1.0 - params.theta0.value;
  const double m02 = params.m0 * params.m0;
  const double mh = masses.heavy, ml = masses.light;
  return 0.5 * params.alpha_lambda() / m02 * ((mh * mh + ml * ml) * a - mh * ml);
}

Series2 interference_series_qmupl(const QmuplParams& params, const MassPair& masses) {
  return collapse_series(interference_rate_qmupl(params, masses), 3.0);
}

Flagged prob_mass_qmupl(const QmuplParams& params, const MesonParams& meson,
                        const MassPair& masses, Eigenstate from, Eigenstate to,
                        double t) {
  if (t < 0.0) throw std::domain_error("prob_mass_qmupl: t must be >= 0");
  if (from != to) return {0.0, true};
  const double m_mu = masses.of(from);
  const double gamma = (from == Eigenstate::Light ? meson.gamma_light : meson.gamma_heavy).value;
  ProbSeries channel{mass_series_qmupl(params, m_mu), DecayEnvelope::single(gamma), {}};
  return {channel.eval(t), channel.within_guard(t, kPerturbativeGuard)};
}

Flagged prob_flavor_qmupl(const QmuplParams& params, const MesonParams& meson,
                          const MassPair& masses, FlavorTarget target, double t) {
  if (t < 0.0) throw std::domain_error("prob_flavor_qmupl: t must be >= 0");
  const double gl = meson.gamma_light.value, gh = meson.gamma_heavy.value;

  ProbSeries heavy{mass_series_qmupl(params, masses.heavy), DecayEnvelope::single(gh), {}};
  ProbSeries light{mass_series_qmupl(params, masses.light), DecayEnvelope::single(gl), {}};
  ProbSeries interf{interference_series_qmupl(params, masses),
                    DecayEnvelope::average(gh, gl), masses.delta()};

  const double sign = target == FlavorTarget::Same ? 1.0 : -1.0;
  const double value =
      0.25 * (heavy.eval(t) + light.eval(t) + sign * 2.0 * interf.eval(t));
  const bool valid = heavy.within_guard(t, kPerturbativeGuard) &&
                     light.within_guard(t, kPerturbativeGuard) &&
                     interf.within_guard(t, kPerturbativeGuard);
  return {value, valid};
}

std::complex<double> zeta(int n, double alpha, double dp) {
  using namespace std::complex_literals;
  const double a = alpha, u = dp;
  switch (n) {
    case 0: return 1.0;
    case 1: return -1i * (a * u);
    case 2: return a * (1.0 - a * u * u);
    case 3: return -1i * (a * a * (3.0 * u - a * u * u * u));
    case 4: return a * a * (3.0 - 6.0 * a * u * u + a * a * u * u * u * u);
  }
  throw std::out_of_range("zeta: n must be in 0..4");
}

double momentum_overlap_closed(MomentumPair pair, double alpha) {
  switch (pair) {
    case MomentumPair::Norm00: return 1.0;
    case MomentumPair::Pair04: return 1.5 * alpha * alpha;
    case MomentumPair::Pair13: return 1.5 * alpha * alpha;
    case MomentumPair::Pair22: return 0.75 * alpha * alpha;
  }
  throw std::logic_error("momentum_overlap_closed: bad enum");
}

double momentum_overlap(MomentumPair pair, double alpha) {
  if (alpha <= 0.0) throw std::domain_error("momentum_overlap: alpha must be > 0");
  const double norm = std::sqrt(alpha * std::numbers::pi) / std::numbers::pi;

  const auto product = [pair, alpha](double u) {
    switch (pair) {
      case MomentumPair::Norm00: return 1.0;
      case MomentumPair::Pair04: return 2.0 * std::real(std::conj(zeta(0, alpha, u)) * zeta(4, alpha, u));
      case MomentumPair::Pair13: return 2.0 * std::real(std::conj(zeta(1, alpha, u)) * zeta(3, alpha, u));
      case MomentumPair::Pair22: return std::norm(zeta(2, alpha, u));
    }
    return 0.0;
  };
  const auto integrand = [&](double u) {
    return norm * std::exp(-alpha * u * u) * product(u);
  };

  // Integrand support is |u| <~ few/sqrt(alpha); 40 sigmas is flat zero.
  const double half_width = 40.0 / std::sqrt(alpha);
  QuadratureOptions opts;
  opts.rel_tol = 1e-10;
  opts.abs_tol = 0.0;
  return integrate(integrand, -half_width, half_width, opts);
}

double gaussian_moment_check(int n, double alpha) {
  switch (n) {
    case 0: return momentum_overlap(MomentumPair::Norm00, alpha);
    case 2: return momentum_overlap(MomentumPair::Pair22, alpha);
    case 4: return momentum_overlap(MomentumPair::Pair04, alpha);
  }
  throw std::out_of_range("gaussian_moment_check: n must be 0, 2 or 4");
}

}  // namespace qmeson
