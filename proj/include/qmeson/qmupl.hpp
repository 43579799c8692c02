#pragma once

#include <complex>

#include "qmeson/correlators.hpp"
#include "qmeson/flavor_space.hpp"
#include "qmeson/meson_data.hpp"
#include "qmeson/prob_series.hpp"

namespace qmeson {

/// Position-localization collapse with strength lambda and initial Gaussian
/// wave-packet width sqrt(alpha). Only the product alpha*lambda enters any
/// observable; both factors are kept for interface clarity.
struct QmuplParams {
  double lambda = 0.0;  // collapse strength, >= 0
  double alpha = 1.0;   // wave-packet width^2, > 0
  double m0 = 1.0;      // reference mass, hbar s^-1
  ThetaZero theta0;
  int dim = 3;  // spatial dimension; all probabilities are independent of it

  QmuplParams(double lambda, double alpha, double m0, ThetaZero theta0, int dim = 3);
  double alpha_lambda() const { return alpha * lambda; }
};

/// Effective localization rate (alpha*lambda/2)(m_mu/m0)^2 (1 - 2 theta0).
/// Negative for theta0 > 1/2; callers must not clamp.
double lambda_qmupl(const QmuplParams& params, double m_mu);

/// Value plus perturbative-validity flag. The truncated series is asymptotic
/// in t; the flag trips when |rate * t| > 0.1 for any rate entering the
/// result.
struct Flagged {
  double value = 0.0;
  bool within_validity = true;
};

inline constexpr double kPerturbativeGuard = 0.1;

/// Diagonal series 1 - L t + (3/2) L^2 t^2 (no decay).
Series2 mass_series_qmupl(const QmuplParams& params, double m_mu);

/// First-order interference damping rate
/// (alpha lambda / 2 m0^2) [ (m_H^2 + m_L^2)(1 - theta0) - m_H m_L ].
double interference_rate_qmupl(const QmuplParams& params, const MassPair& masses);

/// Interference bracket 1 - b t + (3/2) b^2 t^2.
Series2 interference_series_qmupl(const QmuplParams& params, const MassPair& masses);

/// Mass-eigenstate transition probability with decay. Off-diagonal channels
/// are exactly zero (mass eigenstates do not oscillate).
Flagged prob_mass_qmupl(const QmuplParams& params, const MesonParams& meson,
                        const MassPair& masses, Eigenstate from, Eigenstate to,
                        double t);

/// Flavor transition probability with decay, to second order in time.
Flagged prob_flavor_qmupl(const QmuplParams& params, const MesonParams& meson,
                          const MassPair& masses, FlavorTarget target, double t);

/// Gaussian matrix elements: <p_f| q^n |p_i, alpha> =
/// sqrt(2 sqrt(alpha pi)) exp(-alpha dp^2 / 2) zeta(n), dp = p_f - p_i.
std::complex<double> zeta(int n, double alpha, double dp);

/// Momentum integrals of paired transition amplitudes,
/// (1/2pi) Int dp_f <..n..>* <..m..> (+ c.c. for n != m).
/// Closed forms: Norm00 -> 1, Pair04 -> 3 a^2/2, Pair13 -> 3 a^2/2,
/// Pair22 -> 3 a^2/4. The quadrature route is the derivation oracle.
enum class MomentumPair { Norm00, Pair04, Pair13, Pair22 };
double momentum_overlap(MomentumPair pair, double alpha);
double momentum_overlap_closed(MomentumPair pair, double alpha);

/// Quadrature check of the Gaussian moments behind the second-order factor 3.
/// n = 0 -> Norm00 (expected 1), n = 2 -> Pair22 (expected 3 alpha^2/4),
/// n = 4 -> Pair04 (expected 3 alpha^2/2).
double gaussian_moment_check(int n, double alpha);

}  // namespace qmeson
