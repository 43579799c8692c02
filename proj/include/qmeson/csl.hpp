#pragma once

#include <optional>
#include <string>

#include "qmeson/correlators.hpp"
#include "qmeson/flavor_space.hpp"
#include "qmeson/meson_data.hpp"
#include "qmeson/prob_series.hpp"

namespace qmeson {

namespace presets {
/// Proposed collapse rates, s^-1.
inline constexpr double kAdlerLambda = 1e-8;
inline constexpr double kGrwLambda = 1e-16;
/// Adler's rate carries a +-2 decade band.
inline constexpr double kAdlerBandLow = 1e-10;
inline constexpr double kAdlerBandHigh = 1e-6;
inline constexpr double kNucleonMassMev = 939.565;
inline constexpr double kNucleonMass = kNucleonMassMev * kMevOverHbar;  // hbar s^-1
}  // namespace presets

/// Reference-mass choice; always explicit, never defaulted silently.
struct M0Choice {
  enum class Kind { Nucleon, RestMass, Custom };
  Kind kind = Kind::Nucleon;
  double custom_value = 0.0;  // hbar s^-1

  double resolve(const MesonParams& meson) const;
  std::string describe() const;
  /// Accepts "nucleon", "rest", or a numeric value in hbar s^-1.
  static M0Choice parse(const std::string& text);
};

/// Mass-proportional CSL parameters. All observables depend on space only
/// through lambda_csl = gamma / (sqrt(4 pi) r_C)^dim.
struct CslParams {
  double lambda_csl = 0.0;  // s^-1
  std::optional<double> gamma_strength;  // m^dim s^-1
  std::optional<double> r_c;             // m
  int dim = 3;
  double m0 = presets::kNucleonMass;  // hbar s^-1
  ThetaZero theta0;
  bool inverted_ratio = false;  // couple as m0/m_mu instead of m_mu/m0

  CslParams(double lambda_csl, double m0, ThetaZero theta0, bool inverted_ratio = false,
            int dim = 3, std::optional<double> gamma_strength = {},
            std::optional<double> r_c = {});
};

/// Noise couplings of the two eigenstates: m_mu/m0, or m0/m_mu when
/// inverted_ratio is set.
struct Couplings {
  double light = 0.0;
  double heavy = 0.0;
  double delta() const { return heavy - light; }
};
Couplings csl_couplings(const CslParams& params, const MassPair& masses);

struct CslRates {
  double gamma_csl_light = 0.0;   // s^-1, sign follows (1 - 2 theta0)
  double gamma_csl_heavy = 0.0;   // s^-1
  double interference_damping = 0.0;  // s^-1, >= 0, independent of theta0
  double of(Eigenstate e) const {
    return e == Eigenstate::Light ? gamma_csl_light : gamma_csl_heavy;
  }
};

/// Gamma^CSL_mu = lambda_csl * g_mu^2 * (1 - 2 theta0);
/// interference damping = lambda_csl * (g_H - g_L)^2 / 2.
CslRates csl_rates(const CslParams& params, const MesonParams& meson,
                   const MassPair& masses);

enum class ProbForm { Series, Exponential };

/// Mass-eigenstate transition probability; series form is the second-order
/// polynomial times the decay envelope, exponential form assumes the higher
/// orders exponentiate. Off-diagonal channels are exactly zero.
double prob_mass_csl(const CslParams& params, const MesonParams& meson,
                     const MassPair& masses, Eigenstate from, Eigenstate to, double t,
                     ProbForm form);

/// Flavor transition probability with decay.
double prob_flavor_csl(const CslParams& params, const MesonParams& meson,
                       const MassPair& masses, FlavorTarget target, double t,
                       ProbForm form);

/// A(t) = cos(dm t) / cosh((Gamma_tot_L - Gamma_tot_H) t / 2) * exp(-damping t).
/// Equals (P_same - P_conj)/(P_same + P_conj) of the exponential form.
double asymmetry(const CslParams& params, const MesonParams& meson,
                 const MassPair& masses, double t);

/// Degree-2 Taylor coefficients (in t) of the flavor probability in either
/// form; used to check that exponentiation only resums the printed series.
Series2 flavor_prob_taylor(const CslParams& params, const MesonParams& meson,
                           const MassPair& masses, FlavorTarget target, ProbForm form);

/// The reversed-mass-ratio interference damping, evaluated along three
/// algebraically equivalent routes. `via_lambda_ratio` divides by
/// (1 - 2 theta0) twice and is undefined at theta0 = 1/2.
struct InvertedDamping {
  double via_masses = 0.0;        // (1/2) lambda dm^2 m0^2 / (m_H^2 m_L^2)
  double via_widths = 0.0;        // (1/2) lambda (m0/dm)^2 G_H G_L (1/sqrt(G_L)-1/sqrt(G_H))^4
  double via_lambda_ratio = 0.0;  // (1/2)(lambda/lambda_est)(1/(1-2theta0))(sqrt(G_L)-sqrt(G_H))^2
  bool lambda_ratio_defined = true;
  double value() const { return via_masses; }
};
InvertedDamping inverted_interference_factor(const CslParams& params,
                                             const MesonParams& meson);

/// cos/cosh evaluated without overflow for large arguments.
double sech(double x);

}  // namespace qmeson
