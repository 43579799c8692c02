#include "qmeson/csl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmeson {

double M0Choice::resolve(const MesonParams& meson) const {
  switch (kind) {
    case Kind::Nucleon: return presets::kNucleonMass;
    case Kind::RestMass: return meson.rest_mass.value;
    case Kind::Custom: return custom_value;
  }
  throw std::logic_error("M0Choice: bad enum");
}

std::string M0Choice::describe() const {
  switch (kind) {
    case Kind::Nucleon: return "nucleon";
    case Kind::RestMass: return "rest";
    case Kind::Custom: return std::to_string(custom_value);
  }
  throw std::logic_error("M0Choice: bad enum");
}

M0Choice M0Choice::parse(const std::string& text) {
  if (text == "nucleon") return {Kind::Nucleon, 0.0};
  if (text == "rest") return {Kind::RestMass, 0.0};
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size() || v <= 0.0) throw std::invalid_argument(text);
    return {Kind::Custom, v};
  } catch (const std::exception&) {
    throw std::invalid_argument("m0 must be 'nucleon', 'rest' or a positive value, got '" +
                                text + "'");
  }
}

CslParams::CslParams(double lambda_csl_, double m0_, ThetaZero theta0_,
                     bool inverted_ratio_, int dim_, std::optional<double> gamma_,
                     std::optional<double> r_c_)
    : lambda_csl(lambda_csl_),
      gamma_strength(gamma_),
      r_c(r_c_),
      dim(dim_),
      m0(m0_),
      theta0(theta0_),
      inverted_ratio(inverted_ratio_) {
  if (lambda_csl < 0.0) throw std::domain_error("csl: lambda_csl must be >= 0");
  if (m0 <= 0.0) throw std::domain_error("csl: m0 must be > 0");
  if (dim < 1 || dim > 3) throw std::domain_error("csl: dim must be 1, 2 or 3");
  if (gamma_strength.has_value() != r_c.has_value())
    throw std::invalid_argument("csl: gamma_strength and r_c must be given together");
  if (gamma_strength) {
    if (*r_c <= 0.0) throw std::domain_error("csl: r_c must be > 0");
    const double expected =
        *gamma_strength / std::pow(std::sqrt(4.0 * std::numbers::pi) * *r_c, dim);
    if (std::abs(expected - lambda_csl) > 1e-12 * std::abs(expected))
      throw std::invalid_argument(
          "csl: lambda_csl inconsistent with gamma/(sqrt(4 pi) r_C)^d");
  }
}

Couplings csl_couplings(const CslParams& params, const MassPair& masses) {
  if (masses.light <= 0.0 || masses.heavy <= 0.0)
    throw std::domain_error("csl: masses must be > 0");
  if (params.inverted_ratio)
    return {params.m0 / masses.light, params.m0 / masses.heavy};
  return {masses.light / params.m0, masses.heavy / params.m0};
}

CslRates csl_rates(const CslParams& params, const MesonParams& meson,
                   const MassPair& masses) {
  (void)meson;
  const Couplings g = csl_couplings(params, masses);
  const double one_minus_2theta = 1.0 - 2.0 * params.theta0.value;
  const double dg = g.delta();
  return {params.lambda_csl * g.light * g.light * one_minus_2theta,
          params.lambda_csl * g.heavy * g.heavy * one_minus_2theta,
          0.5 * params.lambda_csl * dg * dg};
}

double sech(double x) {
  const double ax = std::abs(x);
  const double e = std::exp(-ax);
  return 2.0 * e / (1.0 + e * e);
}

double prob_mass_csl(const CslParams& params, const MesonParams& meson,
                     const MassPair& masses, Eigenstate from, Eigenstate to, double t,
                     ProbForm form) {
  if (t < 0.0) throw std::domain_error("prob_mass_csl: t must be >= 0");
  if (from != to) return 0.0;
  const CslRates rates = csl_rates(params, meson, masses);
  const double gamma =
      (from == Eigenstate::Light ? meson.gamma_light : meson.gamma_heavy).value;
  const double gamma_csl = rates.of(from);
  if (form == ProbForm::Exponential) return std::exp(-(gamma + gamma_csl) * t);
  ProbSeries channel{collapse_series(gamma_csl, 1.0), DecayEnvelope::single(gamma), {}};
  return channel.eval(t);
}

namespace {

/// First-order interference rate lambda [ (g_H^2 + g_L^2)(1-theta0) - g_H g_L ].
double interference_rate(const CslParams& params, const Couplings& g) {
  const double a = 1.0 - params.theta0.value;
  return params.lambda_csl * ((g.heavy * g.heavy + g.light * g.light) * a -
                              g.heavy * g.light);
}

/// Printed second-order interference bracket; algebraically equal to the
/// square of the first-order rate.
double interference_second_order(const CslParams& params, const Couplings& g) {
  const double a = 1.0 - params.theta0.value;
  const double h2 = g.heavy * g.heavy, l2 = g.light * g.light;
  const double l = params.lambda_csl;
  return l * l *
         ((h2 * h2 + l2 * l2) * a * a -
          2.0 * g.heavy * g.light * (h2 + l2) * a +
          2.0 * h2 * l2 * (a * a + 0.5));
}

Series2 interference_series(const CslParams& params, const Couplings& g) {
  return {1.0, -interference_rate(params, g), 0.5 * interference_second_order(params, g)};
}

}  // namespace

double prob_flavor_csl(const CslParams& params, const MesonParams& meson,
                       const MassPair& masses, FlavorTarget target, double t,
                       ProbForm form) {
  if (t < 0.0) throw std::domain_error("prob_flavor_csl: t must be >= 0");
  const CslRates rates = csl_rates(params, meson, masses);
  const Couplings g = csl_couplings(params, masses);
  const double gl = meson.gamma_light.value, gh = meson.gamma_heavy.value;
  const double sign = target == FlavorTarget::Same ? 1.0 : -1.0;
  const double dm = masses.delta();

  if (form == ProbForm::Exponential) {
    const double tot_l = gl + rates.gamma_csl_light;
    const double tot_h = gh + rates.gamma_csl_heavy;
    const double envelope = 0.25 * (std::exp(-tot_l * t) + std::exp(-tot_h * t));
    const double ratio = std::cos(dm * t) * sech(0.5 * (tot_l - tot_h) * t) *
                         std::exp(-rates.interference_damping * t);
    return envelope * (1.0 + sign * ratio);
  }

  ProbSeries heavy{collapse_series(rates.gamma_csl_heavy, 1.0),
                   DecayEnvelope::single(gh), {}};
  ProbSeries light{collapse_series(rates.gamma_csl_light, 1.0),
                   DecayEnvelope::single(gl), {}};
  ProbSeries interf{interference_series(params, g), DecayEnvelope::average(gh, gl), dm};
  return 0.25 * (heavy.eval(t) + light.eval(t) + sign * 2.0 * interf.eval(t));
}

double asymmetry(const CslParams& params, const MesonParams& meson,
                 const MassPair& masses, double t) {
  if (t < 0.0) throw std::domain_error("asymmetry: t must be >= 0");
  const CslRates rates = csl_rates(params, meson, masses);
  const double tot_l = meson.gamma_light.value + rates.gamma_csl_light;
  const double tot_h = meson.gamma_heavy.value + rates.gamma_csl_heavy;
  return std::cos(masses.delta() * t) * sech(0.5 * (tot_l - tot_h) * t) *
         std::exp(-rates.interference_damping * t);
}

Series2 flavor_prob_taylor(const CslParams& params, const MesonParams& meson,
                           const MassPair& masses, FlavorTarget target, ProbForm form) {
  const CslRates rates = csl_rates(params, meson, masses);
  const Couplings g = csl_couplings(params, masses);
  const double gl = meson.gamma_light.value, gh = meson.gamma_heavy.value;
  const double sign = target == FlavorTarget::Same ? 1.0 : -1.0;
  const double dm = masses.delta();

  if (form == ProbForm::Exponential) {
    const Series2 diag = exp_decay_series(gl + rates.gamma_csl_light) +
                         exp_decay_series(gh + rates.gamma_csl_heavy);
    const double interf_rate = 0.5 * (gl + gh) +
                               0.5 * (rates.gamma_csl_light + rates.gamma_csl_heavy) +
                               rates.interference_damping;
    const Series2 interf = cos_series(dm) * exp_decay_series(interf_rate);
    return 0.25 * diag + sign * 0.5 * interf;
  }

  const Series2 diag =
      exp_decay_series(gl) * collapse_series(rates.gamma_csl_light, 1.0) +
      exp_decay_series(gh) * collapse_series(rates.gamma_csl_heavy, 1.0);
  const Series2 interf = interference_series(params, g) * cos_series(dm) *
                         exp_decay_series(0.5 * (gl + gh));
  return 0.25 * diag + sign * 0.5 * interf;
}

InvertedDamping inverted_interference_factor(const CslParams& params,
                                             const MesonParams& meson) {
  const double gl = meson.gamma_light.value, gh = meson.gamma_heavy.value;
  const double dm = meson.delta_m.value;
  if (gl <= 0.0 || gh <= 0.0)
    throw std::domain_error("inverted_interference_factor: widths must be positive");

  InvertedDamping out;

  // Route 1: through the absolute masses of the reversed scenario,
  // m_L = dm sqrt(G_H) / (sqrt(G_L) - sqrt(G_H)).
  const double sl = std::sqrt(gl), sh = std::sqrt(gh);
  if (sl != sh) {
    const double m_light = dm * sh / (sl - sh);
    const double m_heavy = m_light + dm;
    out.via_masses = 0.5 * params.lambda_csl * dm * dm * params.m0 * params.m0 /
                     (m_heavy * m_heavy * m_light * m_light);
  }

  // Route 2: widths only.
  const double inv_diff = std::sqrt(1.0 / gl) - std::sqrt(1.0 / gh);
  out.via_widths = 0.5 * params.lambda_csl * (params.m0 / dm) * (params.m0 / dm) * gl *
                   gh * inv_diff * inv_diff * inv_diff * inv_diff;
  if (sl == sh) out.via_masses = out.via_widths;  // both are exactly 0

  // Route 3: through the deduced collapse rate; has a pole at theta0 = 1/2.
  const double one_minus_2theta = 1.0 - 2.0 * params.theta0.value;
  if (one_minus_2theta == 0.0 || inv_diff == 0.0) {
    out.lambda_ratio_defined = false;
    out.via_lambda_ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double lambda_est =
        dm * dm / (params.m0 * params.m0 * inv_diff * inv_diff) / one_minus_2theta;
    out.via_lambda_ratio = 0.5 * (params.lambda_csl / lambda_est) /
                           one_minus_2theta * (sl - sh) * (sl - sh);
  }
  return out;
}

}  // namespace qmeson
