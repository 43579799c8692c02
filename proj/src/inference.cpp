#include "qmeson/inference.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qmeson {

namespace {

// m_L as a function of the raw (Gamma_L, Gamma_H, dm) for a fixed scenario.
// u = 1 -+ R and v = 1 +- R are formed directly from the widths so no
// cancellation occurs for R -> 1; k = sqrt(u/v) and m_L = dm k/(1-k), which
// is the (1-R)-factored root of the quadratic.
double mass_light_of(double gamma_l, double gamma_h, double dm, MassScenario scenario) {
  const double sum = gamma_l + gamma_h;
  const double u = scenario == MassScenario::Inverted ? 2.0 * gamma_h / sum
                                                      : 2.0 * gamma_l / sum;
  const double v = scenario == MassScenario::Inverted ? 2.0 * gamma_l / sum
                                                      : 2.0 * gamma_h / sum;
  const double k = std::sqrt(u / v);
  return dm * k / (1.0 - k);
}

}  // namespace

AbsoluteMasses solve_masses(const MesonParams& meson, MassScenario scenario) {
  const double gl = meson.gamma_light.value, gh = meson.gamma_heavy.value;
  const double dm = meson.delta_m.value;
  if (gl <= 0.0 || gh <= 0.0)
    throw std::domain_error("solve_masses: widths must be positive");
  if (dm <= 0.0) throw std::domain_error("solve_masses: delta_m must be positive");

  AbsoluteMasses out;
  out.scenario = scenario;
  if (gl == gh) {
    // R = 0: the constraint degenerates and the masses are unbounded.
    out.feasible = false;
    out.degenerate = true;
    return out;
  }

  const double m_light = mass_light_of(gl, gh, dm, scenario);
  if (!(m_light > 0.0) || !std::isfinite(m_light)) {
    out.feasible = false;
    return out;
  }
  out.feasible = true;

  const std::array<Quantity, 3> in{meson.gamma_light, meson.gamma_heavy, meson.delta_m};
  out.m_light = propagate(
      [scenario](std::span<const double> x) {
        return mass_light_of(x[0], x[1], x[2], scenario);
      },
      in, "hbar s^-1");
  out.m_heavy = propagate(
      [scenario](std::span<const double> x) {
        return mass_light_of(x[0], x[1], x[2], scenario) + x[2];
      },
      in, "hbar s^-1");
  return out;
}

namespace {

double lambda_est_of(double gamma_l, double gamma_h, double dm, double m0,
                     double theta0) {
  const double diff = std::sqrt(1.0 / gamma_l) - std::sqrt(1.0 / gamma_h);
  return dm * dm / (m0 * m0 * diff * diff) / (1.0 - 2.0 * theta0);
}

}  // namespace

LambdaEstimate lambda_estimated(const MesonParams& meson, double m0, ThetaZero theta0) {
  const double gl = meson.gamma_light.value, gh = meson.gamma_heavy.value;
  if (gl <= 0.0 || gh <= 0.0)
    throw std::domain_error("lambda_estimated: widths must be positive");
  if (gl == gh)
    throw std::domain_error("lambda_estimated: widths must be distinct");
  if (theta0.value == 0.5)
    throw std::domain_error("lambda_estimated: undefined at theta0 = 1/2");
  if (m0 <= 0.0) throw std::domain_error("lambda_estimated: m0 must be positive");

  const std::array<Quantity, 3> in{meson.gamma_light, meson.gamma_heavy, meson.delta_m};
  Quantity lambda = propagate(
      [m0, theta0](std::span<const double> x) {
        return lambda_est_of(x[0], x[1], x[2], m0, theta0.value);
      },
      in, "s^-1");

  // Defining identity: the same rate must follow from either eigenstate's
  // width with the reversed-scenario masses.
  const AbsoluteMasses masses = solve_masses(meson, MassScenario::Inverted);
  if (masses.feasible) {
    const double one_minus_2theta = 1.0 - 2.0 * theta0.value;
    const double from_light =
        gl * masses.m_light.value * masses.m_light.value / (m0 * m0) / one_minus_2theta;
    const double from_heavy =
        gh * masses.m_heavy.value * masses.m_heavy.value / (m0 * m0) / one_minus_2theta;
    const double scale = std::abs(lambda.value);
    if (std::abs(from_light - lambda.value) > 1e-9 * scale ||
        std::abs(from_heavy - lambda.value) > 1e-9 * scale)
      throw std::logic_error("lambda_estimated: eigenstate identity violated");
  }
  return {theta0.value, lambda};
}

std::vector<Figure1Row> figure1_data(const MesonDataset& dataset, const M0Choice& m0,
                                     std::span<const double> theta_grid,
                                     bool include_errors) {
  for (double th : theta_grid)
    if (!(th >= 0.0 && th < 0.5))
      throw std::domain_error("figure1_data: theta0 grid must lie in [0, 1/2)");

  std::vector<Figure1Row> rows;
  rows.reserve(theta_grid.size() * 4);
  for (Species s : kAllSpecies) {
    const MesonParams& meson = dataset.of(s);
    const double m0_value = m0.resolve(meson);
    for (double th : theta_grid) {
      const LambdaEstimate est = lambda_estimated(meson, m0_value, ThetaZero(th));
      Figure1Row row;
      row.species = s;
      row.theta0 = th;
      row.lambda = est.lambda.value;
      row.lambda_plus =
          include_errors ? est.lambda.value + est.lambda.err_plus() : est.lambda.value;
      row.lambda_minus =
          include_errors ? est.lambda.value - est.lambda.err_minus() : est.lambda.value;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<Table1Row> table1(const MesonDataset& dataset) {
  std::vector<Table1Row> rows;
  rows.reserve(4);
  for (Species s : kAllSpecies) {
    const MesonParams& meson = dataset.of(s);
    const AbsoluteMasses masses = solve_masses(meson, MassScenario::Inverted);
    if (!masses.feasible)
      throw std::runtime_error("table1: no positive masses for " + species_name(s));
    rows.push_back({s, meson.gamma_light, meson.gamma_heavy, meson.delta_m,
                    masses.m_light, masses.m_heavy});
  }
  return rows;
}

}  // namespace qmeson
