#pragma once

#include <span>
#include <vector>

#include "qmeson/csl.hpp"
#include "qmeson/meson_data.hpp"

namespace qmeson {

enum class MassScenario { Direct, Inverted };

struct AbsoluteMasses {
  Quantity m_light;  // hbar s^-1
  Quantity m_heavy;  // hbar s^-1
  MassScenario scenario = MassScenario::Inverted;
  bool feasible = false;
  bool degenerate = false;  // Gamma_L == Gamma_H: masses unbounded

  MassPair pair() const { return {m_light.value, m_heavy.value}; }
};

/// Solves R = -+ (m_L^2 - m_H^2)/(m_L^2 + m_H^2), m_H = m_L + dm, with
/// R = (Gamma_L - Gamma_H)/(Gamma_L + Gamma_H). The positive root is picked
/// via the (1-R)-factored closed form, which stays well conditioned for
/// R -> 1 (K mesons). The direct scenario with Gamma_L > Gamma_H has no
/// positive solution and is reported infeasible, never thrown.
AbsoluteMasses solve_masses(const MesonParams& meson, MassScenario scenario);

struct LambdaEstimate {
  double theta0 = 0.0;
  Quantity lambda;  // s^-1
};

/// lambda_est = (dm)^2 / (m0^2 (sqrt(1/Gamma_L) - sqrt(1/Gamma_H))^2 (1 - 2 theta0)).
/// Verifies internally that Gamma_mu m_mu^2 / m0^2 / (1 - 2 theta0) gives the
/// same value for mu = L and mu = H with the inverted-scenario masses.
LambdaEstimate lambda_estimated(const MesonParams& meson, double m0, ThetaZero theta0);

struct Figure1Row {
  Species species = Species::K;
  double theta0 = 0.0;
  double lambda = 0.0;
  double lambda_plus = 0.0;   // lambda + err_plus
  double lambda_minus = 0.0;  // lambda - err_minus
};

/// Deduced collapse rate versus theta0, with first-order error bands
/// propagated from (Gamma_L, Gamma_H, delta_m). Grid values must lie in
/// [0, 1/2); a grid touching 1/2 is rejected.
std::vector<Figure1Row> figure1_data(const MesonDataset& dataset, const M0Choice& m0,
                                     std::span<const double> theta_grid,
                                     bool include_errors = true);

struct Table1Row {
  Species species = Species::K;
  Quantity gamma_light, gamma_heavy, delta_m, m_light, m_heavy;
};

/// Decay rates, mass splitting and reversed-scenario absolute masses for all
/// four species.
std::vector<Table1Row> table1(const MesonDataset& dataset);

}  // namespace qmeson
