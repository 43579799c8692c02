#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmeson/flavor_space.hpp"

namespace qmeson {

enum class SdeScheme { ExactPhase, StratonovichHeun };

/// Flavor-level simulation of the linear random-Hamiltonian evolution. The
/// spatial part of the collapse enters only through lambda_eff (the role of
/// lambda_csl); noise couples in the mass basis with weights m_mu/m0, where
/// it is diagonal. Per-trajectory dephasing has unit modulus, so this
/// realizes the theta0 = 1/2 physics: diagonals never feel the noise.
struct SimConfig {
  double lambda_eff = 0.0;  // s^-1
  double m_light = 0.0, m_heavy = 0.0, m0 = 1.0;  // hbar s^-1
  double gamma_light = 0.0, gamma_heavy = 0.0;    // s^-1
  double dt = 0.0, t_max = 0.0;                   // s
  int n_traj = 0;
  std::uint64_t seed = 0;
  SdeScheme scheme = SdeScheme::ExactPhase;
  int output_stride = 1;

  double delta_m() const { return m_heavy - m_light; }
  double coupling_light() const { return m_light / m0; }
  double coupling_heavy() const { return m_heavy / m0; }
  /// Resolution guard: dt times the fastest rate must stay below 0.05.
  void validate() const;
};

enum class Observable { ProbSame, ProbConjugate, ProbLightToLight, ProbHeavyToHeavy, CoherenceMag };
std::string observable_name(Observable obs);
inline constexpr Observable kAllObservables[] = {
    Observable::ProbSame, Observable::ProbConjugate, Observable::ProbLightToLight,
    Observable::ProbHeavyToHeavy, Observable::CoherenceMag};

struct EnsembleEstimate {
  std::string observable;
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> std_error;
  int n_traj = 0;
  std::uint64_t seed = 0;
};

/// Trajectory integration of the random-Hamiltonian Schroedinger equation.
/// ExactPhase applies the closed-form per-step update (exact in
/// distribution because the generators commute); StratonovichHeun is a
/// predictor-corrector with the same piecewise noise, kept to demonstrate
/// scheme independence. Identical (seed, config) gives identical output
/// bytes at any parallelism level.
std::vector<EnsembleEstimate> run_trajectories(const SimConfig& config,
                                               std::span<const Observable> observables);

/// Discrete Gaussian random-unitary kicks: per step a phase phi ~ N(0,
/// lambda_eff dt) is applied through exp(-i phi G), interleaved with
/// deterministic half-steps. Equivalent in distribution to ExactPhase.
std::vector<EnsembleEstimate> run_kicks(const SimConfig& config,
                                        std::span<const Observable> observables);

/// Ensemble means the trajectories must reproduce (Gaussian characteristic
/// function on the interference term).
double analytic_prob_same(const SimConfig& config, double t);
double analytic_coherence(const SimConfig& config, double t);

struct ConvergenceRow {
  double dt = 0.0;
  double max_err_prob_same = 0.0;
  double max_err_coherence = 0.0;
  double stat_floor_prob_same = 0.0;  // 3x largest standard error
  double stat_floor_coherence = 0.0;
};

/// Ensemble error against the analytic means for each dt in the grid
/// (descending). Every dt must satisfy the resolution guard.
std::vector<ConvergenceRow> convergence_report(const SimConfig& base,
                                               std::span<const double> dt_grid);

}  // namespace qmeson
