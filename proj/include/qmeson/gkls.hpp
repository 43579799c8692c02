#pragma once

#include <span>
#include <vector>

#include "qmeson/csl.hpp"
#include "qmeson/flavor_space.hpp"
#include "qmeson/ode.hpp"

namespace qmeson {

/// Generators of the master equation on the surviving (+) decaying block
/// space. The decay operator maps surviving -> decaying with rates
/// decay_* (the total widths); the dephasing operator acts on the surviving
/// block with mass-proportional weights.
struct GklsGenerators {
  Mat2 hamiltonian = Mat2::Zero();  // hermitian, surviving block, (H, L) order
  double decay_heavy = 0.0;         // s^-1
  double decay_light = 0.0;         // s^-1
  double dephasing_rate = 0.0;      // s^-1
  double weight_heavy = 0.0;        // dimensionless coupling
  double weight_light = 0.0;
};

/// Generators matching the collapse-model closed forms: decay rates
/// Gamma_mu + Gamma^CSL_mu, dephasing lambda_csl with the model couplings.
GklsGenerators make_generators(const CslParams& params, const MesonParams& meson,
                               const MassPair& masses);

/// Two-by-two blocks of the 4x4 density matrix, (H, L) ordering inside each
/// block. ss and dd are hermitian; sd is general.
struct BlockDensity {
  Mat2 ss = Mat2::Zero();
  Mat2 sd = Mat2::Zero();
  Mat2 dd = Mat2::Zero();

  Mat4 assemble() const;
  double trace() const { return ss.trace().real() + dd.trace().real(); }
  double min_eigenvalue() const;
};

/// rho_ss = |M0><M0| (equal superposition of the mass eigenstates).
BlockDensity flavor_initial_density();

struct FlavorProbabilities {
  double same = 0.0;
  double conjugate = 0.0;
};
FlavorProbabilities flavor_probabilities(const BlockDensity& rho);

/// Integrates the master equation over an ascending grid starting at 0 and
/// returns the state at every grid point (including t = 0). Aborts with
/// diagnostics on step underflow or a positivity violation below -1e-8.
std::vector<BlockDensity> evolve(const GklsGenerators& gen, const BlockDensity& rho0,
                                 std::span<const double> t_grid,
                                 const OdeOptions& opts = {});

/// Residual of rho_dd(t) = L0 Int_0^t rho_ss L0^dag against the evolved dd
/// block: cumulative trapezoid on the (uniform) grid, Richardson-refined,
/// max elementwise deviation over the refined points.
double check_dd_identity(std::span<const BlockDensity> history,
                         std::span<const double> t_grid, const GklsGenerators& gen);

/// One-step off-diagonal multipliers of the Gaussian-kick channel (exact
/// Gaussian average, sigma^2 = lambda dt) and of the Euler-linearized
/// dephasing dissipator. They agree to O(dt^2).
struct KickStepFactors {
  double kick = 1.0;
  double lindblad_euler = 1.0;
};
KickStepFactors kick_step_factors(double lambda, double weight_delta, double dt);

/// Max elementwise deviation between the kick channel's one-step action on
/// rho0's surviving block and the Euler step of the dephasing dissipator.
double kick_channel_equivalence(const GklsGenerators& gen, const BlockDensity& rho0,
                                double dt);

}  // namespace qmeson
