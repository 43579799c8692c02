#include "qmeson/gkls.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qmeson {

GklsGenerators make_generators(const CslParams& params, const MesonParams& meson,
                               const MassPair& masses) {
  const CslRates rates = csl_rates(params, meson, masses);
  const Couplings g = csl_couplings(params, masses);
  GklsGenerators gen;
  gen.hamiltonian = Mat2::Zero();
  gen.hamiltonian(kHeavy, kHeavy) = masses.heavy;
  gen.hamiltonian(kLight, kLight) = masses.light;
  gen.decay_heavy = meson.gamma_heavy.value + rates.gamma_csl_heavy;
  gen.decay_light = meson.gamma_light.value + rates.gamma_csl_light;
  gen.dephasing_rate = params.lambda_csl;
  gen.weight_heavy = g.heavy;
  gen.weight_light = g.light;
  if (gen.decay_heavy < 0.0 || gen.decay_light < 0.0)
    throw std::domain_error("gkls: total decay rates must be >= 0");
  return gen;
}

Mat4 BlockDensity::assemble() const {
  Mat4 rho = Mat4::Zero();
  rho.topLeftCorner<2, 2>() = ss;
  rho.topRightCorner<2, 2>() = sd;
  rho.bottomLeftCorner<2, 2>() = sd.adjoint();
  rho.bottomRightCorner<2, 2>() = dd;
  return rho;
}

double BlockDensity::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat4> solver(assemble());
  return solver.eigenvalues().minCoeff();
}

BlockDensity flavor_initial_density() {
  BlockDensity rho;
  rho.ss << 0.5, 0.5, 0.5, 0.5;
  return rho;
}

FlavorProbabilities flavor_probabilities(const BlockDensity& rho) {
  const Vec2 same = to_mass_basis(Vec2(1.0, 0.0));
  const Vec2 conj = to_mass_basis(Vec2(0.0, 1.0));
  return {std::real((same.adjoint() * rho.ss * same)(0)),
          std::real((conj.adjoint() * rho.ss * conj)(0))};
}

namespace {

using State16 = Eigen::Matrix<double, 16, 1>;

State16 pack(const BlockDensity& rho) {
  State16 y;
  y[0] = rho.ss(0, 0).real();
  y[1] = rho.ss(1, 1).real();
  y[2] = rho.ss(0, 1).real();
  y[3] = rho.ss(0, 1).imag();
  y[4] = rho.dd(0, 0).real();
  y[5] = rho.dd(1, 1).real();
  y[6] = rho.dd(0, 1).real();
  y[7] = rho.dd(0, 1).imag();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      y[8 + 2 * (2 * i + j)] = rho.sd(i, j).real();
      y[9 + 2 * (2 * i + j)] = rho.sd(i, j).imag();
    }
  return y;
}

BlockDensity unpack(const State16& y) {
  BlockDensity rho;
  rho.ss(0, 0) = y[0];
  rho.ss(1, 1) = y[1];
  rho.ss(0, 1) = Complex(y[2], y[3]);
  rho.ss(1, 0) = std::conj(rho.ss(0, 1));  // hermitian mirror
  rho.dd(0, 0) = y[4];
  rho.dd(1, 1) = y[5];
  rho.dd(0, 1) = Complex(y[6], y[7]);
  rho.dd(1, 0) = std::conj(rho.dd(0, 1));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      rho.sd(i, j) = Complex(y[8 + 2 * (2 * i + j)], y[9 + 2 * (2 * i + j)]);
  return rho;
}

struct Rhs {
  const GklsGenerators& gen;
  double time_scale;  // dynamics integrated in units of 1/time_scale

  State16 operator()(double, const State16& y) const {
    const BlockDensity rho = unpack(y);
    const Complex i1(0.0, 1.0);

    Mat2 decay = Mat2::Zero();  // L0^dag L0 = diag of total rates
    decay(kHeavy, kHeavy) = gen.decay_heavy;
    decay(kLight, kLight) = gen.decay_light;
    Mat2 g = Mat2::Zero();
    g(kHeavy, kHeavy) = gen.weight_heavy;
    g(kLight, kLight) = gen.weight_light;
    const Mat2 g2 = g * g;
    const double lam = gen.dephasing_rate;
    const Mat2& h = gen.hamiltonian;

    BlockDensity d;
    d.ss = -i1 * (h * rho.ss - rho.ss * h) -
           0.5 * (decay * rho.ss + rho.ss * decay) -
           0.5 * lam * (g2 * rho.ss + rho.ss * g2) + lam * g * rho.ss * g;
    d.sd = -i1 * (h * rho.sd) - 0.5 * decay * rho.sd - 0.5 * lam * g2 * rho.sd;
    // dd is fed through L0 rho_ss L0^dag; nothing acts on dd itself.
    d.dd = Mat2::Zero();
    d.dd(0, 0) = gen.decay_heavy * rho.ss(0, 0);
    d.dd(1, 1) = gen.decay_light * rho.ss(1, 1);
    d.dd(0, 1) = std::sqrt(gen.decay_heavy * gen.decay_light) * rho.ss(0, 1);
    d.dd(1, 0) = std::conj(d.dd(0, 1));

    return pack(d) / time_scale;
  }
};

double dynamics_scale(const GklsGenerators& gen) {
  double s = gen.decay_light;
  s = std::max(s, gen.decay_heavy);
  s = std::max(s, std::abs(gen.hamiltonian(kHeavy, kHeavy).real() -
                           gen.hamiltonian(kLight, kLight).real()));
  const double w = std::max(std::abs(gen.weight_heavy), std::abs(gen.weight_light));
  s = std::max(s, gen.dephasing_rate * w * w);
  return s > 0.0 ? s : 1.0;
}

}  // namespace

std::vector<BlockDensity> evolve(const GklsGenerators& gen, const BlockDensity& rho0,
                                 std::span<const double> t_grid,
                                 const OdeOptions& opts) {
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw std::invalid_argument("evolve: grid must start at t = 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("evolve: grid must be ascending");

  const double scale = dynamics_scale(gen);
  const Rhs rhs{gen, scale};

  std::vector<BlockDensity> history;
  history.reserve(t_grid.size());
  history.push_back(rho0);

  State16 y = pack(rho0);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    integrate_to(rhs, y, t_grid[i - 1] * scale, t_grid[i] * scale, opts);
    BlockDensity rho = unpack(y);
    const double min_eig = rho.min_eigenvalue();
    if (min_eig < -1e-8) {
      std::ostringstream msg;
      msg << "evolve: positivity violated at t = " << t_grid[i]
          << " (min eigenvalue " << min_eig << ")";
      throw std::runtime_error(msg.str());
    }
    history.push_back(rho);
  }
  return history;
}

double check_dd_identity(std::span<const BlockDensity> history,
                         std::span<const double> t_grid, const GklsGenerators& gen) {
  if (history.size() != t_grid.size() || history.size() < 3)
    throw std::invalid_argument("check_dd_identity: need a matching grid, >= 3 points");
  const double h = t_grid[1] - t_grid[0];
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (std::abs(t_grid[i] - t_grid[i - 1] - h) > 1e-9 * h)
      throw std::invalid_argument("check_dd_identity: grid must be uniform");

  Mat2 l0 = Mat2::Zero();
  l0(kHeavy, kHeavy) = std::sqrt(gen.decay_heavy);
  l0(kLight, kLight) = std::sqrt(gen.decay_light);

  // Cumulative trapezoid at spacing h and 2h; Richardson combination is
  // O(h^4)-accurate at the even grid points.
  std::vector<Mat2> fine(history.size(), Mat2::Zero());
  for (std::size_t i = 1; i < history.size(); ++i)
    fine[i] = fine[i - 1] + 0.5 * h * (history[i - 1].ss + history[i].ss);

  double max_residual = 0.0;
  Mat2 coarse = Mat2::Zero();
  for (std::size_t i = 0; i < history.size(); i += 2) {
    if (i >= 2)
      coarse += h * (history[i - 2].ss + history[i].ss);
    const Mat2 integral = (4.0 * fine[i] - coarse) / 3.0;
    const Mat2 residual = l0 * integral * l0.adjoint() - history[i].dd;
    max_residual = std::max(max_residual, residual.cwiseAbs().maxCoeff());
  }
  return max_residual;
}

KickStepFactors kick_step_factors(double lambda, double weight_delta, double dt) {
  const double x = 0.5 * lambda * dt * weight_delta * weight_delta;
  return {std::exp(-x), 1.0 - x};
}

double kick_channel_equivalence(const GklsGenerators& gen, const BlockDensity& rho0,
                                double dt) {
  const double dg = gen.weight_heavy - gen.weight_light;
  const auto [kick, euler] = kick_step_factors(gen.dephasing_rate, dg, dt);

  // Both channels leave the diagonal invariant, so the deviation lives
  // entirely on the off-diagonal of the surviving block.
  Mat2 after_kick = rho0.ss;
  after_kick(0, 1) *= kick;
  after_kick(1, 0) *= kick;
  Mat2 after_euler = rho0.ss;
  after_euler(0, 1) *= euler;
  after_euler(1, 0) *= euler;
  return (after_kick - after_euler).cwiseAbs().maxCoeff();
}

}  // namespace qmeson
