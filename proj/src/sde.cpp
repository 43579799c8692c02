#include "qmeson/sde.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "qmeson/rng.hpp"

namespace qmeson {

void SimConfig::validate() const {
  if (dt <= 0.0 || t_max < dt) throw std::invalid_argument("sim: need 0 < dt <= t_max");
  if (n_traj < 1) throw std::invalid_argument("sim: n_traj must be >= 1");
  if (m0 <= 0.0) throw std::invalid_argument("sim: m0 must be > 0");
  if (lambda_eff < 0.0) throw std::invalid_argument("sim: lambda_eff must be >= 0");
  if (gamma_light < 0.0 || gamma_heavy < 0.0)
    throw std::invalid_argument("sim: decay rates must be >= 0");
  if (output_stride < 1) throw std::invalid_argument("sim: output_stride must be >= 1");

  const double gl = coupling_light(), gh = coupling_heavy();
  double fastest = std::abs(delta_m());
  fastest = std::max({fastest, gamma_light, gamma_heavy, lambda_eff * gl * gl,
                      lambda_eff * gh * gh});
  if (dt * fastest >= 0.05) {
    std::ostringstream msg;
    msg << "sim: dt = " << dt << " does not resolve the fastest rate " << fastest
        << " (need dt * rate < 0.05)";
    throw std::invalid_argument(msg.str());
  }
}

std::string observable_name(Observable obs) {
  switch (obs) {
    case Observable::ProbSame: return "P_same";
    case Observable::ProbConjugate: return "P_conj";
    case Observable::ProbLightToLight: return "P_LL";
    case Observable::ProbHeavyToHeavy: return "P_HH";
    case Observable::CoherenceMag: return "coherence_mag";
  }
  throw std::logic_error("observable_name: bad enum");
}

double analytic_prob_same(const SimConfig& config, double t) {
  const double dg = config.coupling_heavy() - config.coupling_light();
  const double damping = 0.5 * config.lambda_eff * dg * dg;
  return 0.25 * (std::exp(-config.gamma_heavy * t) + std::exp(-config.gamma_light * t)) +
         0.5 * std::cos(config.delta_m() * t) *
             std::exp(-0.5 * (config.gamma_heavy + config.gamma_light) * t) *
             std::exp(-damping * t);
}

double analytic_coherence(const SimConfig& config, double t) {
  const double dg = config.coupling_heavy() - config.coupling_light();
  const double damping = 0.5 * config.lambda_eff * dg * dg;
  return 0.5 * std::exp(-0.5 * (config.gamma_heavy + config.gamma_light) * t) *
         std::exp(-damping * t);
}

namespace {

// Welford accumulators per recorded time: four real observables plus the
// complex coherence (with covariance, for the error of |mean|).
struct PointAccum {
  long n = 0;
  double mean[4] = {0, 0, 0, 0};
  double m2[4] = {0, 0, 0, 0};
  double mean_re = 0, mean_im = 0;
  double m2_re = 0, m2_im = 0, co_reim = 0;

  void add(const double obs[4], Complex coh) {
    ++n;
    for (int k = 0; k < 4; ++k) {
      const double d = obs[k] - mean[k];
      mean[k] += d / n;
      m2[k] += d * (obs[k] - mean[k]);
    }
    const double dre = coh.real() - mean_re;
    const double dim = coh.imag() - mean_im;
    mean_re += dre / n;
    mean_im += dim / n;
    m2_re += dre * (coh.real() - mean_re);
    m2_im += dim * (coh.imag() - mean_im);
    co_reim += dre * (coh.imag() - mean_im);
  }

  // Chan's pairwise-merge formulas keep the reduction associative and
  // deterministic for a fixed block order.
  void merge(const PointAccum& o) {
    if (o.n == 0) return;
    if (n == 0) { *this = o; return; }
    const long total = n + o.n;
    const double f = static_cast<double>(n) * o.n / total;
    for (int k = 0; k < 4; ++k) {
      const double d = o.mean[k] - mean[k];
      mean[k] += d * o.n / total;
      m2[k] += o.m2[k] + d * d * f;
    }
    const double dre = o.mean_re - mean_re;
    const double dim = o.mean_im - mean_im;
    mean_re += dre * o.n / total;
    mean_im += dim * o.n / total;
    m2_re += o.m2_re + dre * dre * f;
    m2_im += o.m2_im + dim * dim * f;
    co_reim += o.co_reim + dre * dim * f;
    n = total;
  }
};

struct Kernel {
  const SimConfig& config;
  bool kicks;
  int n_steps;
  int n_rec;

  void observe(const Complex& g_h, const Complex& g_l, double obs[4],
               Complex& coh) const {
    obs[0] = 0.25 * std::norm(g_h + g_l);  // P_same
    obs[1] = 0.25 * std::norm(g_h - g_l);  // P_conj
    obs[2] = std::norm(g_l);               // P_LL
    obs[3] = std::norm(g_h);               // P_HH
    coh = 0.5 * g_h * std::conj(g_l);
  }

  void run_trajectory(std::uint64_t traj, std::vector<PointAccum>& acc) const {
    const double dt = config.dt;
    const double sqrt_dt = std::sqrt(dt);
    const double a_h = std::sqrt(config.lambda_eff) * config.coupling_heavy();
    const double a_l = std::sqrt(config.lambda_eff) * config.coupling_light();
    const Complex gen_h(-0.5 * config.gamma_heavy, -config.m_heavy);
    const Complex gen_l(-0.5 * config.gamma_light, -config.m_light);
    const Complex det_h = std::exp(gen_h * dt);
    const Complex det_l = std::exp(gen_l * dt);
    const double sigma = std::sqrt(config.lambda_eff * dt);  // kick width

    Complex g_h = 1.0, g_l = 1.0;
    double obs[4];
    Complex coh;
    observe(g_h, g_l, obs, coh);
    acc[0].add(obs, coh);

    int rec = 1;
    for (int step = 0; step < n_steps; ++step) {
      if (kicks) {
        const double phi = sigma * CounterRng(config.seed, traj, step + 1).next_normal();
        const Complex half_h = std::exp(gen_h * (0.5 * dt));
        const Complex half_l = std::exp(gen_l * (0.5 * dt));
        g_h *= half_h * std::polar(1.0, -phi * config.coupling_heavy()) * half_h;
        g_l *= half_l * std::polar(1.0, -phi * config.coupling_light()) * half_l;
      } else if (config.scheme == SdeScheme::ExactPhase) {
        const double dw = sqrt_dt * CounterRng(config.seed, traj, step + 1).next_normal();
        g_h *= det_h * std::polar(1.0, a_h * dw);
        g_l *= det_l * std::polar(1.0, a_l * dw);
      } else {
        // Heun predictor-corrector on g' = (gen + i a w) g with the step's
        // piecewise-constant noise; degree-2 Taylor of the exact factor.
        const double dw = sqrt_dt * CounterRng(config.seed, traj, step + 1).next_normal();
        const Complex rate_h = gen_h * dt + Complex(0.0, a_h * dw);
        const Complex rate_l = gen_l * dt + Complex(0.0, a_l * dw);
        g_h *= 1.0 + rate_h + 0.5 * rate_h * rate_h;
        g_l *= 1.0 + rate_l + 0.5 * rate_l * rate_l;
      }

      if ((step + 1) % config.output_stride == 0 || step + 1 == n_steps) {
        if (!std::isfinite(g_h.real()) || !std::isfinite(g_h.imag()) ||
            !std::isfinite(g_l.real()) || !std::isfinite(g_l.imag())) {
          std::ostringstream msg;
          msg << "sim: trajectory " << traj << " diverged at step " << step + 1;
          throw std::runtime_error(msg.str());
        }
        observe(g_h, g_l, obs, coh);
        acc[rec].add(obs, coh);
        ++rec;
      }
    }
  }
};

std::vector<EnsembleEstimate> run_ensemble(const SimConfig& config,
                                           std::span<const Observable> observables,
                                           bool kicks) {
  config.validate();
  const int n_steps = static_cast<int>(std::llround(config.t_max / config.dt));
  if (n_steps < 1) throw std::invalid_argument("sim: t_max shorter than one step");

  std::vector<double> times;
  times.push_back(0.0);
  for (int step = 1; step <= n_steps; ++step)
    if (step % config.output_stride == 0 || step == n_steps)
      times.push_back(step * config.dt);
  const int n_rec = static_cast<int>(times.size());

  const Kernel kernel{config, kicks, n_steps, n_rec};

  // Fixed-size trajectory blocks, merged in block order: the reduction is
  // deterministic for any worker count.
  constexpr int kBlock = 256;
  const int n_blocks = (config.n_traj + kBlock - 1) / kBlock;
  std::vector<std::future<std::vector<PointAccum>>> futures;
  futures.reserve(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    const int lo = b * kBlock;
    const int hi = std::min(config.n_traj, lo + kBlock);
    futures.push_back(std::async(std::launch::async, [&kernel, lo, hi, n_rec] {
      std::vector<PointAccum> acc(n_rec);
      for (int traj = lo; traj < hi; ++traj)
        kernel.run_trajectory(static_cast<std::uint64_t>(traj), acc);
      return acc;
    }));
  }
  std::vector<PointAccum> acc(n_rec);
  for (auto& f : futures) {
    const std::vector<PointAccum> part = f.get();
    for (int i = 0; i < n_rec; ++i) acc[i].merge(part[i]);
  }

  std::vector<EnsembleEstimate> out;
  out.reserve(observables.size());
  for (Observable obs : observables) {
    EnsembleEstimate est;
    est.observable = observable_name(obs);
    est.times = times;
    est.n_traj = config.n_traj;
    est.seed = config.seed;
    est.mean.resize(n_rec);
    est.std_error.resize(n_rec);
    for (int i = 0; i < n_rec; ++i) {
      const PointAccum& a = acc[i];
      const double denom = a.n > 1 ? static_cast<double>(a.n) * (a.n - 1) : 1.0;
      if (obs == Observable::CoherenceMag) {
        const double mag = std::hypot(a.mean_re, a.mean_im);
        est.mean[i] = mag;
        if (mag > 0.0 && a.n > 1) {
          // Variance of |mean| along the direction of the mean.
          const double ur = a.mean_re / mag, ui = a.mean_im / mag;
          const double var = (ur * ur * a.m2_re + 2.0 * ur * ui * a.co_reim +
                              ui * ui * a.m2_im) / denom;
          est.std_error[i] = std::sqrt(std::max(var, 0.0));
        } else {
          est.std_error[i] = 0.0;
        }
      } else {
        const int k = static_cast<int>(obs);
        est.mean[i] = a.mean[k];
        est.std_error[i] = a.n > 1 ? std::sqrt(std::max(a.m2[k], 0.0) / denom) : 0.0;
      }
    }
    out.push_back(std::move(est));
  }
  return out;
}

}  // namespace

std::vector<EnsembleEstimate> run_trajectories(const SimConfig& config,
                                               std::span<const Observable> observables) {
  return run_ensemble(config, observables, /*kicks=*/false);
}

std::vector<EnsembleEstimate> run_kicks(const SimConfig& config,
                                        std::span<const Observable> observables) {
  return run_ensemble(config, observables, /*kicks=*/true);
}

std::vector<ConvergenceRow> convergence_report(const SimConfig& base,
                                               std::span<const double> dt_grid) {
  for (std::size_t i = 1; i < dt_grid.size(); ++i)
    if (dt_grid[i] >= dt_grid[i - 1])
      throw std::invalid_argument("convergence_report: dt grid must descend");

  const Observable wanted[] = {Observable::ProbSame, Observable::CoherenceMag};
  std::vector<ConvergenceRow> rows;
  rows.reserve(dt_grid.size());
  for (double dt : dt_grid) {
    SimConfig config = base;
    config.dt = dt;
    config.validate();  // rejects a dt violating the resolution guard
    const auto estimates = run_trajectories(config, wanted);
    ConvergenceRow row;
    row.dt = dt;
    for (const auto& est : estimates) {
      double max_err = 0.0, floor3 = 0.0;
      for (std::size_t i = 0; i < est.times.size(); ++i) {
        const double ref = est.observable == "P_same"
                               ? analytic_prob_same(config, est.times[i])
                               : analytic_coherence(config, est.times[i]);
        max_err = std::max(max_err, std::abs(est.mean[i] - ref));
        floor3 = std::max(floor3, 3.0 * est.std_error[i]);
      }
      if (est.observable == "P_same") {
        row.max_err_prob_same = max_err;
        row.stat_floor_prob_same = floor3;
      } else {
        row.max_err_coherence = max_err;
        row.stat_floor_coherence = floor3;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qmeson
