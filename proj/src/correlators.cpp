#include "qmeson/correlators.hpp"

#include <cmath>
#include <vector>

#include "qmeson/rng.hpp"

namespace qmeson {

std::string correlator_name(CorrelatorKind kind) {
  switch (kind) {
    case CorrelatorKind::C1_20: return "C1_20";
    case CorrelatorKind::C1_11: return "C1_11";
    case CorrelatorKind::C2_40: return "C2_40";
    case CorrelatorKind::C2_31: return "C2_31";
    case CorrelatorKind::C2_22: return "C2_22";
  }
  throw std::logic_error("correlator_name: bad enum");
}

int time_power(CorrelatorKind kind) {
  return (kind == CorrelatorKind::C1_20 || kind == CorrelatorKind::C1_11) ? 1 : 2;
}

namespace {

void require_nonnegative_time(double t) {
  if (t < 0.0) throw std::domain_error("correlator: t must be >= 0");
}

}  // namespace

double c1(CorrelatorKind kind, ThetaZero theta0, double t) {
  require_nonnegative_time(t);
  switch (kind) {
    case CorrelatorKind::C1_20: return (1.0 - theta0.value) * t;
    case CorrelatorKind::C1_11: return t;
    default: throw std::invalid_argument("c1: kind is not a two-point integral");
  }
}

double c2(CorrelatorKind kind, ThetaZero theta0, double t) {
  require_nonnegative_time(t);
  const double a = 1.0 - theta0.value;
  switch (kind) {
    case CorrelatorKind::C2_40: return 0.5 * a * a * t * t;
    case CorrelatorKind::C2_31: return a * t * t;
    case CorrelatorKind::C2_22: return (a * a + 0.5) * t * t;
    default: throw std::invalid_argument("c2: kind is not a four-point integral");
  }
}

double correlator(CorrelatorKind kind, ThetaZero theta0, double t) {
  return time_power(kind) == 1 ? c1(kind, theta0, t) : c2(kind, theta0, t);
}

UTerms u_terms(UFamily family, ThetaZero theta0, double t) {
  const double a = 1.0 - theta0.value;
  const double t2 = t * t;
  switch (family) {
    case UFamily::U40: return {0.5 * a * a * t2, 0.0, 0.0};
    case UFamily::U31: return {0.5 * a * t2, 0.0, 0.5 * a * t2};
    case UFamily::U22: return {a * a * t2, 0.5 * t2, 0.0};
  }
  throw std::logic_error("u_terms: bad enum");
}

namespace {

// Weighted ordered prefix: level(i) = sum_{j<i} w_j inner_j + c * w_i inner_i.
// Iterating this builds the nested sum over i1 >= i2 >= ... with one factor
// of c per adjacent index equality, in O(n) per level.
std::vector<double> ordered_level(std::span<const double> w,
                                  std::span<const double> inner, double c) {
  std::vector<double> out(w.size());
  double prefix = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = prefix + c * w[i] * inner[i];
    prefix += w[i] * inner[i];
  }
  return out;
}

double dot(std::span<const double> w, std::span<const double> inner) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * inner[i];
  return s;
}

}  // namespace

double ordered_sum(CorrelatorKind kind, std::span<const double> w, double dt,
                   double diag_weight) {
  const std::size_t n = w.size();
  const double c = diag_weight;
  const std::vector<double> ones(n, 1.0);
  const double dt2 = dt * dt;

  switch (kind) {
    case CorrelatorKind::C1_11: {
      const double s = dot(w, ones);
      return s * s * dt2;
    }
    case CorrelatorKind::C1_20: {
      const auto l1 = ordered_level(w, ones, c);
      return dot(w, l1) * dt2;
    }
    case CorrelatorKind::C2_40: {
      const auto l1 = ordered_level(w, ones, c);
      const auto l2 = ordered_level(w, l1, c);
      const auto l3 = ordered_level(w, l2, c);
      return dot(w, l3) * dt2 * dt2;
    }
    case CorrelatorKind::C2_31: {
      const auto l1 = ordered_level(w, ones, c);
      const auto l2 = ordered_level(w, l1, c);
      return dot(w, l2) * dot(w, ones) * dt2 * dt2;
    }
    case CorrelatorKind::C2_22: {
      const auto l1 = ordered_level(w, ones, c);
      const double s = dot(w, l1);
      return s * s * dt2 * dt2;
    }
  }
  throw std::logic_error("ordered_sum: bad enum");
}

double ordered_sum_raw(CorrelatorKind kind, std::span<const double> w, double dt,
                       double diag_weight) {
  const int n = static_cast<int>(w.size());
  if (n > 32 && time_power(kind) == 2)
    throw std::invalid_argument("ordered_sum_raw: four-point kinds limited to n <= 32");
  const double c = diag_weight;
  const double dt2 = dt * dt;
  const auto adj = [c](int a, int b) { return a == b ? c : 1.0; };

  double s = 0.0;
  switch (kind) {
    case CorrelatorKind::C1_11:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += w[i] * w[j];
      return s * dt2;
    case CorrelatorKind::C1_20:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) s += adj(i, j) * w[i] * w[j];
      return s * dt2;
    case CorrelatorKind::C2_40:
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 <= i1; ++i2)
          for (int i3 = 0; i3 <= i2; ++i3)
            for (int i4 = 0; i4 <= i3; ++i4)
              s += adj(i1, i2) * adj(i2, i3) * adj(i3, i4) * w[i1] * w[i2] * w[i3] * w[i4];
      return s * dt2 * dt2;
    case CorrelatorKind::C2_31:
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 <= i1; ++i2)
          for (int i3 = 0; i3 <= i2; ++i3)
            for (int i4 = 0; i4 < n; ++i4)
              s += adj(i1, i2) * adj(i2, i3) * w[i1] * w[i2] * w[i3] * w[i4];
      return s * dt2 * dt2;
    case CorrelatorKind::C2_22:
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 <= i1; ++i2)
          for (int i3 = 0; i3 < n; ++i3)
            for (int i4 = 0; i4 <= i3; ++i4)
              s += adj(i1, i2) * adj(i3, i4) * w[i1] * w[i2] * w[i3] * w[i4];
      return s * dt2 * dt2;
  }
  throw std::logic_error("ordered_sum_raw: bad enum");
}

McEstimate oracle_correlator(CorrelatorKind kind, const OracleConfig& config) {
  if (config.n_steps < 16) throw std::invalid_argument("oracle: n_steps must be >= 16");
  if (config.n_samples < 100)
    throw std::invalid_argument("oracle: n_samples must be >= 100");
  if (!(config.diag_weight >= 0.0 && config.diag_weight <= 1.0))
    throw std::invalid_argument("oracle: diag_weight must lie in [0, 1]");
  if (config.t < 0.0) throw std::invalid_argument("oracle: t must be >= 0");

  const int n = config.n_steps;
  const double dt = config.t / n;
  const double sigma = 1.0 / std::sqrt(dt);  // Var[w_i] = 1/dt

  // Welford over samples; each sample has its own counter stream so the
  // result is independent of evaluation order.
  double mean = 0.0, m2 = 0.0;
  std::vector<double> w(n);
  for (int s = 0; s < config.n_samples; ++s) {
    CounterRng rng(config.seed, static_cast<std::uint64_t>(s));
    for (int i = 0; i < n; ++i) w[i] = sigma * rng.next_normal();
    const double value = ordered_sum(kind, w, dt, config.diag_weight);
    const double delta = value - mean;
    mean += delta / (s + 1);
    m2 += delta * (value - mean);
  }
  const double var = m2 / (config.n_samples - 1);
  return {mean, std::sqrt(var / config.n_samples), config.n_samples, config.seed};
}

}  // namespace qmeson
