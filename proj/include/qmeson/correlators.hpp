#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace qmeson {

/// Value assigned to the Heaviside step at zero; parameterizes the
/// equal-time convention of the white-noise correlators. Runtime parameter
/// everywhere, never a compile-time constant.
struct ThetaZero {
  double value = 0.0;
  ThetaZero() = default;
  explicit ThetaZero(double v) : value(v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error("theta(0) must lie in [0, 1]");
  }
};

/// The five ordered time integrals of the noise correlation functions.
/// C1_* multiply t (two-point), C2_* multiply t^2 (four-point).
enum class CorrelatorKind { C1_20, C1_11, C2_40, C2_31, C2_22 };

inline constexpr CorrelatorKind kAllCorrelatorKinds[] = {
    CorrelatorKind::C1_20, CorrelatorKind::C1_11, CorrelatorKind::C2_40,
    CorrelatorKind::C2_31, CorrelatorKind::C2_22};

std::string correlator_name(CorrelatorKind kind);
int time_power(CorrelatorKind kind);  // 1 for C1_*, 2 for C2_*

/// Two-point closed forms: C1_20 -> (1-theta0) t, C1_11 -> t.
double c1(CorrelatorKind kind, ThetaZero theta0, double t);

/// Four-point closed forms:
///   C2_40 -> (1/2)(1-theta0)^2 t^2
///   C2_31 -> (1-theta0) t^2
///   C2_22 -> ((1-theta0)^2 + 1/2) t^2
double c2(CorrelatorKind kind, ThetaZero theta0, double t);

/// Dispatch over all five kinds.
double correlator(CorrelatorKind kind, ThetaZero theta0, double t);

enum class UFamily { U40, U31, U22 };

/// Individual Wick-pairing contributions; u1 + u2 + u3 equals the matching
/// c2 for every theta0 and t.
struct UTerms {
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  double sum() const { return u1 + u2 + u3; }
};
UTerms u_terms(UFamily family, ThetaZero theta0, double t);

/// Monte Carlo estimate of a scalar.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

/// Discrete-noise oracle for the ordered integrals.
///
/// Each sample draws i.i.d. Gaussian increments w_i with variance 1/dt and
/// evaluates the ordered discrete sums; the equal-time (diagonal) terms
/// inside strictly-ordered regions carry weight `diag_weight`. As
/// n_steps -> infinity the estimate converges to the closed form evaluated
/// at theta0 = 1 - diag_weight. This mapping is a construction of this
/// toolkit (the continuum calculation fixes only the closed forms) and is
/// validated by the convergence tests.
struct OracleConfig {
  int n_steps = 256;
  int n_samples = 4096;
  double t = 1.0;
  double diag_weight = 1.0;  // in [0, 1]
  std::uint64_t seed = 0;
};

McEstimate oracle_correlator(CorrelatorKind kind, const OracleConfig& config);

/// Per-realization ordered sums, exposed for cross-checks. `ordered_sum`
/// evaluates the weighted nested sum with an O(n_steps) prefix recursion;
/// `ordered_sum_raw` is the literal nested-loop evaluation (O(n^4) for the
/// four-point kinds) and is only intended for n_steps <= 32.
double ordered_sum(CorrelatorKind kind, std::span<const double> w, double dt,
                   double diag_weight);
double ordered_sum_raw(CorrelatorKind kind, std::span<const double> w, double dt,
                       double diag_weight);

}  // namespace qmeson
