#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qmeson {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;

enum class Eigenstate { Heavy, Light };
enum class FlavorTarget { Same, Conjugate };

/// Mass-basis component order: index 0 = heavy, index 1 = light.
inline constexpr int kHeavy = 0;
inline constexpr int kLight = 1;

/// Pair of absolute masses of the two lifetime eigenstates (hbar s^-1).
struct MassPair {
  double light = 0.0;
  double heavy = 0.0;
  double delta() const { return heavy - light; }
  double of(Eigenstate e) const { return e == Eigenstate::Light ? light : heavy; }
};

/// Flavor <-> mass rotation with the phase convention
/// |M0> = (|M_H> + |M_L>)/sqrt2, |M0bar> = (|M_H> - |M_L>)/sqrt2.
/// The matrix is its own inverse.
inline Mat2 flavor_mass_map() {
  const double s = 1.0 / std::numbers::sqrt2;
  Mat2 u;
  u << s, s, s, -s;
  return u;
}

inline Vec2 to_mass_basis(const Vec2& flavor_state) {
  return flavor_mass_map() * flavor_state;
}
inline Vec2 to_flavor_basis(const Vec2& mass_state) {
  return flavor_mass_map() * mass_state;
}

/// exp(eig_k * t) on the diagonal; closed-form evolution for diagonal
/// generators.
template <int N>
Eigen::Matrix<Complex, N, N> matexp_diag(const Eigen::Matrix<Complex, N, 1>& eigs,
                                         double t) {
  Eigen::Matrix<Complex, N, N> out = Eigen::Matrix<Complex, N, N>::Zero();
  for (int k = 0; k < N; ++k) out(k, k) = std::exp(eigs[k] * t);
  return out;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol = 1e-12) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() < rel_tol * scale;
}

}  // namespace qmeson
