#pragma once

// Shared test utilities: seeded random states and points, multiset matching
// of constellations, and an independent rotation oracle built from matrix
// exponentials of the angular momentum generators.

#include <algorithm>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "stellar/spin.hpp"
#include "stellar/types.hpp"

namespace testutil {

using stellar::BlochPoint;
using stellar::Complex;
using stellar::MatrixC;
using stellar::Real;
using stellar::Spin;
using stellar::SpinState;
using stellar::VectorC;

/// Haar-like random ray: complex Gaussian components, normalized.
inline SpinState random_state(Spin spin, std::mt19937_64& gen) {
  std::normal_distribution<Real> g;
  VectorC v(spin.dimension());
  for (int k = 0; k < spin.dimension(); ++k) v[k] = Complex(g(gen), g(gen));
  return SpinState::normalized(spin, v);
}

/// Uniform point on the sphere.
inline BlochPoint random_point(std::mt19937_64& gen) {
  std::uniform_real_distribution<Real> u(0.0, 1.0);
  return BlochPoint(2 * stellar::kPi * u(gen),
                    std::acos(1 - 2 * u(gen)));
}

inline stellar::EulerAngles random_angles(std::mt19937_64& gen,
                                          bool with_gamma = true) {
  std::uniform_real_distribution<Real> u(0.0, 1.0);
  return stellar::EulerAngles(2 * stellar::kPi * u(gen),
                              stellar::kPi * u(gen),
                              with_gamma ? 2 * stellar::kPi * u(gen) : 0.0);
}

/// Smallest achievable max angular error over all pairings of the two point
/// multisets (exhaustive; fine for up to ~8 points).
inline Real best_matching_error(std::vector<BlochPoint> a,
                                const std::vector<BlochPoint>& b) {
  if (a.size() != b.size()) return stellar::kPi;
  std::vector<int> perm(a.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  Real best = stellar::kPi;
  std::sort(perm.begin(), perm.end());
  do {
    Real worst = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      worst = std::max(worst,
                       stellar::angular_distance(
                           a[k], b[static_cast<std::size_t>(perm[k])]));
    best = std::min(best, worst);
    if (best == 0) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Angular momentum generators in the ascending basis.
inline void generators(Spin spin, MatrixC& jz, MatrixC& jy) {
  const int n = spin.dimension();
  const Real s = spin.twice() / 2.0;
  jz = MatrixC::Zero(n, n);
  MatrixC jp = MatrixC::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const Real m = -s + k;
    jz(k, k) = m;
    if (k + 1 < n) jp(k + 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  jy = (jp - MatrixC(jp.adjoint())) / Complex(0, 2);
}

/// Independent rotation oracle: exp(-i a Jz) exp(-i b Jy) exp(-i g Jz).
inline MatrixC rotation_by_exponentials(Spin spin,
                                        const stellar::EulerAngles& e) {
  MatrixC jz, jy;
  generators(spin, jz, jy);
  const Complex mi(0, -1);
  return MatrixC(MatrixC(mi * e.alpha * jz).exp() *
                 MatrixC(mi * e.beta * jy).exp() *
                 MatrixC(mi * e.gamma * jz).exp());
}

}  // namespace testutil
