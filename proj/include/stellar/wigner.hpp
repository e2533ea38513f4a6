#pragma once

// Rotation matrices, spin coherent states and transition probabilities.
//
// The active rotation with Euler angles (alpha, beta, gamma) acts on a spin-S
// amplitude vector through
//
//     M[i][j] = exp(-I i alpha) * d_S(i, j; beta) * exp(-I j gamma)
//
// with i, j in {-S, ..., S} and the real little-d kernel
//
//     d_S(i, j; beta) = C(i,j) * sum_k (-1)^k cos(b/2)^(2S+j-i-2k)
//                       * (-sin(b/2))^(i-j+2k)
//                       / [(S-i-k)! (S+j-k)! (k+i-j)! k!]
//     C(i,j) = sqrt((S+i)! (S-i)! (S+j)! (S-j)!)
//
// summed over every k that keeps all factorial arguments non-negative.  For
// S = 1/2 this is the familiar 2x2 matrix
//
//     [ e^{-I(a+g)/2} cos(b/2)   -e^{-I(a-g)/2} sin(b/2) ]   (rows/cols +,-)
//     [ e^{ I(a-g)/2} sin(b/2)    e^{ I(a+g)/2} cos(b/2) ]
//
// Factorials are taken from the exact integer table, so coefficients are
// correct to rounding for all 2S <= 20.

#include <cmath>

#include "stellar/spin.hpp"
#include "stellar/types.hpp"

namespace stellar {

namespace detail {

inline Real pow_int(Real base, int e) {
  Real r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

/// Little-d rotation kernel; arguments are twice the quantum numbers.
inline Real wigner_d(int twice_s, int twice_i, int twice_j, Real beta) {
  const int sp_i = (twice_s + twice_i) / 2;  // S + i
  const int sm_i = (twice_s - twice_i) / 2;  // S - i
  const int sp_j = (twice_s + twice_j) / 2;
  const int sm_j = (twice_s - twice_j) / 2;
  const Real ch = std::cos(beta / 2);
  const Real msh = -std::sin(beta / 2);
  const Real c = std::sqrt(
      static_cast<Real>(factorial_exact(sp_i)) * static_cast<Real>(factorial_exact(sm_i)) *
      static_cast<Real>(factorial_exact(sp_j)) * static_cast<Real>(factorial_exact(sm_j)));
  const int k_lo = std::max(0, sp_j - sp_i);
  const int k_hi = std::min(sm_i, sp_j);
  Real sum = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const Real num = (k % 2 == 0 ? 1.0 : -1.0) *
                     pow_int(ch, sp_j + sm_i - 2 * k) *
                     pow_int(msh, sp_i - sp_j + 2 * k);
    const Real den = static_cast<Real>(
        factorial_exact(sm_i - k) * factorial_exact(sp_j - k) *
        factorial_exact(k + sp_i - sp_j) * factorial_exact(k));
    sum += num / den;
  }
  return c * sum;
}

}  // namespace detail

/// The (2S+1)x(2S+1) unitary of an active rotation, rows and columns indexed
/// ascending in the magnetic quantum number.
inline MatrixC wigner_matrix(Spin spin, const EulerAngles& angles) {
  const int n = spin.dimension();
  MatrixC m(n, n);
  for (int r = 0; r < n; ++r) {
    const Real i_q = spin.magnetic_at(r).twice_m / 2.0;
    const Complex row_phase = std::polar(Real(1), -i_q * angles.alpha);
    for (int c = 0; c < n; ++c) {
      const Real j_q = spin.magnetic_at(c).twice_m / 2.0;
      const Complex col_phase = std::polar(Real(1), -j_q * angles.gamma);
      m(r, c) = row_phase *
                detail::wigner_d(spin.twice(), spin.magnetic_at(r).twice_m,
                                 spin.magnetic_at(c).twice_m, angles.beta) *
                col_phase;
    }
  }
  return m;
}

/// Rotated eigenstate psi_M^{alpha,beta,gamma}: column M of the rotation
/// matrix applied to the basis vector.
inline SpinState coherent_state(Spin spin, MagneticQuantumNumber m,
                                const EulerAngles& angles) {
  (void)spin.index_of(m);  // validates m
  const int n = spin.dimension();
  const Real m_q = m.twice_m / 2.0;
  const Complex col_phase = std::polar(Real(1), -m_q * angles.gamma);
  VectorC v(n);
  for (int r = 0; r < n; ++r) {
    const Real i_q = spin.magnetic_at(r).twice_m / 2.0;
    v[r] = std::polar(Real(1), -i_q * angles.alpha) *
           detail::wigner_d(spin.twice(), spin.magnetic_at(r).twice_m,
                            m.twice_m, angles.beta) *
           col_phase;
  }
  return SpinState::normalized(spin, v);
}

/// Transition probability |<a|b>|^2 between two states of equal spin.
inline Real transition_probability(const SpinState& a, const SpinState& b) {
  return ray_overlap(a, b);
}

/// Closed-form transition probability P(M -> M') of a rotation by beta,
/// evaluated as the literal k-sum; it is independent of alpha and gamma.
inline Real coherent_transition_closed_form(Spin spin, MagneticQuantumNumber m,
                                            MagneticQuantumNumber m_prime,
                                            Real beta) {
  if (!spin.contains(m) || !spin.contains(m_prime))
    throw std::domain_error(
        "coherent_transition_closed_form: invalid quantum number");
  const int sp_m = (spin.twice() + m.twice_m) / 2;        // S + M
  const int sm_m = (spin.twice() - m.twice_m) / 2;        // S - M
  const int sp_p = (spin.twice() + m_prime.twice_m) / 2;  // S + M'
  const int sm_p = (spin.twice() - m_prime.twice_m) / 2;  // S - M'
  const Real c = std::sqrt(
      static_cast<Real>(factorial_exact(sp_m)) * static_cast<Real>(factorial_exact(sm_m)) *
      static_cast<Real>(factorial_exact(sp_p)) * static_cast<Real>(factorial_exact(sm_p)));
  const Real ch = std::cos(beta / 2);
  const Real msh = -std::sin(beta / 2);
  const int k_lo = std::max(0, sp_m - sp_p);  // max{0, M - M'}
  const int k_hi = std::min(sm_p, sp_m);      // min{S - M', S + M}
  Real sum = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const Real num = (k % 2 == 0 ? 1.0 : -1.0) *
                     detail::pow_int(ch, sp_m + sm_p - 2 * k) *
                     detail::pow_int(msh, sp_p - sp_m + 2 * k);
    const Real den = static_cast<Real>(
        factorial_exact(sm_p - k) * factorial_exact(sp_m - k) *
        factorial_exact(k + sp_p - sp_m) * factorial_exact(k));
    sum += num / den;
  }
  return (c * sum) * (c * sum);
}

/// Spin-1/2 outcome vectors along the direction (alpha, beta), in ascending
/// storage (entry 0 is the i = -1/2 amplitude).  Both poles are exact so
/// that degenerate measurement directions produce exact 0/1 branch weights.
inline Vector2c qubit_plus(Real alpha, Real beta) {
  const Real sh = beta == kPi ? Real(1) : std::sin(beta / 2);
  const Real ch = beta == kPi ? Real(0) : std::cos(beta / 2);
  return Vector2c(std::polar(Real(1), alpha / 2) * sh,
                  std::polar(Real(1), -alpha / 2) * ch);
}

inline Vector2c qubit_minus(Real alpha, Real beta) {
  const Real sh = beta == kPi ? Real(1) : std::sin(beta / 2);
  const Real ch = beta == kPi ? Real(0) : std::cos(beta / 2);
  return Vector2c(std::polar(Real(1), alpha / 2) * ch,
                  -std::polar(Real(1), -alpha / 2) * sh);
}

/// Sphere point of a single-qubit ray: the unique (alpha, beta) with
/// qubit_plus(alpha, beta) proportional to v.  At the poles alpha is
/// conventionally 0.
inline BlochPoint bloch_of_qubit(const Vector2c& v) {
  const Real lo = std::abs(v[0]);  // sin(beta/2) amplitude
  const Real hi = std::abs(v[1]);  // cos(beta/2) amplitude
  if (lo == 0 && hi == 0) throw std::domain_error("bloch_of_qubit: zero vector");
  if (lo == 0) return BlochPoint(0, 0);
  if (hi == 0) return BlochPoint(0, kPi);
  const Real beta = 2 * std::atan2(lo, hi);
  const Real alpha = std::arg(v[0] * std::conj(v[1]));
  return BlochPoint(alpha, beta);
}

inline BlochPoint bloch_of_state(const SpinState& s) {
  if (s.spin().twice() != 1)
    throw std::domain_error("bloch_of_state: spin-1/2 states only");
  return bloch_of_qubit(Vector2c(s.amplitudes()[0], s.amplitudes()[1]));
}

}  // namespace stellar
