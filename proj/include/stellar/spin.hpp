#pragma once

// Exact spin bookkeeping: half-integer spin values, magnetic quantum numbers,
// Euler angles and sphere points.
//
// Conventions used throughout the library:
//   * a spin S is stored as the integer 2S ("twice_s"), so S = 1/2, 1, 3/2, ...
//     are represented exactly;
//   * amplitude vectors are indexed ascending in the magnetic quantum number,
//     entry k of a (2S+1)-vector belongs to i = k - S (twice_i = 2k - 2S);
//   * angles are radians, alpha in [0, 2*pi), beta in [0, pi].

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "stellar/types.hpp"

namespace stellar {

inline constexpr int kMaxFactorialArg = 20;

/// n! as an exact 64-bit integer, n <= 20.
inline std::int64_t factorial_exact(int n) {
  static constexpr std::array<std::int64_t, kMaxFactorialArg + 1> table = [] {
    std::array<std::int64_t, kMaxFactorialArg + 1> t{};
    t[0] = 1;
    for (int i = 1; i <= kMaxFactorialArg; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > kMaxFactorialArg)
    throw std::domain_error("factorial_exact: argument outside [0, 20]");
  return table[static_cast<std::size_t>(n)];
}

/// Binomial coefficient n-choose-k as an exact integer, n <= 20.
inline std::int64_t binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial_exact(n) / (factorial_exact(k) * factorial_exact(n - k));
}

/// Reduce an angle into [0, 2*pi).
inline Real wrap_angle(Real a) {
  Real r = std::fmod(a, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  if (r >= 2 * kPi) r = 0;  // fmod slop at the seam
  return r;
}

/// Magnetic quantum number M stored as 2M; valid values satisfy |2M| <= 2S
/// and 2M = 2S (mod 2).
struct MagneticQuantumNumber {
  int twice_m = 0;

  friend bool operator==(MagneticQuantumNumber a, MagneticQuantumNumber b) {
    return a.twice_m == b.twice_m;
  }
};

/// Half-integer spin quantum number, stored exactly as 2S >= 1.
class Spin {
 public:
  explicit Spin(int twice_s) : twice_s_(twice_s) {
    if (twice_s < 1) throw std::domain_error("Spin: twice_s must be >= 1");
  }

  int twice() const { return twice_s_; }
  int dimension() const { return twice_s_ + 1; }

  bool contains(MagneticQuantumNumber m) const {
    return std::abs(m.twice_m) <= twice_s_ &&
           (m.twice_m - twice_s_) % 2 == 0;
  }

  /// Storage index of a magnetic quantum number (ascending order).
  int index_of(MagneticQuantumNumber m) const {
    if (!contains(m))
      throw std::domain_error("Spin: invalid magnetic quantum number");
    return (m.twice_m + twice_s_) / 2;
  }

  /// Magnetic quantum number stored at index k.
  MagneticQuantumNumber magnetic_at(int k) const {
    if (k < 0 || k > twice_s_)
      throw std::domain_error("Spin: index out of range");
    return MagneticQuantumNumber{2 * k - twice_s_};
  }

  std::vector<MagneticQuantumNumber> magnetic_numbers() const {
    std::vector<MagneticQuantumNumber> out;
    out.reserve(static_cast<std::size_t>(dimension()));
    for (int t = -twice_s_; t <= twice_s_; t += 2)
      out.push_back(MagneticQuantumNumber{t});
    return out;
  }

  friend bool operator==(Spin a, Spin b) { return a.twice_s_ == b.twice_s_; }
  friend bool operator!=(Spin a, Spin b) { return !(a == b); }

 private:
  int twice_s_;
};

/// Euler angles (z-y-z, active rotation). alpha and gamma are wrapped into
/// [0, 2*pi); beta must lie in [0, pi] and is rejected otherwise instead of
/// being reflected, so the two hemispheres are never silently confused.
struct EulerAngles {
  Real alpha = 0;
  Real beta = 0;
  Real gamma = 0;

  EulerAngles() = default;
  EulerAngles(Real a, Real b, Real g = 0)
      : alpha(wrap_angle(a)), beta(b), gamma(wrap_angle(g)) {
    constexpr Real slack = 1e-12;
    if (beta < -slack || beta > kPi + slack)
      throw std::domain_error("EulerAngles: beta outside [0, pi]");
    if (beta < 0) beta = 0;
    if (beta > kPi) beta = kPi;
  }
};

/// A point on the unit sphere, by the Euler-angle direction
/// (cos a sin b, sin a sin b, cos b).
struct BlochPoint {
  Real alpha = 0;
  Real beta = 0;

  BlochPoint() = default;
  BlochPoint(Real a, Real b) : alpha(wrap_angle(a)), beta(b) {
    constexpr Real slack = 1e-12;
    if (beta < -slack || beta > kPi + slack)
      throw std::domain_error("BlochPoint: beta outside [0, pi]");
    if (beta < 0) beta = 0;
    if (beta > kPi) beta = kPi;
  }

  Vector3r cartesian() const {
    return Vector3r(std::cos(alpha) * std::sin(beta),
                    std::sin(alpha) * std::sin(beta), std::cos(beta));
  }

  BlochPoint antipode() const {
    return BlochPoint(alpha < kPi ? alpha + kPi : alpha - kPi, kPi - beta);
  }

  friend bool operator==(const BlochPoint& a, const BlochPoint& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

/// Canonical ordering used for multiset comparisons and enumeration.
inline bool bloch_less(const BlochPoint& a, const BlochPoint& b) {
  if (a.beta != b.beta) return a.beta < b.beta;
  return a.alpha < b.alpha;
}

/// Geodesic angle between two sphere points; the atan2 form stays accurate
/// for nearly parallel and nearly antipodal pairs.
inline Real angular_distance(const BlochPoint& a, const BlochPoint& b) {
  const Vector3r u = a.cartesian(), v = b.cartesian();
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

inline BlochPoint bloch_from_cartesian(const Vector3r& v) {
  Real n = v.norm();
  if (n == 0) throw std::domain_error("bloch_from_cartesian: zero vector");
  Real beta = std::acos(std::clamp(v.z() / n, Real(-1), Real(1)));
  Real alpha = (v.x() == 0 && v.y() == 0) ? 0 : std::atan2(v.y(), v.x());
  return BlochPoint(alpha, beta);
}

/// A unit-norm representative of a spin-S ray.  Amplitudes are stored
/// ascending in the magnetic quantum number.
class SpinState {
 public:
  SpinState(Spin spin, VectorC amplitudes)
      : spin_(spin), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != spin_.dimension())
      throw std::invalid_argument("SpinState: amplitude count != 2S+1");
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-12)
      throw std::invalid_argument("SpinState: vector is not unit norm");
  }

  /// Build a state from any nonzero vector by normalizing it.
  static SpinState normalized(Spin spin, const VectorC& v) {
    Real n = v.norm();
    if (n == 0) throw std::domain_error("SpinState: zero vector");
    return SpinState(spin, v / n);
  }

  Spin spin() const { return spin_; }
  const VectorC& amplitudes() const { return amplitudes_; }
  Complex amplitude(MagneticQuantumNumber m) const {
    return amplitudes_[spin_.index_of(m)];
  }

 private:
  Spin spin_;
  VectorC amplitudes_;
};

/// |<a|b>|^2; this is the transition probability between the two rays.
inline Real ray_overlap(const SpinState& a, const SpinState& b) {
  if (a.spin() != b.spin())
    throw std::domain_error("ray_overlap: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// Rays are considered equal when their overlap is within tol of 1.
inline bool ray_equal(const SpinState& a, const SpinState& b,
                      Real tol = 1e-10) {
  return ray_overlap(a, b) >= 1.0 - tol;
}

}  // namespace stellar
