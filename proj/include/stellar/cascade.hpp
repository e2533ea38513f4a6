#pragma once

// Sequential measurement cascade: a spin-S measurement realized as 2S
// consecutive spin-1/2 measurements on the slots of the embedded state.
// Measuring one slot draws its outcome from the Born weights of the current
// joint state and then collapses the joint state conditionally, which is the
// deterministic update rule for the proper states of the entities not yet
// measured; a measured slot is removed and never revisited.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "stellar/rng.hpp"
#include "stellar/spin.hpp"
#include "stellar/symmetric.hpp"
#include "stellar/types.hpp"
#include "stellar/wigner.hpp"

namespace stellar {

inline constexpr int kMaxExactCascadeSlots = 12;

/// 2x2 density matrix of one slot (a proper state), stored in the ascending
/// computational basis: entry (1,1) is the '+' population.
struct QubitDensity {
  Matrix2c matrix;

  explicit QubitDensity(Matrix2c m) : matrix(std::move(m)) {
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("QubitDensity: not Hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > 1e-12 ||
        std::abs(matrix.trace().imag()) > 1e-12)
      throw std::invalid_argument("QubitDensity: trace != 1");
    const Real det = (matrix(0, 0) * matrix(1, 1) - matrix(0, 1) * matrix(1, 0)).real();
    const Real tr = matrix.trace().real();
    const Real lam_min = (tr - std::sqrt(std::max(tr * tr - 4 * det, Real(0)))) / 2;
    if (lam_min < -1e-12)
      throw std::invalid_argument("QubitDensity: negative eigenvalue");
  }

  /// Bloch vector r with matrix = (I + r.sigma)/2.
  Vector3r bloch_vector() const {
    return Vector3r(2 * matrix(1, 0).real(), -2 * matrix(1, 0).imag(),
                    (matrix(1, 1) - matrix(0, 0)).real());
  }
};

inline QubitDensity density_from_bloch(const Vector3r& r) {
  Matrix2c m;
  m(0, 0) = Complex((1 - r.z()) / 2, 0);
  m(1, 1) = Complex((1 + r.z()) / 2, 0);
  m(1, 0) = Complex(r.x() / 2, -r.y() / 2);
  m(0, 1) = std::conj(m(1, 0));
  return QubitDensity(std::move(m));
}

namespace detail {

inline Eigen::Index insert_bit(Eigen::Index rest, int bit_pos, int bit) {
  const Eigen::Index high = rest >> bit_pos;
  const Eigen::Index low = rest & ((Eigen::Index{1} << bit_pos) - 1);
  return (high << (bit_pos + 1)) | (Eigen::Index{bit} << bit_pos) | low;
}

/// <q (x) I | psi>: contract one slot against the conjugate of a 2-vector.
inline VectorC contract_slot(const VectorC& psi, int slot_count, int slot,
                             const Vector2c& q) {
  const int bit_pos = slot_count - 1 - slot;
  VectorC out(psi.size() / 2);
  for (Eigen::Index t = 0; t < out.size(); ++t)
    out[t] = std::conj(q[0]) * psi[insert_bit(t, bit_pos, 0)] +
             std::conj(q[1]) * psi[insert_bit(t, bit_pos, 1)];
  return out;
}

}  // namespace detail

/// Reorder tensor slots: new slot k carries what old slot order[k] carried.
inline VectorC permute_slots(const VectorC& psi, int slot_count,
                             const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != slot_count)
    throw std::domain_error("permute_slots: order size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(slot_count), false);
  for (int s : order) {
    if (s < 0 || s >= slot_count || seen[static_cast<std::size_t>(s)])
      throw std::domain_error("permute_slots: not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }
  VectorC out(psi.size());
  for (Eigen::Index t = 0; t < out.size(); ++t) {
    Eigen::Index u = 0;
    for (int k = 0; k < slot_count; ++k) {
      const Eigen::Index bit = (t >> (slot_count - 1 - k)) & 1;
      u |= bit << (slot_count - 1 - order[static_cast<std::size_t>(k)]);
    }
    out[t] = psi[u];
  }
  return out;
}

/// Partial trace over every slot but one.
inline QubitDensity reduced_density(const VectorC& psi, int slot_count,
                                    int slot) {
  if (slot < 0 || slot >= slot_count)
    throw std::domain_error("reduced_density: slot out of range");
  const int bit_pos = slot_count - 1 - slot;
  Matrix2c m = Matrix2c::Zero();
  for (Eigen::Index t = 0; t < psi.size() / 2; ++t)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        m(a, b) += psi[detail::insert_bit(t, bit_pos, a)] *
                   std::conj(psi[detail::insert_bit(t, bit_pos, b)]);
  return QubitDensity(std::move(m));
}

inline QubitDensity reduced_density(const SymmetricTensorState& state,
                                    int slot) {
  return reduced_density(state.amplitudes, state.slot_count(), slot);
}

/// psi = a_plus |+>(x)phi_plus + a_minus |->(x)phi_minus over the chosen
/// slot, in the computational basis; a zero-weight branch keeps a zero
/// vector in place of its conditional state.
struct BiorthogonalSplit {
  Real a_plus = 0;
  Real a_minus = 0;
  VectorC phi_plus;
  VectorC phi_minus;
};

inline BiorthogonalSplit biorthogonal_split(const SymmetricTensorState& state,
                                            int slot) {
  const int n = state.slot_count();
  if (slot < 0 || slot >= n)
    throw std::domain_error("biorthogonal_split: slot out of range");
  const int bit_pos = n - 1 - slot;
  BiorthogonalSplit out;
  out.phi_plus.resize(state.amplitudes.size() / 2);
  out.phi_minus.resize(state.amplitudes.size() / 2);
  for (Eigen::Index t = 0; t < out.phi_plus.size(); ++t) {
    out.phi_minus[t] = state.amplitudes[detail::insert_bit(t, bit_pos, 0)];
    out.phi_plus[t] = state.amplitudes[detail::insert_bit(t, bit_pos, 1)];
  }
  out.a_plus = out.phi_plus.norm();
  out.a_minus = out.phi_minus.norm();
  if (out.a_plus > 0) out.phi_plus /= out.a_plus;
  if (out.a_minus > 0) out.phi_minus /= out.a_minus;
  return out;
}

/// State of a running cascade: the joint state of the slots not yet
/// measured, the labels observed so far, and the measurement direction.
struct CascadeState {
  VectorC remaining;     // 2^k amplitudes for k unmeasured slots
  std::string outcomes;  // '+'/'-' labels in measurement order
  Real alpha = 0;
  Real beta = 0;

  int slots_left() const {
    int k = 0;
    for (Eigen::Index s = remaining.size(); s > 1; s /= 2) ++k;
    return k;
  }
};

inline CascadeState start_cascade(const SymmetricTensorState& initial,
                                  Real alpha, Real beta,
                                  const std::vector<int>* order = nullptr) {
  CascadeState s;
  s.remaining = order == nullptr
                    ? initial.amplitudes
                    : permute_slots(initial.amplitudes, initial.slot_count(),
                                    *order);
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

struct StepProbabilities {
  Real plus = 0;
  Real minus = 0;
};

/// Born weights of the next slot's outcomes in the current joint state.
inline StepProbabilities step_probabilities(const CascadeState& s) {
  if (s.slots_left() == 0)
    throw std::domain_error("step_probabilities: empty cascade");
  const int n = s.slots_left();
  StepProbabilities p;
  p.plus = detail::contract_slot(s.remaining, n, 0,
                                 qubit_plus(s.alpha, s.beta))
               .squaredNorm();
  p.minus = detail::contract_slot(s.remaining, n, 0,
                                  qubit_minus(s.alpha, s.beta))
                .squaredNorm();
  return p;
}

/// Deterministic collapse given an observed label; returns the branch
/// probability.  Requesting a zero-probability branch is a domain error.
inline Real apply_outcome(CascadeState& s, char label) {
  if (label != '+' && label != '-')
    throw std::domain_error("apply_outcome: label must be '+' or '-'");
  const int n = s.slots_left();
  if (n == 0) throw std::domain_error("apply_outcome: empty cascade");
  const Vector2c q = label == '+' ? qubit_plus(s.alpha, s.beta)
                                  : qubit_minus(s.alpha, s.beta);
  VectorC branch = detail::contract_slot(s.remaining, n, 0, q);
  const Real prob = branch.squaredNorm();
  if (prob == 0)
    throw std::domain_error("apply_outcome: zero-probability branch");
  s.remaining = branch / std::sqrt(prob);
  s.outcomes.push_back(label);
  return prob;
}

/// Draw one outcome and collapse.  Exactly-zero branches are never selected,
/// so degenerate directions (beta in {0, pi}) stay exact.
inline char measure_entity(CascadeState& s, RngStream& rng) {
  const StepProbabilities p = step_probabilities(s);
  char label;
  if (p.plus == 0)
    label = '-';
  else if (p.minus == 0)
    label = '+';
  else
    label = rng.next_unit() < p.plus ? '+' : '-';
  apply_outcome(s, label);
  return label;
}

struct CascadeResult {
  std::string outcomes;
  int n_plus = 0;
  int n_minus = 0;
  int twice_m_prime = 0;  // n_plus - n_minus
};

inline CascadeResult run_cascade(const SymmetricTensorState& initial,
                                 Real alpha, Real beta, RngStream& rng,
                                 const std::vector<int>* order = nullptr) {
  CascadeState s = start_cascade(initial, alpha, beta, order);
  CascadeResult r;
  for (int k = 0; k < initial.slot_count(); ++k) {
    const char label = measure_entity(s, rng);
    if (label == '+')
      ++r.n_plus;
    else
      ++r.n_minus;
  }
  r.outcomes = s.outcomes;
  r.twice_m_prime = r.n_plus - r.n_minus;
  return r;
}

namespace detail {

inline void exact_walk(CascadeState& s, Real weight, std::vector<Real>& out,
                       int n_plus) {
  if (s.slots_left() == 0) {
    out[static_cast<std::size_t>(n_plus)] += weight;
    return;
  }
  const StepProbabilities p = step_probabilities(s);
  if (p.plus > 0) {
    CascadeState t = s;
    apply_outcome(t, '+');
    exact_walk(t, weight * p.plus, out, n_plus + 1);
  }
  if (p.minus > 0) {
    CascadeState t = s;
    apply_outcome(t, '-');
    exact_walk(t, weight * p.minus, out, n_plus);
  }
}

}  // namespace detail

/// Exact outcome distribution of the cascade, aggregated by M'.  Entry k of
/// the result is the probability of twice_m_prime = 2k - 2S (ascending M').
inline std::vector<Real> exact_cascade_distribution(
    const SymmetricTensorState& initial, Real alpha, Real beta,
    const std::vector<int>* order = nullptr) {
  if (initial.slot_count() > kMaxExactCascadeSlots)
    throw capacity_error("exact_cascade_distribution: 2S > 12");
  std::vector<Real> out(static_cast<std::size_t>(initial.slot_count() + 1), 0.0);
  CascadeState s = start_cascade(initial, alpha, beta, order);
  detail::exact_walk(s, 1.0, out, 0);
  return out;
}

/// n unit qubit vectors whose uniform mixture reproduces the density.  When
/// n * lambda_max is an integer the decomposition is the eigenvector one
/// (e.g. omega_M splits into S+M copies of |+> and S-M copies of |->);
/// otherwise the states sit on a cone around the Bloch vector at equally
/// spaced azimuths.
inline std::vector<Vector2c> decompose_density(const QubitDensity& d, int n) {
  if (n < 1) throw std::domain_error("decompose_density: need n >= 1");
  const Vector3r r = d.bloch_vector();
  const Real rn = std::min(r.norm(), Real(1));
  if (n == 1 && rn < 1 - 1e-12)
    throw std::domain_error("decompose_density: mixed state needs n >= 2");

  const Vector3r axis = rn == 0 ? Vector3r(0, 0, 1) : Vector3r(r / r.norm());
  auto qubit_at = [](const Vector3r& u) {
    const BlochPoint p = bloch_from_cartesian(u);
    return qubit_plus(p.alpha, p.beta);
  };

  std::vector<Vector2c> out;
  out.reserve(static_cast<std::size_t>(n));
  const Real copies = n * (1 + rn) / 2;  // would-be copy count along the axis
  if (std::abs(copies - std::round(copies)) < 1e-9) {
    const int k = static_cast<int>(std::round(copies));
    for (int j = 0; j < k; ++j) out.push_back(qubit_at(axis));
    for (int j = k; j < n; ++j) out.push_back(qubit_at(-axis));
    return out;
  }

  // Cone construction: cos(theta) = |r| makes the mean Bloch vector r.
  Vector3r e1 = axis.cross(Vector3r(0, 0, 1));
  if (e1.norm() < 1e-8) e1 = axis.cross(Vector3r(1, 0, 0));
  e1.normalize();
  const Vector3r e2 = axis.cross(e1);
  const Real sin_theta = std::sqrt(std::max(Real(0), 1 - rn * rn));
  for (int j = 0; j < n; ++j) {
    const Real phi = 2 * kPi * j / n;
    out.push_back(qubit_at(rn * axis + sin_theta * (std::cos(phi) * e1 +
                                                    std::sin(phi) * e2)));
  }
  return out;
}

}  // namespace stellar
