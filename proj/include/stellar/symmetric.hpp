#pragma once

// Embedding of spin-S states and measurements into the 2S-fold tensor
// product of spin-1/2 spaces.
//
// Tensor indexing: amplitudes live in a dense 2^(2S) vector; slot k
// (k = 0 .. 2S-1) owns bit (2S-1-k) of the linear index, bit value 1 meaning
// the '+' label.  A product state over slots is then the usual Kronecker
// product with slot 0 as the leftmost factor, and the all-'+' string sits at
// the last linear index.
//
// symmetrize() sums a product state over all distinguishable orderings of
// its point multiset.  Orderings are enumerated over combinations (positions
// of equal points), never over all (2S)! permutations, so the coherent case
// costs C(2S, S+M) products.  Generic multisets are capped at 2S <= 8 and
// two-valued (coherent) multisets at 2S <= 16.

#include <algorithm>
#include <string>
#include <vector>

#include "stellar/majorana.hpp"
#include "stellar/spin.hpp"
#include "stellar/types.hpp"
#include "stellar/wigner.hpp"

namespace stellar {

inline constexpr int kMaxGenericSlots = 8;
inline constexpr int kMaxCoherentSlots = 16;

/// Unit vector in the 2S-slot tensor space.
struct SymmetricTensorState {
  Spin spin;
  VectorC amplitudes;

  SymmetricTensorState(Spin s, VectorC a) : spin(s), amplitudes(std::move(a)) {
    if (amplitudes.size() != (Eigen::Index{1} << spin.twice()))
      throw std::invalid_argument(
          "SymmetricTensorState: amplitude count != 2^(2S)");
    if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12)
      throw std::invalid_argument("SymmetricTensorState: not unit norm");
  }

  int slot_count() const { return spin.twice(); }
};

namespace detail {

inline void check_tensor_cap(int slots, int cap) {
  if (slots > cap)
    throw capacity_error("tensor operation exceeds the slot cap");
}

/// Kronecker product of 2-vectors, slot 0 leftmost.
inline VectorC product_of_qubits(const std::vector<Vector2c>& factors) {
  VectorC v(1);
  v[0] = Complex(1, 0);
  for (const Vector2c& q : factors) {
    VectorC next(2 * v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      next[2 * k] = v[k] * q[0];
      next[2 * k + 1] = v[k] * q[1];
    }
    v = std::move(next);
  }
  return v;
}

}  // namespace detail

/// Tensor product of single-qubit '+' states along the given (ordered)
/// directions; not symmetric in general.
inline SymmetricTensorState product_state(const std::vector<BlochPoint>& points,
                                          Spin spin) {
  if (static_cast<int>(points.size()) != spin.twice())
    throw std::domain_error("product_state: need exactly 2S points");
  detail::check_tensor_cap(spin.twice(), kMaxCoherentSlots);
  std::vector<Vector2c> qs;
  qs.reserve(points.size());
  for (const BlochPoint& p : points) qs.push_back(qubit_plus(p.alpha, p.beta));
  return SymmetricTensorState(spin, detail::product_of_qubits(qs));
}

inline SymmetricTensorState product_state(const std::vector<BlochPoint>& points) {
  return product_state(points, Spin(static_cast<int>(points.size())));
}

/// Unnormalized sum of product states over every distinguishable ordering of
/// the multiset.  For a coherent multiset ((S+M) at one point, (S-M)
/// antipodal) the squared norm is (2S)!/((S+M)!(S-M)!).
inline VectorC symmetrized_sum(const std::vector<BlochPoint>& points,
                               Spin spin) {
  const int n = spin.twice();
  if (static_cast<int>(points.size()) != n)
    throw std::domain_error("symmetrized_sum: need exactly 2S points");

  // Points compare exactly; equal points are indistinguishable slots.
  std::vector<BlochPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(), bloch_less);
  std::vector<int> key(sorted.size());
  std::vector<BlochPoint> distinct;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k == 0 || !(sorted[k] == sorted[k - 1])) distinct.push_back(sorted[k]);
    key[k] = static_cast<int>(distinct.size()) - 1;
  }
  detail::check_tensor_cap(
      n, distinct.size() <= 2 ? kMaxCoherentSlots : kMaxGenericSlots);

  std::vector<Vector2c> qs;
  qs.reserve(distinct.size());
  for (const BlochPoint& p : distinct) qs.push_back(qubit_plus(p.alpha, p.beta));

  VectorC total = VectorC::Zero(Eigen::Index{1} << n);
  std::vector<Vector2c> arrangement(static_cast<std::size_t>(n));
  do {
    for (int k = 0; k < n; ++k)
      arrangement[static_cast<std::size_t>(k)] =
          qs[static_cast<std::size_t>(key[static_cast<std::size_t>(k)])];
    total += detail::product_of_qubits(arrangement);
  } while (std::next_permutation(key.begin(), key.end()));
  return total;
}

/// Normalized symmetrization of the point multiset.
inline SymmetricTensorState symmetrize(const std::vector<BlochPoint>& points,
                                       Spin spin) {
  VectorC total = symmetrized_sum(points, spin);
  return SymmetricTensorState(spin, total / total.norm());
}

inline SymmetricTensorState symmetrize(const std::vector<BlochPoint>& points) {
  return symmetrize(points, Spin(static_cast<int>(points.size())));
}

/// N = sqrt((2S)! / ((S+M)! (S-M)!)), the norm lost by symmetrizing a
/// coherent multiset; exact integer arithmetic under the square root.
inline Real normalization_constant(Spin spin, MagneticQuantumNumber m) {
  const int k = spin.index_of(m);  // S + M, validates m
  return std::sqrt(static_cast<Real>(binomial_exact(spin.twice(), k)));
}

/// Outcome subspace H_{M'}^{alpha,beta}: the span of every distinguishable
/// ordering of (S+M') '+' factors and (S-M') '-' factors along (alpha,
/// beta).  The generating product states are pairwise orthonormal and are
/// kept as the columns of `basis`.
struct OutcomeSubspace {
  Spin spin;
  MagneticQuantumNumber m_prime;
  Real alpha = 0;
  Real beta = 0;
  MatrixC basis;  // 2^(2S) x C(2S, S+M'), orthonormal columns

  int dimension() const { return static_cast<int>(basis.cols()); }
};

inline OutcomeSubspace outcome_subspace(Spin spin, MagneticQuantumNumber m_prime,
                                        Real alpha, Real beta) {
  const int n = spin.twice();
  const int n_plus = spin.index_of(m_prime);  // S + M', validates m'
  detail::check_tensor_cap(n, 12);
  const Vector2c plus = qubit_plus(alpha, beta);
  const Vector2c minus = qubit_minus(alpha, beta);

  std::string labels(static_cast<std::size_t>(n_plus), '+');
  labels.append(static_cast<std::size_t>(n - n_plus), '-');
  std::sort(labels.begin(), labels.end());

  MatrixC basis(Eigen::Index{1} << n, binomial_exact(n, n_plus));
  Eigen::Index col = 0;
  std::vector<Vector2c> arrangement(static_cast<std::size_t>(n));
  do {
    for (int k = 0; k < n; ++k)
      arrangement[static_cast<std::size_t>(k)] =
          labels[static_cast<std::size_t>(k)] == '+' ? plus : minus;
    basis.col(col++) = detail::product_of_qubits(arrangement);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return OutcomeSubspace{spin, m_prime, alpha, beta, std::move(basis)};
}

/// Squared norm of the orthogonal projection of the state onto the subspace.
inline Real projection_probability(const SymmetricTensorState& state,
                                   const OutcomeSubspace& sub) {
  if (state.spin != sub.spin)
    throw std::domain_error("projection_probability: spin mismatch");
  return (sub.basis.adjoint() * state.amplitudes).squaredNorm();
}

/// Exponents of the four single-qubit overlap factors in the k-th term of
/// the symmetrized overlap expansion.
struct OverlapExponents {
  int b_pp = 0;  // <+0|+ab>
  int b_mp = 0;  // <-0|+ab>
  int b_pm = 0;  // <+0|-ab>
  int b_mm = 0;  // <-0|-ab>
};

namespace detail {

inline void check_overlap_k(Spin spin, MagneticQuantumNumber m,
                            MagneticQuantumNumber m_prime, int k) {
  const int sp_m = spin.index_of(m);
  const int sp_p = spin.index_of(m_prime);
  const int k_lo = std::max(0, sp_m - sp_p);
  const int k_hi = std::min(spin.twice() - sp_p, sp_m);
  if (k < k_lo || k > k_hi)
    throw std::domain_error("permutation overlap: k out of range");
}

}  // namespace detail

inline OverlapExponents overlap_exponents(Spin spin, MagneticQuantumNumber m,
                                          MagneticQuantumNumber m_prime,
                                          int k) {
  detail::check_overlap_k(spin, m, m_prime, k);
  const int sp_m = spin.index_of(m);
  const int sp_p = spin.index_of(m_prime);
  return OverlapExponents{sp_m - k, sp_p - sp_m + k, k,
                          spin.twice() - sp_p - k};
}

/// a_k: the number of distinguishable orderings contributing the k-th
/// exponent pattern; an exact integer.
inline std::int64_t permutation_overlap_coefficient(Spin spin,
                                                    MagneticQuantumNumber m,
                                                    MagneticQuantumNumber m_prime,
                                                    int k) {
  detail::check_overlap_k(spin, m, m_prime, k);
  const int sp_m = spin.index_of(m);
  const int sp_p = spin.index_of(m_prime);
  const int sm_p = spin.twice() - sp_p;
  return binomial_exact(sp_p, sp_m - k) * binomial_exact(sm_p, k);
}

/// One record of the embedding check: the spin-S Born probability against
/// the projection of the symmetrized embedding.
struct EquivalenceReport {
  int twice_s = 0;
  int twice_m = 0;
  int twice_m_prime = 0;
  Real alpha = 0;
  Real beta = 0;
  Real lhs = 0;    // closed-form spin-S probability
  Real rhs = 0;    // projection probability in the tensor space
  Real delta = 0;  // |lhs - rhs|
  bool pass = false;
};

/// Symmetrized embedding of the basis state psi_M^0: (S+M) north-pole and
/// (S-M) south-pole factors.
inline SymmetricTensorState embed_coherent(Spin spin, MagneticQuantumNumber m) {
  const int n_plus = spin.index_of(m);
  std::vector<BlochPoint> pts(static_cast<std::size_t>(n_plus),
                              BlochPoint(0, 0));
  pts.resize(static_cast<std::size_t>(spin.twice()), BlochPoint(0, kPi));
  return symmetrize(pts, spin);
}

/// Symmetrized embedding of an arbitrary state: symmetrize the Majorana
/// constellation.  For coherent states this reduces to embed_coherent of the
/// rotated frame; in general it realizes the spin-S Born probabilities in
/// the tensor space.
inline SymmetricTensorState embed_state(const SpinState& s) {
  return symmetrize(state_to_constellation(s).points, s.spin());
}

inline EquivalenceReport verify_equivalence(Spin spin, MagneticQuantumNumber m,
                                            MagneticQuantumNumber m_prime,
                                            Real alpha, Real beta, Real tol) {
  const SymmetricTensorState embedded = embed_coherent(spin, m);
  const OutcomeSubspace sub = outcome_subspace(spin, m_prime, alpha, beta);

  EquivalenceReport r;
  r.twice_s = spin.twice();
  r.twice_m = m.twice_m;
  r.twice_m_prime = m_prime.twice_m;
  r.alpha = alpha;
  r.beta = beta;
  r.lhs = coherent_transition_closed_form(spin, m, m_prime, beta);
  r.rhs = projection_probability(embedded, sub);
  r.delta = std::abs(r.lhs - r.rhs);
  r.pass = r.delta < tol;
  return r;
}

}  // namespace stellar
