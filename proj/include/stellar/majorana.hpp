#pragma once

// Stellar (Majorana) representation: the bidirectional map between spin-S
// rays and unordered multisets of 2S sphere points.
//
// A state with amplitudes psi_i (ascending, i = -S..S) is encoded as the
// polynomial
//
//     P(x) = sum_i w_i psi_i x^(S-i)
//
// with the coefficient of x^(S-i) stored at index i.  Two coefficient
// weightings are provided:
//
//   Bacry:    w_i = 1
//   Majorana: w_i = sqrt(binomial(2S, S+i))
//
// Only the Majorana weighting makes the root multiset transform rigidly with
// the state under rotations; the Bacry polynomial of the same state generally
// has a different constellation (the two coincide for S = 1/2 where all
// weights are 1).
//
// Root-to-sphere convention, fixed so that the coherent state (S, M=S) at
// direction (alpha, beta) maps to 2S copies of (alpha, beta):
//
//     root of [ e^{I a/2} sin(b/2) x + e^{-I a/2} cos(b/2) ]  <->  (a, b)
//
// hence a root r corresponds to beta = 2*atan(1/|r|), alpha = pi - arg(r);
// the root 0 is the south pole (0, pi) and the point at infinity (from a
// degree-deficient polynomial) is the north pole (0, 0).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "stellar/spin.hpp"
#include "stellar/types.hpp"
#include "stellar/wigner.hpp"

namespace stellar {

enum class PolynomialVariant { kBacry, kMajorana };

/// Projective coefficient vector of a spin state; coefficients[k] multiplies
/// x^(2S-k), i.e. x^(S-i) for the amplitude index i = k - S.
struct SpinPolynomial {
  Spin spin;
  VectorC coefficients;
  PolynomialVariant variant = PolynomialVariant::kMajorana;
};

/// A root of a spin polynomial: either a finite complex number or the point
/// at infinity contributed by a missing leading coefficient.
struct ProjectiveRoot {
  Complex value{0, 0};
  bool at_infinity = false;

  static ProjectiveRoot finite(Complex v) { return {v, false}; }
  static ProjectiveRoot infinity() { return {Complex(0, 0), true}; }
};

/// Multiset of 2S sphere points representing a spin-S ray.  Points are kept
/// in the canonical (beta, alpha) order.
struct Constellation {
  Spin spin;
  std::vector<BlochPoint> points;

  Constellation(Spin s, std::vector<BlochPoint> pts)
      : spin(s), points(std::move(pts)) {
    if (static_cast<int>(points.size()) != spin.twice())
      throw std::domain_error("Constellation: need exactly 2S points");
    std::sort(points.begin(), points.end(), bloch_less);
  }
};

inline SpinPolynomial build_polynomial(const SpinState& s,
                                       PolynomialVariant variant) {
  const int n = s.spin().dimension();
  VectorC c(n);
  for (int k = 0; k < n; ++k) {
    const Real w = variant == PolynomialVariant::kBacry
                       ? 1.0
                       : std::sqrt(static_cast<Real>(
                             binomial_exact(s.spin().twice(), k)));
    c[k] = w * s.amplitudes()[k];
  }
  return SpinPolynomial{s.spin(), std::move(c), variant};
}

namespace detail {

/// p evaluated with coefficients ordered leading-first.
inline Complex poly_eval(const VectorC& c, Complex x) {
  Complex r = 0;
  for (Eigen::Index k = 0; k < c.size(); ++k) r = r * x + c[k];
  return r;
}

/// Derivative, coefficients leading-first.
inline VectorC poly_derivative(const VectorC& c) {
  const Eigen::Index d = c.size() - 1;
  if (d <= 0) return VectorC::Zero(1);
  VectorC out(d);
  for (Eigen::Index k = 0; k < d; ++k)
    out[k] = c[k] * static_cast<Real>(d - k);
  return out;
}

/// Expand lead * prod_k (x - z_k), coefficients leading-first.
inline VectorC poly_from_roots(const std::vector<Complex>& roots,
                               Complex lead) {
  VectorC c(1);
  c[0] = lead;
  for (Complex z : roots) {
    VectorC next = VectorC::Zero(c.size() + 1);
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= z * c[k];
    }
    c = next;
  }
  return c;
}

inline std::vector<Complex> companion_eigenvalues(const VectorC& monic_tail) {
  // monic_tail holds a_{d-1}, ..., a_0 of x^d + a_{d-1} x^{d-1} + ... + a_0.
  const Eigen::Index d = monic_tail.size();
  MatrixC comp = MatrixC::Zero(d, d);
  for (Eigen::Index k = 0; k + 1 < d; ++k) comp(k + 1, k) = 1;
  for (Eigen::Index k = 0; k < d; ++k)
    comp(k, d - 1) = -monic_tail[d - 1 - k];
  Eigen::ComplexEigenSolver<MatrixC> solver(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> out(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) out[static_cast<std::size_t>(k)] = solver.eigenvalues()[k];
  return out;
}

/// |p(z)| relative to the evaluation scale sum_k |c_k| |z|^k; the level at
/// which z counts as a root within backward error.
inline Real relative_value_at(const VectorC& c, Complex z) {
  Complex value = 0;
  Real scale = 0;
  const Real az = std::abs(z);
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    value = value * z + c[k];
    scale = scale * az + std::abs(c[k]);
  }
  return scale == 0 ? 0 : std::abs(value) / scale;
}

/// Replace clusters of near-coincident eigenvalues by copies of the nearby
/// simple root of the (m-1)-th derivative.  An m-fold root is only accurate
/// to eps^(1/m) out of the companion matrix, while the derivative root is
/// well conditioned.  The repair is kept only when z annihilates p and its
/// first m-1 derivatives to within backward error (~1e-11): a true m-fold
/// root sits at rounding level, while merging simple roots a distance d
/// apart leaves residuals of order d^2, so genuinely distinct roots are
/// never coalesced.
inline void repair_root_clusters(const VectorC& coeffs,
                                 std::vector<Complex>& roots) {
  const std::size_t n = roots.size();
  if (n < 2) return;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Real scale = 1.0 + 0.5 * (std::abs(roots[a]) + std::abs(roots[b]));
      if (std::abs(roots[a] - roots[b]) <= 0.05 * scale)
        parent[find(a)] = find(b);
    }

  for (std::size_t rep = 0; rep < n; ++rep) {
    if (find(rep) != rep) continue;
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < n; ++k)
      if (find(k) == rep) members.push_back(k);
    const int m = static_cast<int>(members.size());
    if (m < 2) continue;

    Complex centroid = 0;
    Real radius = 0;
    for (std::size_t k : members) centroid += roots[k];
    centroid /= static_cast<Real>(m);
    for (std::size_t k : members)
      radius = std::max(radius, std::abs(roots[k] - centroid));

    VectorC deriv = coeffs;
    for (int k = 0; k < m - 1; ++k) deriv = poly_derivative(deriv);
    VectorC deriv2 = poly_derivative(deriv);
    Complex z = centroid;
    Complex best = centroid;
    Real best_f = std::abs(poly_eval(deriv, centroid));
    for (int it = 0; it < 60; ++it) {
      const Complex dv = poly_eval(deriv2, z);
      if (dv == Complex(0, 0)) break;
      const Complex step = poly_eval(deriv, z) / dv;
      z -= step;
      const Real f = std::abs(poly_eval(deriv, z));
      if (f < best_f) {
        best_f = f;
        best = z;
      }
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    z = best;
    if (std::abs(z - centroid) > 4 * radius + 1e-12) continue;

    bool is_multiple_root = true;
    VectorC check = coeffs;
    for (int j = 0; j < m && is_multiple_root; ++j) {
      if (relative_value_at(check, z) > 1e-11) is_multiple_root = false;
      check = poly_derivative(check);
    }
    if (is_multiple_root)
      for (std::size_t k : members) roots[k] = z;
  }
}

}  // namespace detail

/// All 2S projective roots of the polynomial, exact multiplicities at 0 and
/// infinity obtained by stripping exactly-zero end coefficients, the rest
/// from the companion-matrix eigenvalues with Newton refinement and
/// multiple-root repair.
inline std::vector<ProjectiveRoot> roots(const SpinPolynomial& p) {
  VectorC c = p.coefficients;
  if (c.cwiseAbs().maxCoeff() == 0)
    throw std::domain_error("roots: all coefficients are zero");
  c /= c.cwiseAbs().maxCoeff();  // conditioning only; the object is projective

  Eigen::Index lead = 0;
  while (c[lead] == Complex(0, 0)) ++lead;  // roots at infinity
  Eigen::Index tail = c.size() - 1;
  while (c[tail] == Complex(0, 0)) --tail;  // roots at zero

  std::vector<ProjectiveRoot> out;
  for (Eigen::Index k = 0; k < lead; ++k)
    out.push_back(ProjectiveRoot::infinity());
  for (Eigen::Index k = tail; k < c.size() - 1; ++k)
    out.push_back(ProjectiveRoot::finite(Complex(0, 0)));

  const Eigen::Index d = tail - lead;
  if (d > 0) {
    VectorC core = c.segment(lead, d + 1);
    VectorC monic_tail = core.tail(d) / core[0];
    std::vector<Complex> finite = detail::companion_eigenvalues(monic_tail);
    // one Newton step per root, then cluster repair for multiple roots
    const VectorC deriv = detail::poly_derivative(core);
    for (Complex& z : finite) {
      const Complex dv = detail::poly_eval(deriv, z);
      if (dv != Complex(0, 0)) z -= detail::poly_eval(core, z) / dv;
    }
    detail::repair_root_clusters(core, finite);
    for (Complex z : finite) out.push_back(ProjectiveRoot::finite(z));
  }
  return out;
}

/// Sphere point of a projective root under the fixed factor convention.
inline BlochPoint bloch_of_root(const ProjectiveRoot& r) {
  if (r.at_infinity) return BlochPoint(0, 0);
  const Real mag = std::abs(r.value);
  if (mag == 0) return BlochPoint(0, kPi);
  return BlochPoint(kPi - std::arg(r.value), 2 * std::atan2(Real(1), mag));
}

/// The degree-one factor whose root is the given sphere point; coefficients
/// leading-first.  This is exactly the '+' outcome vector along the point,
/// read as a linear polynomial.
inline Vector2c stellar_factor(const BlochPoint& p) {
  return qubit_plus(p.alpha, p.beta);
}

/// Majorana representation of a state: the 2S root points of its weighted
/// polynomial.  Invariant under a global phase of the input.
inline Constellation state_to_constellation(const SpinState& s) {
  const SpinPolynomial p = build_polynomial(s, PolynomialVariant::kMajorana);
  std::vector<BlochPoint> pts;
  pts.reserve(static_cast<std::size_t>(s.spin().twice()));
  for (const ProjectiveRoot& r : roots(p)) pts.push_back(bloch_of_root(r));
  return Constellation(s.spin(), std::move(pts));
}

/// Inverse map: expand the product of the 2S degree-one factors, remove the
/// binomial weights and normalize.  Exact inverse of state_to_constellation
/// up to ray equality; independent of the point order.
inline SpinState constellation_to_state(const Constellation& c) {
  const int n = c.spin.twice();
  VectorC prod(1);
  prod[0] = Complex(1, 0);
  for (const BlochPoint& p : c.points) {
    const Vector2c f = stellar_factor(p);
    VectorC next = VectorC::Zero(prod.size() + 1);
    for (Eigen::Index k = 0; k < prod.size(); ++k) {
      next[k] += f[0] * prod[k];
      next[k + 1] += f[1] * prod[k];
    }
    prod = next;
  }
  // A north-pole factor has zero x-coefficient, so degree deficiency shows
  // up as exact leading zeros; prod always has 2S+1 entries.
  for (int k = 0; k <= n; ++k)
    prod[k] /= std::sqrt(static_cast<Real>(binomial_exact(n, k)));
  return SpinState::normalized(c.spin, prod);
}

}  // namespace stellar
