#pragma once

// Classical hidden-variable realization of a single spin-1/2 measurement,
// and its composition with the cascade.
//
// The mechanism: the entity is a sphere point, the measurement a direction.
// A hidden variable lambda is drawn uniformly on [-1, 1] along the
// measurement diameter and the outcome is '+' exactly when lambda does not
// exceed the projection cos(theta) of the state point onto the direction.
// Averaging the indicator over lambda gives P(+) = (1 + cos theta)/2, the
// quantum spin-1/2 law, with nothing but a uniform measure on a classical
// variable.
//
// Mixed proper states met during a cascade over n remaining entities are
// realized by decomposing them into n pure states and selecting one
// uniformly at random; all randomness is Kolmogorovian (uniform lambda and
// uniform selection).

#include <cmath>
#include <vector>

#include "stellar/cascade.hpp"
#include "stellar/rng.hpp"
#include "stellar/spin.hpp"
#include "stellar/types.hpp"
#include "stellar/wigner.hpp"

namespace stellar {

struct HiddenVariable {
  Real lambda = 0;  // in [-1, 1]
};

/// Deterministic outcome for a given hidden variable; ties resolve to '+'.
inline char aerts_decide(const BlochPoint& state, const BlochPoint& direction,
                         HiddenVariable lv) {
  const Real c = state.cartesian().dot(direction.cartesian());
  return lv.lambda <= c ? '+' : '-';
}

/// Closed-form lambda-average of aerts_decide.
inline Real aerts_plus_probability(const BlochPoint& state,
                                   const BlochPoint& direction) {
  return (1 + state.cartesian().dot(direction.cartesian())) / 2;
}

inline char aerts_sample(const BlochPoint& state, const BlochPoint& direction,
                         RngStream& rng) {
  return aerts_decide(state, direction, HiddenVariable{rng.next_symmetric()});
}

/// Run the cascade with every individual spin-1/2 measurement realized by
/// the classical mechanism: the next entity's proper state (its reduced
/// density) is decomposed into as many pure states as entities remain, one
/// is selected uniformly, the binary outcome comes from a lambda draw
/// against that pure state's sphere point, and the observed label drives the
/// same deterministic correlation update as the quantum cascade.
inline CascadeResult classical_cascade(const SymmetricTensorState& initial,
                                       Real alpha, Real beta, RngStream& rng,
                                       long* lambda_draws = nullptr) {
  CascadeState s = start_cascade(initial, alpha, beta);
  const BlochPoint direction(alpha, beta);
  CascadeResult r;
  for (int n = initial.slot_count(); n >= 1; --n) {
    const QubitDensity proper = reduced_density(s.remaining, n, 0);
    const std::vector<Vector2c> pures = decompose_density(proper, n);
    const Vector2c& pick = pures[static_cast<std::size_t>(rng.next_index(n))];
    char label = aerts_sample(bloch_of_qubit(pick), direction, rng);
    if (lambda_draws != nullptr) ++*lambda_draws;
    // A lambda tie at cos(theta) = -1 is measure-zero and can point at a
    // branch of exactly zero weight; resolve it to the feasible branch.
    const StepProbabilities p = step_probabilities(s);
    if (label == '+' && p.plus == 0) label = '-';
    if (label == '-' && p.minus == 0) label = '+';
    if (label == '+')
      ++r.n_plus;
    else
      ++r.n_minus;
    apply_outcome(s, label);
  }
  r.outcomes = s.outcomes;
  r.twice_m_prime = r.n_plus - r.n_minus;
  return r;
}

/// Exact outcome law of the classical cascade: the finite choice tree summed
/// with the analytic lambda-marginal at every step.  Agrees with
/// exact_cascade_distribution because the uniform mixture of the decomposed
/// pure states has the proper state's Bloch vector.
inline std::vector<Real> classical_exact_distribution(
    const SymmetricTensorState& initial, Real alpha, Real beta) {
  if (initial.slot_count() > kMaxExactCascadeSlots)
    throw capacity_error("classical_exact_distribution: 2S > 12");
  const BlochPoint direction(alpha, beta);
  std::vector<Real> out(static_cast<std::size_t>(initial.slot_count() + 1), 0.0);

  struct Walker {
    const BlochPoint& dir;
    std::vector<Real>& out;

    void walk(CascadeState& s, Real weight, int n_plus) {
      const int n = s.slots_left();
      if (n == 0) {
        out[static_cast<std::size_t>(n_plus)] += weight;
        return;
      }
      const QubitDensity proper = reduced_density(s.remaining, n, 0);
      Real p_plus = 0;
      for (const Vector2c& pure : decompose_density(proper, n))
        p_plus += aerts_plus_probability(bloch_of_qubit(pure), dir);
      p_plus /= n;
      // Branch existence is gated on the joint state so the walk never
      // divides a zero-weight branch; the classical marginal vanishes
      // together with the quantum one up to rounding.
      const StepProbabilities gate = step_probabilities(s);
      if (p_plus > 0 && gate.plus > 0) {
        CascadeState t = s;
        apply_outcome(t, '+');
        walk(t, weight * p_plus, n_plus + 1);
      }
      if (p_plus < 1 && gate.minus > 0) {
        CascadeState t = s;
        apply_outcome(t, '-');
        walk(t, weight * (1 - p_plus), n_plus);
      }
    }
  };

  CascadeState s = start_cascade(initial, alpha, beta);
  Walker{direction, out}.walk(s, 1.0, 0);
  return out;
}

}  // namespace stellar
