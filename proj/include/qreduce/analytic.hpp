#pragma once

#include "qreduce/types.hpp"

// Closed-form reference quantities for the classical repetition picture and
// the small-angle coherent model. These are the yardsticks the Monte Carlo
// results are checked against; they do no simulation themselves.
namespace qreduce {

// Probability of exactly l faults among 3 carriers: C(3,l) p^l (1-p)^(3-l).
Real binom_errors(Real p, int l);

// Residual error of one majority-vote correction round on 3 carriers:
// 3p^2 - 2p^3 (two or three faults defeat the vote).
Real correction_remainder_3(Real p);

// Post-selection acceptance of the n-carrier vote-or-reject filter:
// Q = (1-p)^n + p^n.
Real reduction_Q(Real p, int n);

// Conditional error after acceptance: P = p^n / Q.
Real reduction_P(Real p, int n);

// Leading-order form (p/(1-p))^n; handy when comparing decays.
Real reduction_P_approx(Real p, int n);

// Given that a one-fault pattern was corrected, the probability the true
// fault count was two — evaluated as the literal ratio p2/(p1+p2), which
// collapses algebraically to p. Requires 0 < p < 1.
Real conditional_error_after_one_correction(Real p);

// Acceptance of an M-station chain when each station sees the per-step
// disturbance reduced to p/M^2: (1 - p/M^2)^(n M).
Real zeno_Q(Real p, int n, int M);

// Leading-order success probability of the n=2 register under small
// coherent rotations: C^2 with C the product of the cosines of all 12
// angles (rows = 4 qubits, columns = theta, phi, eta). Leading order only —
// the true success deviates at second order in the phase angles.
Real c_factor(const AngleMatrix& angles);

}  // namespace qreduce
