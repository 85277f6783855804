#pragma once

// Deciders for T ⊥_{eps(A)} S, i.e.
//
//   ||T + lambda S||_A^2 >= ||T||_A^2 - 2 eps ||T||_A ||lambda S||_A  for all lambda.
//
// Three routes: direct minimization of the defining functional, the spectral
// criterion on the norm attainment subspace (real field) and the phase sweep
// over the same subspace (complex field). They are equivalent in finite
// dimensions and are kept independent of one another so they can cross-check.
//
// Operator margins are in units of <Tx, Sx>_A: the attainment routes report
// eps ||T|| ||S|| - min |<Tx, Sx>_A|, the direct route reports the one-sided
// slope of the functional (divided by 2) along the worst direction of lambda.

#include "semiortho/operator_space.hpp"
#include "semiortho/semi_inner.hpp"

namespace semiortho {

// g(lambda) = ||T + lambda S||_A^2 - ||T||_A^2 + 2 eps ||T||_A ||S||_A |lambda|.
double chmielinski_defect(const ABoundedOperator& t, const ABoundedOperator& s, Epsilon eps,
                          Complex lambda);

Verdict op_orth_direct(const ABoundedOperator& t, const ABoundedOperator& s, Epsilon eps);

Verdict op_orth_attainment_real(const ABoundedOperator& t, const ABoundedOperator& s,
                                Epsilon eps);

Verdict op_orth_theta_sweep_complex(const ABoundedOperator& t, const ABoundedOperator& s,
                                    Epsilon eps, int grid = 128);

// Requires M_A^T ⊆ M_A^S; evaluates Tx ⊥_{eps(A)} Sx at the best attaining x.
Verdict op_orth_pointwise(const ABoundedOperator& t, const ABoundedOperator& s, Epsilon eps);

struct SubsetCheck {
  bool contained = false;
  double residual = 0.0;  // ||(I - Q_S Q_S*) Q_T||_2 in A0 coordinates
};

SubsetCheck attainment_subset(const ABoundedOperator& t, const ABoundedOperator& s);

// Tolerance band used to flag boundary verdicts for this pair.
double operator_band(const ABoundedOperator& t, const ABoundedOperator& s);

}  // namespace semiortho
