#pragma once

// Approximate left/right symmetry of real A-bounded operators, with the
// counterexample operators built explicitly.
//
// T is right symmetric when S ⊥_{eps(A)} T implies T ⊥_{eps(A)} S for every S,
// and left symmetric when T ⊥_{eps(A)} S implies S ⊥_{eps(A)} T. In finite
// dimensions the former holds exactly for A-isometries and the latter exactly
// for ||T||_A = 0. Witnesses are assembled in A0 coordinates of R(A) for
// T / ||T||_A and lifted back with zero action on N(A).

#include <optional>

#include "semiortho/approx_orth.hpp"

namespace semiortho {

enum class SymmetryKind { RightSymmetric, NotRightSymmetric, LeftSymmetric, NotLeftSymmetric };
enum class ConstructionTag { RightProof, LeftMultiPair, LeftCaseI, LeftCaseII };

const char* to_string(SymmetryKind kind);
const char* to_string(ConstructionTag tag);

struct LeftParameters {
  double eps = 0.0;
  double eps1 = 0.0;
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double alpha = 0.0;
};

// eps1 = (1 + eps)/2, t at half its admissible bound, alpha at the midpoint of
// its interval. At eps = 0 the interval closes to a point, which is used.
LeftParameters left_parameters(Epsilon eps);

struct WitnessConstruction {
  ConstructionTag tag = ConstructionTag::RightProof;
  Index multiplicity = 0;
  Matrix h0_basis;    // r x m, attainment subspace of T~ (coordinates)
  Matrix extension;   // remaining basis vectors used by the construction
  Vector w;           // unit vector orthogonal to T~(H0), resp. to T~x
  bool sign_flipped = false;
  std::optional<LeftParameters> params;
  double beta = 0.0;  // ||T~ x_k|| in case II
  Vector z1;
  Vector z2;
  Matrix coords_operator;  // S~ (r x r)
  Matrix op;               // lifted n x n operator, zero on N(A)
};

struct SymmetryReport {
  SymmetryKind kind = SymmetryKind::RightSymmetric;
  double eps = 0.0;
  double evidence = 0.0;  // isometry deviation (right) or ||T||_A (left)
  std::optional<WitnessConstruction> witness;
  // Direct-route checks of the witness: `must_hold` is U ⊥ T (right) or
  // T ⊥ S (left); `must_fail` is the reversed relation.
  std::optional<Verdict> must_hold;
  std::optional<Verdict> must_fail;
  bool verified = true;
};

WitnessConstruction right_witness(const ABoundedOperator& t, Epsilon eps);
WitnessConstruction left_witness(const ABoundedOperator& t, Epsilon eps);

SymmetryReport classify_right(const ABoundedOperator& t, Epsilon eps);
SymmetryReport classify_left(const ABoundedOperator& t, Epsilon eps);

// A = diag(1, 2), T = diag(2, 1), S = diag(0, 1), eps = 1/3: T ⊥ S while S is
// not orthogonal to T.
struct ReferencePair {
  Matrix a;
  Matrix t;
  Matrix s;
  double eps;
};

ReferencePair reference_asymmetric_pair();

}  // namespace semiortho
