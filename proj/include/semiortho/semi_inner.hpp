#pragma once

// Vector-level geometry of the A-seminorm: inner products, exact and
// approximate orthogonality, the orthogonal decomposition of y relative to x,
// the one-sided cones along a unimodular direction, and the directional
// derivative of the seminorm.

#include <optional>

#include "semiortho/linalg.hpp"

namespace semiortho {

// Approximation parameter, always in [0, 1).
class Epsilon {
 public:
  explicit Epsilon(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

enum class Method {
  Definition,          // closed-form inner-product predicate
  Attainment,          // spectral criterion on the norm attainment set
  ThetaSweep,          // phase sweep over the attainment set (complex field)
  DirectMinimization,  // minimizes the Chmielinski functional over lambda
  Pointwise,           // vector predicate evaluated at an attaining vector
};

const char* to_string(Method method);

// Verdict of any orthogonality decider.
//
// `margin` is a signed slack in the units of <x, y>_A (or ||T||_A ||S||_A
// for operators): holds <=> margin >= -tol. `boundary` marks |margin| within
// the tolerance band; such verdicts resolve to holds because every predicate
// here is a closed condition. `defect` is the value of the Chmielinski
// functional at `lambda`, the minimizer along the worst descent ray found by
// direct minimization; it is negative only when that lambda certifies a
// failure, and 0 when the predicate holds.
struct Verdict {
  bool holds = false;
  bool boundary = false;
  double margin = 0.0;
  double defect = 0.0;
  Method method = Method::Definition;

  std::optional<Complex> lambda;  // minimizing scalar (direct route)
  std::optional<Vector> x;        // attaining / minimizing vector
  std::optional<Vector> y;        // second phase witness (theta sweep)
  std::optional<double> theta;    // worst phase (theta sweep)
};

using OrthoVerdict = Verdict;

// Sets holds/boundary from a margin and a tolerance band.
Verdict verdict_from_margin(double margin, double band, Method method);

// True when the two verdicts agree, or either one sits inside its boundary band.
bool routes_agree(const Verdict& a, const Verdict& b);

Complex inner_a(const PsdOperator& a, const Vector& x, const Vector& y);
double norm_a(const PsdOperator& a, const Vector& x);

Verdict is_a_orthogonal(const PsdOperator& a, const Vector& x, const Vector& y);
Verdict is_eps_orthogonal(const PsdOperator& a, const Vector& x, const Vector& y,
                          Epsilon eps);
Verdict is_chmielinski_orthogonal_vec(const PsdOperator& a, const Vector& x, const Vector& y,
                                      Epsilon eps);

// z = y - conj(<x,y>_A)/||x||_A^2 x, or y when ||x||_A = 0. x is A-orthogonal
// to z, and ||z - y||_A <= eps ||y||_A whenever x is (eps,A)-orthogonal to y.
Vector orthogonal_decomposition(const PsdOperator& a, const Vector& x, const Vector& y);

enum class Cone { PlusOnly, MinusOnly, Both };

const char* to_string(Cone cone);

// Which of the half-line cones {t alpha, t >= 0} / {t alpha, t <= 0} leave
// ||x + t alpha y||_A >= ||x||_A. alpha must be unimodular with arg in [0, pi)
// (alpha = 1 in a real space).
Cone cone_membership(const PsdOperator& a, const Vector& x, const Vector& y, Complex alpha);

// Re <x, y>_A for an A-unit x: the derivative of lambda -> ||x + lambda y||_A
// at 0 along the reals.
double directional_derivative(const PsdOperator& a, const Vector& x, const Vector& y);

}  // namespace semiortho
