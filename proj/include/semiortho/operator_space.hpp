#pragma once

// Operators on the semi-Hilbertian space: A-boundedness, the operator
// A-norm, norm attainment and the tilde reduction T~ = P T |R(A).
//
// In the A0-orthonormal coordinates u = W* x of R(A) the reduction is the
// r x r matrix W* T W^-, and ||T||_A is its largest singular value.

#include "semiortho/linalg.hpp"

namespace semiortho {

struct BoundednessCheck {
  bool bounded = true;
  double residual = 0.0;  // max ||A T v|| / (lambda_1 ||v|| max(1, max|T_ij|)) over N(A)
};

// Finite-dimensional criterion: T maps N(A) into N(A).
BoundednessCheck check_a_bounded(const PsdOperator& a, const Matrix& t);

class ABoundedOperator {
 public:
  // Throws NotABounded when T moves N(A) out of N(A).
  static ABoundedOperator make(PsdPtr a, Matrix t);

  const PsdOperator& space() const { return *a_; }
  const PsdPtr& space_ptr() const { return a_; }
  Index dim() const { return t_.rows(); }

  const Matrix& matrix() const { return t_; }
  // K = A^{1/2} T W^- (n x r).
  const Matrix& reduced() const { return k_; }
  // W* T W^- (r x r).
  const Matrix& tilde() const { return tilde_; }
  double norm() const { return norm_; }
  double boundedness_residual() const { return residual_; }

  Vector apply(const Vector& x) const { return t_ * x; }

  // Norms at or below this level are rounding noise of the reduction.
  double zero_threshold() const { return zero_threshold_; }
  bool is_zero() const { return norm_ <= zero_threshold_; }

 private:
  ABoundedOperator() = default;

  PsdPtr a_;
  Matrix t_;
  Matrix k_;
  Matrix tilde_;
  double norm_ = 0.0;
  double residual_ = 0.0;
  double zero_threshold_ = 0.0;
};

// The operator W^- C W*: acts as C in coordinates, zero on N(A).
Matrix lift(const PsdOperator& a, const Matrix& coords);

double operator_norm_a(PsdPtr a, const Matrix& t);

struct NormAttainment {
  double norm = 0.0;
  Matrix attain_coords;  // r x m, orthonormal columns (A0 coordinates)
  Matrix attain_basis;   // n x m, A-orthonormal vectors in R(A)
  Matrix null_basis;     // n x (n - r)
  RealVector singular_values;  // of T~, descending
  Matrix right_vectors;  // r x r, column k pairs with singular_values[k]
  Index multiplicity = 0;
};

// Top singular cluster sigma >= sigma_max (1 - cluster_tol). A zero-norm
// operator is attained by every A-unit vector, so the whole of R(A) is returned.
NormAttainment norm_attainment_set(const ABoundedOperator& t);

Matrix tilde_reduce(PsdPtr a, const Matrix& t);

struct IsometryCheck {
  bool isometry = false;
  double deviation = 0.0;  // (sigma_max^2 - sigma_min^2) / sigma_max^2
};

IsometryCheck is_a_isometry(const ABoundedOperator& t);

}  // namespace semiortho
