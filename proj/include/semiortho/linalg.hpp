#pragma once

// Dense Hermitian linear algebra for the A-seminorm geometry.
//
// Everything is stored as complex double; a real-field problem is one whose
// inputs have identically zero imaginary parts. The positive operator A is
// factored once (PsdOperator) and every seminorm quantity downstream is
// evaluated through its coordinate map W = U+ Lambda+^{1/2}:
//
//   <x, y>_A = <W* x, W* y>,   ||x||_A = ||W* x||_2.
//
// Inner products are linear in the first argument and conjugate-linear in
// the second.

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace semiortho {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Field { Real, Complex };

const char* to_string(Field field);

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotSquare,
  NotHermitian,
  NotPositive,
  NotABounded,
  InvalidEpsilon,
  NotAUnit,
  ZeroNorm,
  RealField,
  ComplexField,
  RankTooSmall,
  IsIsometry,
  SubsetHypothesisFails,
  Numerical,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Tolerances {
  double hermitian_tol = 1e-10;      // max |A - A*| relative to max |A_ij|
  double rank_tol = 1e-10;           // eigenvalue clipping, relative to lambda_1
  double orth_tol = 1e-8;            // exact A-orthogonality
  double verdict_margin_tol = 1e-9;  // closed-predicate slack
  double cluster_tol = 1e-8;         // relative gap for attainment clusters

  void validate() const;
};

struct Eigensystem {
  RealVector values;  // descending
  Matrix vectors;     // unitary, column k pairs with values[k]
};

// Cyclic Jacobi for Hermitian matrices. Eigenvectors of numerically repeated
// eigenvalues are re-orthonormalized cluster by cluster.
Eigensystem hermitian_eig(const Matrix& m, double hermitian_tol = 1e-10);

// Largest eigenvalue only; same kernel, no sorting or cluster cleanup.
double hermitian_max_eigenvalue(const Matrix& m);

class PsdOperator {
 public:
  Index dim() const { return a_.rows(); }
  Index rank() const { return rank_; }
  Field field() const { return field_; }
  const Tolerances& tolerances() const { return tol_; }

  // Symmetrized input matrix.
  const Matrix& matrix() const { return a_; }
  // U+ Lambda+ U+*, the clipped operator every seminorm is evaluated with.
  Matrix effective() const { return w_ * w_.adjoint(); }

  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return u_; }
  double lambda_max() const { return lambda_max_; }
  // Smallest eigenvalue kept in the positive block (0 when rank is 0).
  double lambda_min_positive() const;

  auto positive_block() const { return u_.leftCols(rank_); }
  auto null_block() const { return u_.rightCols(dim() - rank_); }
  Matrix range_projection() const;

  // W = U+ Lambda+^{1/2} and W^- = U+ Lambda+^{-1/2}; W* W^- = I_r.
  const Matrix& coord_map() const { return w_; }
  const Matrix& coord_inverse() const { return w_inv_; }

  // Coordinates of the range component of x in an A0-orthonormal basis.
  Vector coords(const Vector& x) const { return w_.adjoint() * x; }
  Vector from_coords(const Vector& u) const { return w_inv_ * u; }

  // ||x||_A is indistinguishable from rounding noise relative to ||x||.
  bool is_null(const Vector& x) const;

  void check_vector(const Vector& x, const char* what) const;
  void check_matrix(const Matrix& m, const char* what) const;

 private:
  friend PsdOperator psd_decompose(const Matrix&, Field, const Tolerances&);
  PsdOperator() = default;

  Field field_ = Field::Real;
  Tolerances tol_;
  Matrix a_;
  RealVector eigenvalues_;
  Matrix u_;
  Index rank_ = 0;
  double lambda_max_ = 0.0;
  Matrix w_;
  Matrix w_inv_;
};

using PsdPtr = std::shared_ptr<const PsdOperator>;

PsdOperator psd_decompose(const Matrix& a, Field field = Field::Real,
                          const Tolerances& tol = {});
PsdPtr make_psd(const Matrix& a, Field field = Field::Real,
                const Tolerances& tol = {});

Matrix sqrt_psd(const PsdOperator& a);
Matrix null_basis(const PsdOperator& a);

// `count` orthonormal columns orthogonal to the (orthonormal) columns of q,
// chosen greedily from the standard basis by largest residual.
Matrix orthonormal_complement(const Matrix& q, Index count);

double max_abs(const Matrix& m);
bool is_real(const Matrix& m);

}  // namespace semiortho
