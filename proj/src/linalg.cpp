#include "semiortho/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace semiortho {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kClusterGap = 1e-8;
// Rayleigh quotients below (kNullRel)^2 * lambda_1 are rounding noise.
constexpr double kNullRel = 1e-12;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One Jacobi sweep over all (p, q) pairs. The 2x2 rotation first removes the
// phase of a_pq and then applies the real symmetric Jacobi rotation.
void jacobi_sweep(Matrix& a, Matrix* v, double skip_below) {
  const Index n = a.rows();
  for (Index p = 0; p < n - 1; ++p) {
    for (Index q = p + 1; q < n; ++q) {
      const Complex apq = a(p, q);
      const double g = std::abs(apq);
      if (g <= skip_below) continue;
      const Complex phase = apq / g;
      const double app = a(p, p).real();
      const double aqq = a(q, q).real();
      const double tau = (aqq - app) / (2.0 * g);
      const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
      const double c = 1.0 / std::hypot(1.0, t);
      const double s = t * c;

      const Complex gpp = c;
      const Complex gpq = s;
      const Complex gqp = -s * std::conj(phase);
      const Complex gqq = c * std::conj(phase);

      for (Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
      }
      for (Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
      }
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      a(p, p) = a(p, p).real();
      a(q, q) = a(q, q).real();
      if (v != nullptr) {
        for (Index k = 0; k < n; ++k) {
          const Complex vkp = (*v)(k, p);
          const Complex vkq = (*v)(k, q);
          (*v)(k, p) = vkp * gpp + vkq * gqp;
          (*v)(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }
}

void jacobi_diagonalize(Matrix& a, Matrix* v) {
  const double frob = a.norm();
  if (frob == 0.0) return;
  const double stop = 1e-15 * frob;
  const double skip = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) return;
    jacobi_sweep(a, v, skip);
  }
  if (off_diagonal_norm(a) > 1e-12 * frob)
    throw Error(ErrorCode::Numerical, "Jacobi iteration did not converge");
}

void check_hermitian(const Matrix& m, double hermitian_tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::NotSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  const double scale = max_abs(m);
  if (scale == 0.0) return;
  const double asym = max_abs(m - m.adjoint());
  if (asym > hermitian_tol * scale)
    throw Error(ErrorCode::NotHermitian,
                "relative asymmetry " + std::to_string(asym / scale) + " exceeds tolerance");
}

void orthonormalize_columns(Matrix& v, Index first, Index last) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = first; j < last; ++j) {
      for (Index k = first; k < j; ++k) {
        const Complex proj = v.col(k).dot(v.col(j));
        v.col(j) -= proj * v.col(k);
      }
      v.col(j).normalize();
    }
  }
}

}  // namespace

const char* to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotABounded: return "NotABounded";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::RealField: return "RealField";
    case ErrorCode::ComplexField: return "ComplexField";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::IsIsometry: return "IsIsometry";
    case ErrorCode::SubsetHypothesisFails: return "SubsetHypothesisFails";
    case ErrorCode::Numerical: return "Numerical";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void Tolerances::validate() const {
  for (double t : {hermitian_tol, rank_tol, orth_tol, verdict_margin_tol, cluster_tol})
    if (!(t >= 0.0) || !std::isfinite(t))
      throw Error(ErrorCode::InvalidArgument, "tolerances must be finite and nonnegative");
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_real(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}

Eigensystem hermitian_eig(const Matrix& m, double hermitian_tol) {
  check_hermitian(m, hermitian_tol);
  const Index n = m.rows();
  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);
  jacobi_diagonalize(a, &v);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() > a(j, j).real(); });

  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }

  const double scale = n == 0 ? 0.0 : out.values.cwiseAbs().maxCoeff();
  Index start = 0;
  for (Index k = 1; k <= n; ++k) {
    const bool split = k == n || out.values[k - 1] - out.values[k] >= kClusterGap * scale;
    if (split) {
      if (k - start > 1) orthonormalize_columns(out.vectors, start, k);
      start = k;
    }
  }
  return out;
}

double hermitian_max_eigenvalue(const Matrix& m) {
  if (m.rows() == 1) return m(0, 0).real();
  Matrix a = 0.5 * (m + m.adjoint());
  jacobi_diagonalize(a, nullptr);
  return a.diagonal().real().maxCoeff();
}

double PsdOperator::lambda_min_positive() const {
  return rank_ == 0 ? 0.0 : eigenvalues_[rank_ - 1];
}

Matrix PsdOperator::range_projection() const {
  const auto up = positive_block();
  return up * up.adjoint();
}

bool PsdOperator::is_null(const Vector& x) const {
  check_vector(x, "x");
  const double ref = kNullRel * std::sqrt(lambda_max_) * x.norm();
  return coords(x).norm() <= ref;
}

void PsdOperator::check_vector(const Vector& x, const char* what) const {
  if (x.size() != dim())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has length " +
                                                  std::to_string(x.size()) + ", expected " +
                                                  std::to_string(dim()));
  if (field_ == Field::Real && !is_real(x))
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " has complex entries in a real space");
}

void PsdOperator::check_matrix(const Matrix& m, const char* what) const {
  if (m.rows() != dim() || m.cols() != dim())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is " +
                                                  std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()) + ", expected " +
                                                  std::to_string(dim()) + "x" +
                                                  std::to_string(dim()));
  if (field_ == Field::Real && !is_real(m))
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " has complex entries in a real space");
}

PsdOperator psd_decompose(const Matrix& a, Field field, const Tolerances& tol) {
  tol.validate();
  if (field == Field::Real && !is_real(a))
    throw Error(ErrorCode::InvalidArgument, "A has complex entries in a real space");
  Eigensystem eig = hermitian_eig(a, tol.hermitian_tol);

  PsdOperator out;
  out.field_ = field;
  out.tol_ = tol;
  out.a_ = 0.5 * (a + a.adjoint());
  const Index n = a.rows();
  const double scale = n == 0 ? 0.0 : eig.values.cwiseAbs().maxCoeff();
  const double cut = tol.rank_tol * scale;
  for (Index k = 0; k < n; ++k) {
    if (eig.values[k] < -cut)
      throw Error(ErrorCode::NotPositive,
                  "eigenvalue " + std::to_string(eig.values[k]) + " is below -rank_tol*lambda_1");
  }
  out.eigenvalues_ = eig.values;
  for (Index k = 0; k < n; ++k)
    if (out.eigenvalues_[k] <= cut) out.eigenvalues_[k] = 0.0;
  out.u_ = std::move(eig.vectors);
  out.rank_ = 0;
  while (out.rank_ < n && out.eigenvalues_[out.rank_] > 0.0) ++out.rank_;
  out.lambda_max_ = n == 0 ? 0.0 : out.eigenvalues_[0];

  const Index r = out.rank_;
  const RealVector lam = out.eigenvalues_.head(r);
  out.w_ = out.u_.leftCols(r) * lam.cwiseSqrt().asDiagonal();
  out.w_inv_ = out.u_.leftCols(r) * lam.cwiseSqrt().cwiseInverse().asDiagonal();
  return out;
}

PsdPtr make_psd(const Matrix& a, Field field, const Tolerances& tol) {
  return std::make_shared<const PsdOperator>(psd_decompose(a, field, tol));
}

Matrix sqrt_psd(const PsdOperator& a) {
  const Matrix& u = a.eigenvectors();
  return u * a.eigenvalues().cwiseSqrt().asDiagonal() * u.adjoint();
}

Matrix null_basis(const PsdOperator& a) {
  return a.null_block();
}

Matrix orthonormal_complement(const Matrix& q, Index count) {
  const Index n = q.rows();
  if (q.cols() + count > n)
    throw Error(ErrorCode::InvalidArgument, "complement larger than the ambient space");
  Matrix basis(n, q.cols() + count);
  basis.leftCols(q.cols()) = q;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index step = 0; step < count; ++step) {
    const Index filled = q.cols() + step;
    Index best = -1;
    double best_norm = -1.0;
    Vector best_vec;
    for (Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      Vector e = Vector::Unit(n, j);
      for (int pass = 0; pass < 2; ++pass)
        for (Index k = 0; k < filled; ++k) e -= basis.col(k).dot(e) * basis.col(k);
      const double nrm = e.norm();
      if (nrm > best_norm) {
        best = j;
        best_norm = nrm;
        best_vec = std::move(e);
      }
    }
    if (best < 0 || best_norm < 1e-8)
      throw Error(ErrorCode::Numerical, "could not complete orthonormal basis");
    used[static_cast<std::size_t>(best)] = true;
    basis.col(filled) = best_vec / best_norm;
  }
  return basis.rightCols(count);
}

}  // namespace semiortho
