#include "semiortho/operator_space.hpp"

#include <algorithm>
#include <cmath>

namespace semiortho {

BoundednessCheck check_a_bounded(const PsdOperator& a, const Matrix& t) {
  a.check_matrix(t, "T");
  BoundednessCheck out;
  const Index n = a.dim();
  if (a.rank() == n || a.rank() == 0) return out;
  const Matrix image = a.matrix() * t * a.null_block();
  const double scale = a.lambda_max() * std::max(1.0, max_abs(t));
  for (Index j = 0; j < image.cols(); ++j)
    out.residual = std::max(out.residual, image.col(j).norm() / scale);
  out.bounded = out.residual <= a.tolerances().rank_tol;
  return out;
}

ABoundedOperator ABoundedOperator::make(PsdPtr a, Matrix t) {
  if (!a) throw Error(ErrorCode::InvalidArgument, "null space handle");
  const BoundednessCheck check = check_a_bounded(*a, t);
  if (!check.bounded)
    throw Error(ErrorCode::NotABounded,
                "T does not map N(A) into N(A) (residual " + std::to_string(check.residual) + ")");

  ABoundedOperator out;
  out.a_ = std::move(a);
  out.t_ = std::move(t);
  out.residual_ = check.residual;
  const PsdOperator& psd = *out.a_;
  out.k_ = sqrt_psd(psd) * out.t_ * psd.coord_inverse();
  out.tilde_ = psd.coord_map().adjoint() * out.t_ * psd.coord_inverse();
  if (psd.rank() > 0) {
    const Matrix gram = out.tilde_.adjoint() * out.tilde_;
    out.norm_ = std::sqrt(std::max(0.0, hermitian_max_eigenvalue(gram)));
    const double cond = std::sqrt(psd.lambda_max() / psd.lambda_min_positive());
    out.zero_threshold_ = psd.tolerances().rank_tol * cond * out.t_.norm();
  }
  return out;
}

Matrix lift(const PsdOperator& a, const Matrix& coords) {
  if (coords.rows() != a.rank() || coords.cols() != a.rank())
    throw Error(ErrorCode::DimensionMismatch, "coordinate matrix must be rank(A) x rank(A)");
  return a.coord_inverse() * coords * a.coord_map().adjoint();
}

double operator_norm_a(PsdPtr a, const Matrix& t) {
  return ABoundedOperator::make(std::move(a), t).norm();
}

NormAttainment norm_attainment_set(const ABoundedOperator& t) {
  const PsdOperator& a = t.space();
  const Index r = a.rank();
  NormAttainment out;
  out.norm = t.norm();
  out.null_basis = null_basis(a);
  if (r == 0) {
    out.attain_coords.resize(0, 0);
    out.attain_basis.resize(a.dim(), 0);
    return out;
  }

  const Eigensystem eig =
      hermitian_eig(t.tilde().adjoint() * t.tilde(), a.tolerances().hermitian_tol);
  out.singular_values = eig.values.cwiseMax(0.0).cwiseSqrt();
  out.right_vectors = eig.vectors;

  if (t.is_zero()) {
    out.multiplicity = r;
  } else {
    const double cut = out.singular_values[0] * (1.0 - a.tolerances().cluster_tol);
    out.multiplicity = 1;
    while (out.multiplicity < r && out.singular_values[out.multiplicity] >= cut)
      ++out.multiplicity;
  }
  out.attain_coords = eig.vectors.leftCols(out.multiplicity);
  out.attain_basis = a.coord_inverse() * out.attain_coords;
  return out;
}

Matrix tilde_reduce(PsdPtr a, const Matrix& t) {
  return ABoundedOperator::make(std::move(a), t).tilde();
}

IsometryCheck is_a_isometry(const ABoundedOperator& t) {
  IsometryCheck out;
  if (t.is_zero() || t.space().rank() == 0) {
    out.isometry = true;
    return out;
  }
  const double n2 = t.norm() * t.norm();
  const Matrix gram = t.tilde().adjoint() * t.tilde();
  const Index r = gram.rows();
  const double off = (gram - n2 * Matrix::Identity(r, r)).norm();
  const double smin2 = std::max(0.0, -hermitian_max_eigenvalue(-gram));
  out.deviation = (n2 - smin2) / n2;
  out.isometry = off <= 1e-8 * n2;
  return out;
}

}  // namespace semiortho
