#include "semiortho/symmetry.hpp"

#include <algorithm>
#include <cmath>

namespace semiortho {

namespace {

// Singular values taken from eigenvalues of C*C carry sqrt(machine eps)
// noise near zero, so the case split looks at ||C x_k|| directly.
constexpr double kCaseOneCut = 1e-7;

void require_real(const ABoundedOperator& t) {
  if (t.space().field() != Field::Real)
    throw Error(ErrorCode::ComplexField, "symmetry classification is for real spaces only");
}

// Modified Gram-Schmidt on the columns, twice.
Matrix orthonormalize(Matrix q) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < q.cols(); ++j) {
      for (Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
      q.col(j).normalize();
    }
  }
  return q;
}

struct Normalized {
  Matrix c;  // T~ / ||T||_A
  NormAttainment attainment;
};

Normalized normalized(const ABoundedOperator& t) {
  if (t.is_zero()) throw Error(ErrorCode::ZeroNorm, "||T||_A = 0");
  Normalized out;
  out.c = t.tilde() / t.norm();
  out.attainment = norm_attainment_set(t);
  out.attainment.singular_values /= t.norm();
  return out;
}

void verify(SymmetryReport& report, const ABoundedOperator& t, Epsilon eps, bool right) {
  const ABoundedOperator w = ABoundedOperator::make(t.space_ptr(), report.witness->op);
  report.must_hold = right ? op_orth_direct(w, t, eps) : op_orth_direct(t, w, eps);
  report.must_fail = right ? op_orth_direct(t, w, eps) : op_orth_direct(w, t, eps);
  report.verified = report.must_hold->holds && !report.must_fail->holds;
}

}  // namespace

const char* to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::RightSymmetric: return "right_symmetric";
    case SymmetryKind::NotRightSymmetric: return "not_right_symmetric";
    case SymmetryKind::LeftSymmetric: return "left_symmetric";
    case SymmetryKind::NotLeftSymmetric: return "not_left_symmetric";
  }
  return "unknown";
}

const char* to_string(ConstructionTag tag) {
  switch (tag) {
    case ConstructionTag::RightProof: return "right_proof";
    case ConstructionTag::LeftMultiPair: return "left_multi_pair";
    case ConstructionTag::LeftCaseI: return "left_case_i";
    case ConstructionTag::LeftCaseII: return "left_case_ii";
  }
  return "unknown";
}

LeftParameters left_parameters(Epsilon eps) {
  LeftParameters p;
  const double e = eps.value();
  p.eps = e;
  p.eps1 = 0.5 * (1.0 + e);
  const double s1 = std::sqrt(1.0 - p.eps1 * p.eps1);
  const double se = std::sqrt(1.0 - e * e);
  p.t = 0.25 * (1.0 - e * s1 / (p.eps1 * se));
  p.a = e * p.eps1 + (1.0 - 2.0 * p.t) * se * s1;
  p.b = std::sqrt(1.0 - p.a * p.a);
  p.alpha_lo = (p.a * p.eps1 - e) / (s1 * p.b);
  p.alpha_hi = std::min(1.0, (p.a * p.eps1 + e) / (s1 * p.b));
  if (!(p.alpha_lo < 1.0) || p.alpha_hi < p.alpha_lo || !(p.b > 0.0))
    throw Error(ErrorCode::Numerical, "empty alpha interval at eps = " + std::to_string(e));
  p.alpha = 0.5 * (p.alpha_lo + p.alpha_hi);
  return p;
}

WitnessConstruction right_witness(const ABoundedOperator& t, Epsilon eps) {
  (void)eps;  // the construction does not depend on eps
  require_real(t);
  const PsdOperator& a = t.space();
  const Index r = a.rank();
  const Normalized nt = normalized(t);
  if (r < 2 || is_a_isometry(t).isometry || nt.attainment.multiplicity >= r)
    throw Error(ErrorCode::IsIsometry, "T is an A-isometry; no right-symmetry witness exists");

  const Index m = nt.attainment.multiplicity;
  const Matrix& x = nt.attainment.right_vectors;
  const Matrix& c = nt.c;

  WitnessConstruction out;
  out.tag = ConstructionTag::RightProof;
  out.multiplicity = m;
  out.h0_basis = x.leftCols(m);
  out.extension = x.rightCols(r - m);

  const Matrix images = orthonormalize(c * out.h0_basis);
  out.w = orthonormal_complement(images, 1).col(0);
  const Vector next = c * x.col(m);
  if (next.dot(out.w).real() < 0.0) {
    out.w = -out.w;
    out.sign_flipped = true;
  }

  Matrix y = Matrix::Zero(r, r);
  y.leftCols(m) = -(c * out.h0_basis);
  y.col(m) = out.w;
  out.coords_operator = y * x.adjoint();
  out.op = lift(a, out.coords_operator);
  return out;
}

WitnessConstruction left_witness(const ABoundedOperator& t, Epsilon eps) {
  require_real(t);
  const PsdOperator& a = t.space();
  const Index r = a.rank();
  if (r < 2) throw Error(ErrorCode::RankTooSmall, "left witnesses need dim R(A) >= 2");
  const Normalized nt = normalized(t);
  const Matrix& c = nt.c;
  const Matrix& x = nt.attainment.right_vectors;
  const Index m = nt.attainment.multiplicity;

  WitnessConstruction out;
  out.multiplicity = m;
  out.h0_basis = x.leftCols(m);
  out.extension = x.rightCols(r - m);

  if (m >= 2) {
    out.tag = ConstructionTag::LeftMultiPair;
    out.z1 = x.col(0);
    out.z2 = x.col(1);
    out.coords_operator = (c * out.z2) * out.z2.adjoint();
    out.op = lift(a, out.coords_operator);
    return out;
  }

  const LeftParameters p = left_parameters(eps);
  out.params = p;
  const Vector x0 = x.col(0);
  const Vector tx = c * x0;
  const Vector xk = x.col(1);
  const double sigma2 = (c * xk).norm();

  if (sigma2 <= kCaseOneCut) {
    out.tag = ConstructionTag::LeftCaseI;
    out.w = orthonormal_complement(Matrix(tx / tx.norm()), 1).col(0);
  } else {
    out.tag = ConstructionTag::LeftCaseII;
    out.beta = sigma2;
    out.w = (c * xk) / sigma2;
    // Right singular vectors of distinct singular values have orthogonal images.
    if (std::abs(out.w.dot(tx)) > 1e-8)
      throw Error(ErrorCode::Numerical, "case II direction is not orthogonal to T~x");
  }

  const double s1 = std::sqrt(1.0 - p.eps1 * p.eps1);
  out.z1 = p.eps1 * x0 + s1 * xk;
  out.z2 = -s1 * x0 + p.eps1 * xk;
  const Vector img1 = p.a * tx + p.b * out.w;
  const Vector img2 = p.alpha * (p.b * tx - p.a * out.w);
  out.coords_operator = img1 * out.z1.adjoint() + img2 * out.z2.adjoint();
  out.op = lift(a, out.coords_operator);
  return out;
}

SymmetryReport classify_right(const ABoundedOperator& t, Epsilon eps) {
  require_real(t);
  SymmetryReport report;
  report.eps = eps.value();
  const IsometryCheck iso = is_a_isometry(t);
  report.evidence = iso.deviation;
  if (iso.isometry || t.space().rank() < 2) {
    report.kind = SymmetryKind::RightSymmetric;
    return report;
  }
  report.kind = SymmetryKind::NotRightSymmetric;
  report.witness = right_witness(t, eps);
  verify(report, t, eps, true);
  return report;
}

SymmetryReport classify_left(const ABoundedOperator& t, Epsilon eps) {
  require_real(t);
  if (t.space().rank() < 2)
    throw Error(ErrorCode::RankTooSmall, "left classification needs dim R(A) >= 2");
  SymmetryReport report;
  report.eps = eps.value();
  report.evidence = t.norm();
  if (t.is_zero()) {
    report.kind = SymmetryKind::LeftSymmetric;
    return report;
  }
  report.kind = SymmetryKind::NotLeftSymmetric;
  report.witness = left_witness(t, eps);
  verify(report, t, eps, false);
  return report;
}

ReferencePair reference_asymmetric_pair() {
  ReferencePair p;
  p.a = Matrix::Zero(2, 2);
  p.a(0, 0) = 1.0;
  p.a(1, 1) = 2.0;
  p.t = Matrix::Zero(2, 2);
  p.t(0, 0) = 2.0;
  p.t(1, 1) = 1.0;
  p.s = Matrix::Zero(2, 2);
  p.s(1, 1) = 1.0;
  p.eps = 1.0 / 3.0;
  return p;
}

}  // namespace semiortho
