#include <cmath>

#include "doctest.h"
#include "semiortho/approx_orth.hpp"
#include "semiortho/fixtures.hpp"
#include "semiortho/symmetry.hpp"
#include "support.hpp"

using namespace semiortho;
using testing::diag;
using testing::error_code_of;

namespace {

ABoundedOperator op(const PsdPtr& a, const Matrix& t) { return ABoundedOperator::make(a, t); }

const double kEpsGrid[] = {0.0, 0.1, 0.5, 0.9};

// Independent re-check of a witness through the direct route.
void check_right(const ABoundedOperator& t, const Matrix& u, double eps) {
  const ABoundedOperator w = op(t.space_ptr(), u);
  CHECK(op_orth_direct(w, t, Epsilon(eps)).holds);
  CHECK_FALSE(op_orth_direct(t, w, Epsilon(eps)).holds);
}

void check_left(const ABoundedOperator& t, const Matrix& s, double eps) {
  const ABoundedOperator w = op(t.space_ptr(), s);
  CHECK(op_orth_direct(t, w, Epsilon(eps)).holds);
  CHECK_FALSE(op_orth_direct(w, t, Epsilon(eps)).holds);
}

}  // namespace

TEST_CASE("left lemma parameters") {
  const LeftParameters p0 = left_parameters(Epsilon(0.0));
  CHECK(p0.eps1 == doctest::Approx(0.5));
  CHECK(p0.a == doctest::Approx((1 - 2 * p0.t) * std::sqrt(3.0) / 2));
  CHECK(p0.alpha_lo <= p0.alpha_hi);
  const LeftParameters p = left_parameters(Epsilon(0.3));
  CHECK(p.eps1 == doctest::Approx(0.65));
  CHECK(p.a * p.eps1 > 0.3);
  CHECK((p.a * p.eps1 - 0.3) / (std::sqrt(1 - p.eps1 * p.eps1) * p.b) < 1.0);
  for (int k = 0; k < 100; ++k) {
    const double e = 0.99 * k / 100.0;
    const LeftParameters q = left_parameters(Epsilon(e));
    const double s1 = std::sqrt(1 - q.eps1 * q.eps1);
    CHECK(q.t > 0.0);
    CHECK(q.t < 0.5);
    CHECK(q.a > 0.0);
    CHECK(q.a < 1.0);
    CHECK(q.a * q.eps1 >= e);
    CHECK(q.alpha_lo < 1.0);
    CHECK(q.alpha_lo <= q.alpha);
    CHECK(q.alpha <= q.alpha_hi);
    CHECK(q.alpha_hi <= 1.0);
    CHECK(std::abs(q.alpha * s1 * q.b - q.a * q.eps1) <= e + 1e-12);
  }
}

TEST_CASE("eps = 0 left construction") {
  const PsdPtr a = make_psd(Matrix::Identity(3, 3));
  // rank one: case I, <S~ z1, C z1> = a eps1 = a / 2
  const ABoundedOperator t1 = op(a, diag({2, 0, 0}));
  const WitnessConstruction w1 = left_witness(t1, Epsilon(0.0));
  REQUIRE(w1.params);
  CHECK(w1.tag == ConstructionTag::LeftCaseI);
  const Matrix c1 = t1.tilde() / t1.norm();
  CHECK((c1 * w1.z1).dot(w1.coords_operator * w1.z1).real() == doctest::Approx(w1.params->a / 2));
  check_left(t1, w1.op, 0.0);
  // simple top value with a second direction: case II adds b s1 beta
  const ABoundedOperator t2 = op(a, diag({2, 1, 0.5}));
  const WitnessConstruction w2 = left_witness(t2, Epsilon(0.0));
  REQUIRE(w2.params);
  CHECK(w2.tag == ConstructionTag::LeftCaseII);
  CHECK(w2.beta == doctest::Approx(0.5));
  const LeftParameters& p = *w2.params;
  const double s1 = std::sqrt(1 - p.eps1 * p.eps1);
  const Matrix c2 = t2.tilde() / t2.norm();
  CHECK((c2 * w2.z1).dot(w2.coords_operator * w2.z1).real() ==
        doctest::Approx(p.a * p.eps1 + p.b * s1 * w2.beta));
  check_left(t2, w2.op, 0.0);
}

TEST_CASE("right classification") {
  InstanceGenerator g(51);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomSpace sp = g.space(1, 5, 1, Field::Real);
    const PsdPtr a = make_psd(sp.a);
    const SymmetryReport r = classify_right(op(a, Matrix::Identity(sp.dim(), sp.dim())), Epsilon(g.epsilon()));
    CHECK(r.kind == SymmetryKind::RightSymmetric);
    CHECK_FALSE(r.witness);
  }
  const ReferencePair p = reference_asymmetric_pair();
  const PsdPtr a = make_psd(p.a);
  const ABoundedOperator t = op(a, p.t);
  for (double e : kEpsGrid) {
    const SymmetryReport r = classify_right(t, Epsilon(e));
    CHECK(r.kind == SymmetryKind::NotRightSymmetric);
    REQUIRE(r.witness);
    CHECK(r.verified);
    check_right(t, r.witness->op, e);
  }
  CHECK(error_code_of([&] { right_witness(op(a, Matrix::Identity(2, 2)), Epsilon(0.2)); }) ==
        ErrorCode::IsIsometry);
}

TEST_CASE("right witnesses on random non-isometries") {
  InstanceGenerator g(52);
  int flipped = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 5;
    const RandomSpace sp = g.space(n, g.uniform_index(2, n), Field::Real);
    const PsdPtr a = make_psd(sp.a);
    const ABoundedOperator t = op(a, g.bounded(sp));
    if (t.is_zero() || is_a_isometry(t).isometry) continue;
    const double e = kEpsGrid[trial % 4];
    const WitnessConstruction w = right_witness(t, Epsilon(e));
    check_right(t, w.op, e);
    // homogeneity: the same witness works for positive multiples of T
    check_right(op(a, 3.5 * t.matrix()), w.op, e);
    flipped += w.sign_flipped;
  }
  CHECK(flipped > 0);
}

TEST_CASE("isometries are right symmetric against random S") {
  InstanceGenerator g(53);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = g.uniform_index(2, 5);
    const RandomSpace sp = g.space(n, n, Field::Real);
    const PsdPtr a = make_psd(sp.a);
    const Matrix q = g.unitary(n, Field::Real);
    const ABoundedOperator t = op(a, lift(*a, 1.7 * q));
    REQUIRE(is_a_isometry(t).isometry);
    const double e = kEpsGrid[trial % 4];
    for (int k = 0; k < 10; ++k) {
      const ABoundedOperator s = op(a, g.bounded(sp));
      if (!op_orth_direct(s, t, Epsilon(e)).holds) continue;
      CHECK(op_orth_direct(t, s, Epsilon(e)).holds);
    }
  }
}

TEST_CASE("left classification") {
  const PsdPtr i3 = make_psd(Matrix::Identity(3, 3));
  const SymmetryReport id = classify_left(op(i3, Matrix::Identity(3, 3)), Epsilon(0.2));
  CHECK(id.kind == SymmetryKind::NotLeftSymmetric);
  CHECK(id.verified);
  REQUIRE(id.witness);
  CHECK(id.witness->tag == ConstructionTag::LeftMultiPair);

  const ReferencePair p = reference_asymmetric_pair();
  const PsdPtr a = make_psd(p.a);
  const SymmetryReport ref = classify_left(op(a, p.t), Epsilon(p.eps));
  CHECK(ref.kind == SymmetryKind::NotLeftSymmetric);
  CHECK(ref.verified);

  const PsdPtr singular = make_psd(diag({1, 1, 0}));
  Matrix z = Matrix::Zero(3, 3);
  z(2, 0) = 1.0;
  z(2, 2) = 4.0;
  const SymmetryReport zero = classify_left(op(singular, z), Epsilon(0.5));
  CHECK(zero.kind == SymmetryKind::LeftSymmetric);

  const PsdPtr thin = make_psd(diag({2, 0}));
  CHECK(error_code_of([&] { classify_left(op(thin, diag({1, 0})), Epsilon(0.1)); }) ==
        ErrorCode::RankTooSmall);
  const PsdPtr complex_space = make_psd(Matrix::Identity(2, 2), Field::Complex);
  CHECK(error_code_of([&] { classify_left(op(complex_space, diag({1, 2})), Epsilon(0.1)); }) ==
        ErrorCode::ComplexField);
  CHECK(error_code_of([&] { classify_right(op(complex_space, diag({1, 2})), Epsilon(0.1)); }) ==
        ErrorCode::ComplexField);
}

TEST_CASE("left witnesses exercise every branch") {
  InstanceGenerator g(54);
  int seen[3] = {0, 0, 0};
  for (int trial = 0; trial < 120; ++trial) {
    const Index n = g.uniform_index(2, 6);
    const RandomSpace sp = g.space(n, g.uniform_index(2, n), Field::Real);
    const PsdPtr a = make_psd(sp.a);
    const Index r = sp.rank;
    RealVector sigma(r);
    for (Index k = 0; k < r; ++k) sigma[k] = g.uniform(0.1, 0.9);
    const int branch = trial % 3;
    sigma[0] = 1.0;
    if (branch == 0) sigma[1] = 1.0;  // repeated top value
    if (branch == 1) sigma.tail(r - 1).setZero();  // rank one
    const ABoundedOperator t = op(a, g.with_coords(sp, g.with_singular_values(sigma, Field::Real)));
    const double e = kEpsGrid[trial % 4];
    const WitnessConstruction w = left_witness(t, Epsilon(e));
    const ConstructionTag want[] = {ConstructionTag::LeftMultiPair, ConstructionTag::LeftCaseI,
                                    ConstructionTag::LeftCaseII};
    CHECK(w.tag == want[branch]);
    seen[branch]++;
    check_left(t, w.op, e);
  }
  CHECK(seen[0] == 40);
  CHECK(seen[1] == 40);
  CHECK(seen[2] == 40);
}
