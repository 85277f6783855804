#include <cmath>

#include "doctest.h"
#include "semiortho/fixtures.hpp"
#include "semiortho/operator_space.hpp"
#include "semiortho/semi_inner.hpp"
#include "support.hpp"

using namespace semiortho;
using testing::diag;
using testing::mat;

namespace {

ABoundedOperator op(const PsdPtr& a, const Matrix& t) { return ABoundedOperator::make(a, t); }

// Attainment bases agree up to a unitary: same projector in coordinates.
double projector_gap(const PsdOperator& a, const Matrix& got, const Matrix& want) {
  const Matrix g = a.coord_map().adjoint() * got;
  const Matrix w = a.coord_map().adjoint() * want;
  return max_abs(g * g.adjoint() - w * w.adjoint());
}

}  // namespace

TEST_CASE("boundedness") {
  const PsdPtr definite = make_psd(diag({1, 3}));
  InstanceGenerator g(31);
  CHECK(check_a_bounded(*definite, g.matrix(2, 2, Field::Real)).bounded);
  const PsdPtr singular = make_psd(diag({1, 0}));
  CHECK_FALSE(check_a_bounded(*singular, mat({{0, 1}, {0, 0}})).bounded);
  CHECK(check_a_bounded(*singular, diag({2, 3})).bounded);
  CHECK(testing::error_code_of([&] { op(singular, mat({{0, 1}, {0, 0}})); }) == ErrorCode::NotABounded);
  CHECK(testing::error_code_of([&] { op(singular, Matrix::Identity(3, 3)); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("generated operators are bounded and rank-deficient spaces catch violations") {
  InstanceGenerator g(32);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = g.uniform_index(2, 6);
    const Field f = g.field();
    const RandomSpace s = g.space(n, g.uniform_index(1, n - 1), f);
    const PsdPtr a = make_psd(s.a, f);
    CHECK(check_a_bounded(*a, g.bounded(s)).bounded);
    // push a null vector into the range
    const Matrix bad = g.bounded(s) + s.u.col(0) * s.u.col(n - 1).adjoint();
    CHECK_FALSE(check_a_bounded(*a, bad).bounded);
  }
}

TEST_CASE("norm and attainment of the reference pair") {
  const PsdPtr a = make_psd(diag({1, 2}));
  const ABoundedOperator t = op(a, diag({2, 1}));
  const ABoundedOperator s = op(a, diag({0, 1}));
  CHECK(std::abs(t.norm() - 2.0) <= 1e-12);
  CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
  const NormAttainment mt = norm_attainment_set(t), ms = norm_attainment_set(s);
  REQUIRE(mt.multiplicity == 1);
  REQUIRE(ms.multiplicity == 1);
  CHECK(std::abs(std::abs(mt.attain_basis(0, 0)) - 1.0) <= 1e-9);
  CHECK(std::abs(mt.attain_basis(1, 0)) <= 1e-9);
  CHECK(std::abs(ms.attain_basis(0, 0)) <= 1e-9);
  CHECK(std::abs(std::abs(ms.attain_basis(1, 0)) - 1.0 / std::sqrt(2.0)) <= 1e-9);
  CHECK(projector_gap(*a, mt.attain_basis, mat({{1}, {0}})) <= 1e-9);
  CHECK(projector_gap(*a, ms.attain_basis, mat({{0}, {1.0 / std::sqrt(2.0)}})) <= 1e-9);
  CHECK_FALSE(is_a_isometry(t).isometry);
}

TEST_CASE("norm never exceeds the Monte-Carlo lower bound and is close to it") {
  InstanceGenerator g(33);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomSpace s = g.space(g.uniform_index(2, 4), 2, Field::Real);
    const PsdPtr a = make_psd(s.a);
    const ABoundedOperator t = op(a, g.bounded(s));
    double best = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const Vector x = g.vector(s.dim(), s.field);
      const double nx = norm_a(*a, x);
      if (nx < 1e-9) continue;
      best = std::max(best, norm_a(*a, t.apply(x)) / nx);
    }
    CHECK(best <= t.norm() * (1.0 + 1e-12));
    CHECK(best >= t.norm() * (1.0 - 1e-3));
  }
}

TEST_CASE("attainment vectors attain and isometric scalings attain everywhere") {
  InstanceGenerator g(34);
  for (int trial = 0; trial < 100; ++trial) {
    const RandomSpace s = g.space(1, 6, 1, g.field());
    const PsdPtr a = make_psd(s.a, s.field);
    const ABoundedOperator t = op(a, g.bounded(s));
    const NormAttainment m = norm_attainment_set(t);
    for (Index k = 0; k < m.multiplicity; ++k) {
      CHECK(norm_a(*a, m.attain_basis.col(k)) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(norm_a(*a, t.apply(m.attain_basis.col(k))) == doctest::Approx(t.norm()).epsilon(1e-9));
    }
  }
  const PsdPtr a = make_psd(diag({1, 2, 5}));
  const NormAttainment m = norm_attainment_set(op(a, 3.0 * Matrix::Identity(3, 3)));
  CHECK(m.multiplicity == 3);
}

TEST_CASE("tilde reduction") {
  const PsdPtr d = make_psd(diag({1, 2}));
  const Matrix td = tilde_reduce(d, diag({2, 1}));
  CHECK(std::abs(std::abs(td(0, 0)) + std::abs(td(1, 1)) - 3.0) <= 1e-12);
  CHECK(std::abs(td(0, 1)) + std::abs(td(1, 0)) <= 1e-12);
  const Matrix t1 = tilde_reduce(make_psd(diag({1, 0})), diag({2, 3}));
  REQUIRE(t1.rows() == 1);
  CHECK(std::abs(t1(0, 0) - 2.0) <= 1e-12);

  InstanceGenerator g(35);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = g.uniform_index(2, 6);
    const RandomSpace s = g.space(n, g.uniform_index(1, n - 1), g.field());
    const PsdPtr a = make_psd(s.a, s.field);
    const Matrix tm = g.bounded(s), sm = g.bounded(s);
    const ABoundedOperator t = op(a, tm);
    Eigen::JacobiSVD<Matrix> svd(t.tilde());
    CHECK(std::abs(svd.singularValues()[0] - t.norm()) <= 1e-9 * (1.0 + t.norm()));
    CHECK(std::abs(operator_norm_a(a, tm) - t.norm()) <= 1e-12 * (1.0 + t.norm()));
    const Complex c = g.scalar(s.field);
    const Matrix lhs = tilde_reduce(a, tm + c * sm);
    const Matrix rhs = tilde_reduce(a, tm) + c * tilde_reduce(a, sm);
    CHECK(max_abs(lhs - rhs) <= 1e-10 * (1.0 + max_abs(lhs)));
    // operators differing only on N(A) share a reduction
    const Matrix shifted = tm + g.null_vector(s) * g.vector(n, s.field).adjoint();
    CHECK(max_abs(tilde_reduce(a, shifted) - tilde_reduce(a, tm)) <= 1e-9 * (1.0 + max_abs(lhs)));
  }
}

TEST_CASE("lift is a right inverse of the reduction") {
  InstanceGenerator g(36);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomSpace s = g.space(1, 6, 1, g.field());
    const PsdPtr a = make_psd(s.a, s.field);
    const Matrix c = g.matrix(a->rank(), a->rank(), s.field);
    const Matrix l = lift(*a, c);
    CHECK(max_abs(tilde_reduce(a, l) - c) <= 1e-9 * (1.0 + max_abs(c)));
  }
}

TEST_CASE("isometries") {
  InstanceGenerator g(37);
  for (double w : {1.0, 2.0}) {
    const PsdPtr a = make_psd(diag({w, 3, 0.5}));
    CHECK(is_a_isometry(op(a, Matrix::Identity(3, 3))).isometry);
  }
  const PsdPtr id = make_psd(Matrix::Identity(4, 4));
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix q = g.unitary(4, Field::Real);
    CHECK(max_abs(q.adjoint() * q - Matrix::Identity(4, 4)) <= 1e-12);
    CHECK(is_a_isometry(op(id, q)).isometry);
    CHECK_FALSE(is_a_isometry(op(id, q * diag({1, 1, 1, 0.9}))).isometry);
  }
}

TEST_CASE("zero A-norm operators") {
  InstanceGenerator g(38);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = g.uniform_index(2, 6);
    const RandomSpace s = g.space(n, g.uniform_index(1, n - 1), g.field());
    const PsdPtr a = make_psd(s.a, s.field);
    const ABoundedOperator t = op(a, g.null_valued(s));
    CHECK(t.is_zero());
    CHECK(norm_attainment_set(t).multiplicity == a->rank());
  }
}
