#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "semiortho/fixtures.hpp"
#include "semiortho/linalg.hpp"
#include "support.hpp"

using namespace semiortho;
using testing::diag;
using testing::mat;

TEST_CASE("diagonal eigenproblem") {
  const Eigensystem e = hermitian_eig(diag({2, 1}));
  CHECK(e.values[0] == doctest::Approx(2.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("swap matrix eigenvectors") {
  const Eigensystem e = hermitian_eig(mat({{0, 1}, {1, 0}}));
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(-1.0));
  const double s = 1.0 / std::sqrt(2.0);
  // up to a phase per column
  CHECK(std::abs(e.vectors.col(0).dot(testing::vec({s, s}))) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors.col(1).dot(testing::vec({s, -s}))) == doctest::Approx(1.0));
}

TEST_CASE("Jacobi agrees with Eigen's self-adjoint solver") {
  InstanceGenerator g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = g.uniform_index(1, 8);
    const Field f = trial % 2 ? Field::Complex : Field::Real;
    Matrix h = g.matrix(n, n, f);
    h = 0.5 * (h + h.adjoint()).eval();
    const Eigensystem mine = hermitian_eig(h);
    Eigen::SelfAdjointEigenSolver<Matrix> oracle(h);
    const Eigen::VectorXd ref = oracle.eigenvalues().reverse();
    CHECK((mine.values - ref).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + ref.cwiseAbs().maxCoeff()));
    const Matrix rebuilt = mine.vectors * mine.values.cast<Complex>().asDiagonal() * mine.vectors.adjoint();
    CHECK(max_abs(rebuilt - h) <= 1e-9 * (1.0 + ref.cwiseAbs().maxCoeff()));
    CHECK(max_abs(mine.vectors.adjoint() * mine.vectors - Matrix::Identity(n, n)) <= 1e-10);
    CHECK(hermitian_max_eigenvalue(h) == doctest::Approx(ref[0]).epsilon(1e-10));
  }
}

TEST_CASE("repeated eigenvalues keep an orthonormal basis") {
  InstanceGenerator g(3);
  const Matrix q = g.unitary(5, Field::Complex);
  const Matrix h = q * diag({3, 3, 3, 1, 1}) * q.adjoint();
  const Eigensystem e = hermitian_eig(h);
  CHECK(max_abs(e.vectors.adjoint() * e.vectors - Matrix::Identity(5, 5)) <= 1e-12);
  CHECK(e.values[2] == doctest::Approx(3.0));
  CHECK(e.values[3] == doctest::Approx(1.0));
}

TEST_CASE("non-Hermitian input is rejected") {
  CHECK_THROWS_AS(hermitian_eig(mat({{1, 2}, {0, 1}})), Error);
  CHECK(testing::error_code_of([] { psd_decompose(mat({{1, 2}, {0, 1}})); }) ==
        ErrorCode::NotHermitian);
}

TEST_CASE("definite diagonal A") {
  const PsdOperator a = psd_decompose(diag({1, 2}));
  CHECK(a.rank() == 2);
  CHECK(max_abs(a.range_projection() - Matrix::Identity(2, 2)) <= 1e-14);
  CHECK(null_basis(a).cols() == 0);
}

TEST_CASE("singular diagonal A") {
  const PsdOperator a = psd_decompose(diag({1, 0}));
  CHECK(a.rank() == 1);
  CHECK(max_abs(a.range_projection() - diag({1, 0})) <= 1e-14);
  const Matrix nb = null_basis(a);
  REQUIRE(nb.cols() == 1);
  CHECK(std::abs(nb(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("negative eigenvalue is NotPositive") {
  CHECK(testing::error_code_of([] { psd_decompose(diag({1, -0.5})); }) ==
        ErrorCode::NotPositive);
}

TEST_CASE("eigenvalues inside the clipping band become zero") {
  const PsdOperator a = psd_decompose(diag({1, -1e-13, 1e-13}));
  CHECK(a.rank() == 1);
  CHECK(a.eigenvalues().minCoeff() == 0.0);
}

TEST_CASE("rank is monotone in rank_tol") {
  InstanceGenerator g(5);
  const Matrix q = g.unitary(4, Field::Real);
  const Matrix a = q * diag({1, 1e-4, 1e-7, 0}) * q.adjoint();
  Index prev = 5;
  for (double tol : {1e-12, 1e-9, 1e-6, 1e-3}) {
    Tolerances t;
    t.rank_tol = tol;
    const Index r = psd_decompose(a, Field::Real, t).rank();
    CHECK(r <= prev);
    prev = r;
  }
  CHECK(prev == 1);
}

TEST_CASE("square roots") {
  CHECK(max_abs(sqrt_psd(psd_decompose(diag({4, 9}))) - diag({2, 3})) <= 1e-14);
  CHECK(max_abs(sqrt_psd(psd_decompose(Matrix::Identity(3, 3))) - Matrix::Identity(3, 3)) <= 1e-14);
  InstanceGenerator g(8);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomSpace s = g.space(1, 6, 0, trial % 2 ? Field::Complex : Field::Real);
    const PsdOperator a = psd_decompose(s.a, s.field);
    const Matrix r = sqrt_psd(a);
    CHECK(max_abs(r * r - a.effective()) <= 1e-9);
    CHECK(max_abs(r - r.adjoint()) <= 1e-12);
  }
}

TEST_CASE("null basis of a rank-deficient A") {
  const Matrix nb = null_basis(psd_decompose(diag({1, 0, 0})));
  REQUIRE(nb.cols() == 2);
  CHECK(nb.row(0).norm() <= 1e-14);
  InstanceGenerator g(9);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomSpace s = g.space(2, 6, 1, Field::Complex);
    const PsdOperator a = psd_decompose(s.a, s.field);
    const Matrix z = null_basis(a);
    CHECK(z.cols() == s.dim() - s.rank);
    if (z.cols() == 0) continue;
    CHECK(max_abs(s.a * z) <= 1e-9 * s.lambda.maxCoeff());
    CHECK(max_abs(z.adjoint() * z - Matrix::Identity(z.cols(), z.cols())) <= 1e-12);
  }
}

TEST_CASE("coordinate maps invert on the range") {
  InstanceGenerator g(10);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomSpace s = g.space(1, 6, 1, Field::Complex);
    const PsdOperator a = psd_decompose(s.a, s.field);
    const Index r = a.rank();
    CHECK(max_abs(a.coord_map().adjoint() * a.coord_inverse() - Matrix::Identity(r, r)) <= 1e-10);
    CHECK(max_abs(a.coord_map() * a.coord_map().adjoint() - s.a) <= 1e-9);
  }
}

TEST_CASE("orthonormal complement") {
  InstanceGenerator g(12);
  const Matrix q = g.unitary(5, Field::Complex).leftCols(2);
  const Matrix c = orthonormal_complement(q, 3);
  CHECK(max_abs(q.adjoint() * c) <= 1e-12);
  CHECK(max_abs(c.adjoint() * c - Matrix::Identity(3, 3)) <= 1e-12);
}
