#include "semiortho/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace semiortho {

double InstanceGenerator::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Index InstanceGenerator::uniform_index(Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng_);
}

Complex InstanceGenerator::scalar(Field field) {
  std::normal_distribution<double> normal;
  if (field == Field::Real) return {normal(rng_), 0.0};
  const double re = normal(rng_);
  const double im = normal(rng_);
  return Complex(re, im) * std::sqrt(0.5);
}

Complex InstanceGenerator::unimodular(Field field) {
  if (field == Field::Real) return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi));
}

Vector InstanceGenerator::vector(Index n, Field field) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = scalar(field);
  return v;
}

Matrix InstanceGenerator::matrix(Index rows, Index cols, Field field) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = scalar(field);
  return m;
}

Matrix InstanceGenerator::unitary(Index n, Field field) {
  const Matrix g = matrix(n, n, field);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phases so the distribution is Haar rather than QR-biased.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Field InstanceGenerator::field() {
  return uniform(0.0, 1.0) < 0.5 ? Field::Real : Field::Complex;
}

double InstanceGenerator::epsilon() { return uniform(0.0, 0.95); }

RandomSpace InstanceGenerator::space(Index n, Index rank, Field field) {
  RandomSpace s;
  s.field = field;
  s.rank = rank;
  s.u = unitary(n, field);
  s.lambda = RealVector::Zero(n);
  for (Index k = 0; k < rank; ++k) s.lambda[k] = uniform(0.2, 3.0);
  s.a = s.u * s.lambda.asDiagonal() * s.u.adjoint();
  s.a = 0.5 * (s.a + s.a.adjoint());
  if (field == Field::Real) s.a = s.a.real().cast<Complex>();
  return s;
}

RandomSpace InstanceGenerator::space(Index min_dim, Index max_dim, Index min_rank, Field field) {
  const Index n = uniform_index(min_dim, max_dim);
  const Index r = uniform_index(std::min(min_rank, n), n);
  return space(n, r, field);
}

Matrix InstanceGenerator::with_coords(const RandomSpace& s, const Matrix& coords) {
  const Index n = s.dim();
  const Index r = s.rank;
  const RealVector root = s.lambda.head(r).cwiseSqrt();
  Matrix b = Matrix::Zero(n, n);
  b.topLeftCorner(r, r) = root.cwiseInverse().asDiagonal() * coords * root.asDiagonal();
  b.bottomLeftCorner(n - r, r) = matrix(n - r, r, s.field);
  b.bottomRightCorner(n - r, n - r) = matrix(n - r, n - r, s.field);
  Matrix t = s.u * b * s.u.adjoint();
  if (s.field == Field::Real) t = t.real().cast<Complex>();
  return t;
}

Matrix InstanceGenerator::bounded(const RandomSpace& s) {
  return with_coords(s, matrix(s.rank, s.rank, s.field));
}

Matrix InstanceGenerator::null_valued(const RandomSpace& s) {
  return with_coords(s, Matrix::Zero(s.rank, s.rank));
}

Matrix InstanceGenerator::with_singular_values(const RealVector& sigma, Field field) {
  const Index r = sigma.size();
  return unitary(r, field) * sigma.cast<Complex>().asDiagonal() * unitary(r, field).adjoint();
}

Vector InstanceGenerator::null_vector(const RandomSpace& s) {
  const Index k = s.dim() - s.rank;
  return s.u.rightCols(k) * vector(k, s.field);
}

Vector InstanceGenerator::range_vector(const RandomSpace& s) {
  return s.u.leftCols(s.rank) * vector(s.rank, s.field);
}

Matrix eigenbasis_coords(const RandomSpace& s, const Matrix& t) {
  const Index r = s.rank;
  const RealVector root = s.lambda.head(r).cwiseSqrt();
  const auto up = s.u.leftCols(r);
  return root.asDiagonal() * (up.adjoint() * t * up) * root.cwiseInverse().asDiagonal();
}

}  // namespace semiortho
