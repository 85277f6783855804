#pragma once

// Seeded random instances for the property suites and tests.

#include <cstdint>
#include <random>
#include <vector>

#include "semiortho/linalg.hpp"

namespace semiortho {

// A random positive operator together with the eigenbasis it was built from.
struct RandomSpace {
  Field field = Field::Real;
  Matrix a;
  Matrix u;           // unitary, range columns first
  RealVector lambda;  // eigenvalues in the order of u's columns
  Index rank = 0;

  Index dim() const { return a.rows(); }
};

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  Index uniform_index(Index lo, Index hi);  // inclusive
  Complex scalar(Field field);              // standard normal (complex: unit variance)
  Complex unimodular(Field field);
  Vector vector(Index n, Field field);
  Matrix matrix(Index rows, Index cols, Field field);
  Matrix unitary(Index n, Field field);
  Field field();
  double epsilon();  // uniform on [0, 0.95]

  RandomSpace space(Index n, Index rank, Field field);
  // Random dimension in [min_dim, max_dim] and a rank in [min_rank, n].
  RandomSpace space(Index min_dim, Index max_dim, Index min_rank, Field field);

  // Random A-bounded operator; its range/null coupling is block triangular in
  // the eigenbasis so N(A) is invariant.
  Matrix bounded(const RandomSpace& s);
  // A-bounded operator whose reduction in the eigenbasis coordinates of s is
  // `coords`; the parts touching N(A) are random.
  Matrix with_coords(const RandomSpace& s, const Matrix& coords);
  // Operator with zero A-norm: maps everything into N(A).
  Matrix null_valued(const RandomSpace& s);

  // r x r matrix with the prescribed singular values (descending not required).
  Matrix with_singular_values(const RealVector& sigma, Field field);
  // Random vector of N(A) / R(A) for the space.
  Vector null_vector(const RandomSpace& s);
  Vector range_vector(const RandomSpace& s);

 private:
  std::mt19937_64 rng_;
};

// Coordinates of the reduction of T relative to s's own eigenbasis:
// Lambda+^{1/2} U+* T U+ Lambda+^{-1/2}.
Matrix eigenbasis_coords(const RandomSpace& s, const Matrix& t);

}  // namespace semiortho
