#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "semiortho/linalg.hpp"

namespace testing {

using semiortho::Complex;
using semiortho::Index;
using semiortho::Matrix;
using semiortho::Vector;

inline Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  Index i = 0;
  for (const auto& r : rows) {
    Index k = 0;
    for (double v : r) m(i, k++) = v;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<Complex> v) {
  Vector out(v.size());
  Index i = 0;
  for (Complex c : v) out(i++) = c;
  return out;
}

// The error code thrown by f, or nothing.
template <class F>
std::optional<semiortho::ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const semiortho::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
