#include "semiortho/semi_inner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace semiortho {

namespace {

constexpr int kPhaseGrid = 64;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// ||x + lambda y||_A^2 restricted to the ray lambda = t alpha is the quadratic
// F0 + b t + q t^2; three seminorm evaluations recover it exactly.
struct RayQuadratic {
  double b;
  double q;
};

RayQuadratic fit_ray(const Vector& cx, const Vector& cy, Complex alpha, double f0) {
  const double fp = (cx + alpha * cy).squaredNorm();
  const double fm = (cx - alpha * cy).squaredNorm();
  return {0.5 * (fp - fm), 0.5 * (fp + fm) - f0};
}

}  // namespace

Epsilon::Epsilon(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0))
    throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in [0, 1), got " + std::to_string(value));
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Definition: return "definition";
    case Method::Attainment: return "attainment";
    case Method::ThetaSweep: return "theta_sweep";
    case Method::DirectMinimization: return "direct_minimization";
    case Method::Pointwise: return "pointwise";
  }
  return "unknown";
}

const char* to_string(Cone cone) {
  switch (cone) {
    case Cone::PlusOnly: return "plus_only";
    case Cone::MinusOnly: return "minus_only";
    case Cone::Both: return "both";
  }
  return "unknown";
}

Verdict verdict_from_margin(double margin, double band, Method method) {
  Verdict v;
  v.method = method;
  v.margin = margin;
  v.holds = margin >= -band;
  v.boundary = std::abs(margin) <= band;
  return v;
}

bool routes_agree(const Verdict& a, const Verdict& b) {
  return a.holds == b.holds || a.boundary || b.boundary;
}

Complex inner_a(const PsdOperator& a, const Vector& x, const Vector& y) {
  a.check_vector(x, "x");
  a.check_vector(y, "y");
  return a.coords(y).dot(a.coords(x));
}

double norm_a(const PsdOperator& a, const Vector& x) {
  a.check_vector(x, "x");
  return a.coords(x).norm();
}

Verdict is_a_orthogonal(const PsdOperator& a, const Vector& x, const Vector& y) {
  const Complex ip = inner_a(a, x, y);
  const double scale = 1.0 + norm_a(a, x) * norm_a(a, y);
  Verdict v = verdict_from_margin(a.tolerances().orth_tol * scale - std::abs(ip), 0.0,
                                  Method::Definition);
  v.boundary = std::abs(v.margin) <= a.tolerances().verdict_margin_tol;
  return v;
}

Verdict is_eps_orthogonal(const PsdOperator& a, const Vector& x, const Vector& y,
                          Epsilon eps) {
  const Complex ip = inner_a(a, x, y);
  const double margin = eps.value() * norm_a(a, x) * norm_a(a, y) - std::abs(ip);
  return verdict_from_margin(margin, a.tolerances().verdict_margin_tol, Method::Definition);
}

// Minimizes f(lambda) = ||x + lambda y||_A^2 - ||x||_A^2 + 2 eps ||x||_A ||lambda y||_A
// using only seminorm evaluations. On a ray lambda = t alpha (t >= 0)
// f(t) = 2 p t + q t^2 with p = b/2 + eps ||x||_A ||y||_A, so the minimum is 0
// when p >= 0 and -p^2/q otherwise. The reported margin is min over rays of p.
Verdict is_chmielinski_orthogonal_vec(const PsdOperator& a, const Vector& x, const Vector& y,
                                      Epsilon eps) {
  a.check_vector(x, "x");
  a.check_vector(y, "y");
  const Vector cx = a.coords(x);
  const Vector cy = a.coords(y);
  const double nx = cx.norm();
  const double ny = cy.norm();
  const double f0 = nx * nx;
  const double slack = eps.value() * nx * ny;

  std::vector<Complex> rays;
  if (a.field() == Field::Real) {
    rays = {Complex(1.0, 0.0), Complex(-1.0, 0.0)};
  } else {
    // b(phi) = B cos(phi) + C sin(phi); its minimizer is phi* = atan2(-C, -B).
    const double b0 = fit_ray(cx, cy, Complex(1.0, 0.0), f0).b;
    const double b1 = fit_ray(cx, cy, Complex(0.0, 1.0), f0).b;
    rays.push_back(std::polar(1.0, std::atan2(-b1, -b0)));
    for (int k = 0; k < kPhaseGrid; ++k)
      rays.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / kPhaseGrid));
  }

  double worst_p = std::numeric_limits<double>::infinity();
  double worst_f = 0.0;
  Complex worst_lambda = 0.0;
  Complex worst_dir = rays.front();
  for (const Complex& alpha : rays) {
    const RayQuadratic ray = fit_ray(cx, cy, alpha, f0);
    const double p = 0.5 * ray.b + slack;
    double fmin = 0.0;
    double tmin = 0.0;
    if (p < 0.0 && ray.q > 0.0) {
      tmin = -p / ray.q;
      fmin = -p * p / ray.q;
    }
    if (p < worst_p) {
      worst_p = p;
      worst_dir = alpha;
    }
    if (fmin < worst_f) {
      worst_f = fmin;
      worst_lambda = tmin * alpha;
    }
  }
  if (worst_f == 0.0) worst_lambda = 0.0 * worst_dir;

  const double band =
      a.tolerances().verdict_margin_tol + 64.0 * kEps * (nx + ny) * (nx + ny);
  Verdict v = verdict_from_margin(worst_p, band, Method::DirectMinimization);
  v.defect = worst_f;
  v.lambda = worst_lambda;
  return v;
}

Vector orthogonal_decomposition(const PsdOperator& a, const Vector& x, const Vector& y) {
  a.check_vector(y, "y");
  if (a.is_null(x)) return y;
  const double nx = norm_a(a, x);
  const Complex ip = inner_a(a, x, y);
  return y - (std::conj(ip) / (nx * nx)) * x;
}

Cone cone_membership(const PsdOperator& a, const Vector& x, const Vector& y, Complex alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "alpha must be unimodular");
  const bool upper = alpha.imag() > 1e-15 || (std::abs(alpha.imag()) <= 1e-15 && alpha.real() > 0.0);
  if (!upper) throw Error(ErrorCode::InvalidArgument, "arg(alpha) must lie in [0, pi)");
  if (a.field() == Field::Real && alpha != Complex(1.0, 0.0))
    throw Error(ErrorCode::InvalidArgument, "alpha must be 1 in a real space");
  const double s = (alpha * inner_a(a, y, x)).real();
  const double band = a.tolerances().orth_tol * (1.0 + norm_a(a, x) * norm_a(a, y));
  if (std::abs(s) <= band) return Cone::Both;
  return s > 0.0 ? Cone::PlusOnly : Cone::MinusOnly;
}

double directional_derivative(const PsdOperator& a, const Vector& x, const Vector& y) {
  const double nx = norm_a(a, x);
  if (std::abs(nx - 1.0) > 1e-8)
    throw Error(ErrorCode::NotAUnit, "x has A-norm " + std::to_string(nx));
  return inner_a(a, x, y).real();
}

}  // namespace semiortho
