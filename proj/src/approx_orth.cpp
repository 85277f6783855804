#include "semiortho/approx_orth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace semiortho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr int kGoldenIters = 60;
constexpr int kDirectPhaseGrid = 128;

void require_same_space(const ABoundedOperator& t, const ABoundedOperator& s) {
  if (t.space_ptr() == s.space_ptr()) return;
  if (t.dim() != s.dim())
    throw Error(ErrorCode::DimensionMismatch, "T and S act on spaces of different dimension");
  if (t.space().matrix() != s.space().matrix() || t.space().field() != s.space().field())
    throw Error(ErrorCode::InvalidArgument, "T and S are bounded with respect to different A");
}

void require_nonzero(const ABoundedOperator& t) {
  if (t.is_zero())
    throw Error(ErrorCode::ZeroNorm,
                "||T||_A = 0; every S is orthogonal to T (use the direct route)");
}

struct Golden {
  double x;
  double f;
};

// Golden-section search for a unimodal function on [lo, hi].
Golden golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  Golden best = fc <= fd ? Golden{c, fc} : Golden{d, fd};
  const double fl = f(lo);
  if (fl <= best.f) best = {lo, fl};
  return best;
}

double sq_spectral_norm(const Matrix& k) {
  if (k.cols() == 0) return 0.0;
  return std::max(0.0, hermitian_max_eigenvalue(k.adjoint() * k));
}

// The defining functional evaluated on the reduced kernels K_T, K_S.
struct Functional {
  Matrix kt;
  Matrix ks;
  double nt;
  double ns;
  double e;

  double operator()(Complex lambda) const {
    const Matrix k = kt + lambda * ks;
    return sq_spectral_norm(k) - nt * nt + 2.0 * e * std::abs(lambda);
  }

  // g(t alpha) = 2 p t + q t^2 + c t^3 + O(t^4); extrapolating from t = h, 2h,
  // 4h cancels the t^2 and t^3 terms and leaves p. The step shrinks until two
  // estimates agree, so nearby eigenvalue branch crossings do not bias it, but
  // stops above the scale where rounding in g (~1e-16 nt^2 / h) takes over. If
  // no pair agrees, the pair with the smallest gap wins.
  double slope(Complex alpha) const {
    const double unit = nt / ns;
    auto estimate = [&](double h) {
      const double step = h * unit;
      const double g1 = (*this)(step * alpha);
      const double g2 = (*this)(2.0 * step * alpha);
      const double g4 = (*this)(4.0 * step * alpha);
      return (32.0 * g1 - 12.0 * g2 + g4) / (24.0 * step);
    };
    const double agree = 1e-11 * nt * ns;
    double h = 1e-3;
    double prev = estimate(h);
    double best = prev;
    double best_gap = std::numeric_limits<double>::infinity();
    while (h > 4e-6) {
      h *= 0.25;
      const double next = estimate(h);
      const double gap = std::abs(next - prev);
      if (gap <= agree) return next;
      if (gap < best_gap) {
        best_gap = gap;
        best = next;
      }
      prev = next;
    }
    return best;
  }

  // Minimum of g on the ray {t alpha : 0 <= t <= bracket}. For t beyond
  // 2 (1 - eps) ||T|| / ||S||, ||T + lambda S|| >= t ||S|| - ||T|| already forces
  // g > 0, so bracket = 2 (1 + eps) ||T|| / ||S|| contains the minimizer.
  Golden ray_min(Complex alpha, double bracket) const {
    return golden_min([&](double t) { return (*this)(t * alpha); }, 0.0, bracket,
                      kGoldenIters);
  }
};

Verdict trivially_holds(Method method) {
  Verdict v;
  v.method = method;
  v.holds = true;
  v.margin = 0.0;
  v.lambda = Complex(0.0, 0.0);
  return v;
}

struct AttainmentForm {
  NormAttainment attainment;
  Matrix m;  // u* M u = <T x, S x>_A for x = W^- V u
  double e;
};

AttainmentForm attainment_form(const ABoundedOperator& t, const ABoundedOperator& s,
                               Epsilon eps) {
  AttainmentForm out;
  out.attainment = norm_attainment_set(t);
  const Matrix& v = out.attainment.attain_coords;
  out.m = (s.tilde() * v).adjoint() * (t.tilde() * v);
  out.e = eps.value() * t.norm() * s.norm();
  return out;
}

}  // namespace

double operator_band(const ABoundedOperator& t, const ABoundedOperator& s) {
  return t.space().tolerances().verdict_margin_tol * (1.0 + t.norm() * s.norm());
}

double chmielinski_defect(const ABoundedOperator& t, const ABoundedOperator& s, Epsilon eps,
                          Complex lambda) {
  require_same_space(t, s);
  const Matrix k = t.tilde() + lambda * s.tilde();
  return sq_spectral_norm(k) - t.norm() * t.norm() +
         2.0 * eps.value() * t.norm() * s.norm() * std::abs(lambda);
}

Verdict op_orth_direct(const ABoundedOperator& t, const ABoundedOperator& s, Epsilon eps) {
  require_same_space(t, s);
  if (t.is_zero() || s.is_zero()) return trivially_holds(Method::DirectMinimization);

  Functional g{t.reduced(), s.reduced(), 0.0, 0.0, 0.0};
  g.nt = std::sqrt(sq_spectral_norm(g.kt));
  g.ns = std::sqrt(sq_spectral_norm(g.ks));
  g.e = eps.value() * g.nt * g.ns;
  const double bracket = 2.0 * (1.0 + eps.value()) * g.nt / g.ns;

  Complex worst_dir(1.0, 0.0);
  double worst_slope = std::numeric_limits<double>::infinity();
  if (t.space().field() == Field::Real) {
    for (double sign : {1.0, -1.0}) {
      const double p = g.slope(Complex(sign, 0.0));
      if (p < worst_slope) {
        worst_slope = p;
        worst_dir = Complex(sign, 0.0);
      }
    }
  } else {
    int worst_k = 0;
    for (int k = 0; k < kDirectPhaseGrid; ++k) {
      const double p = g.slope(std::polar(1.0, 2.0 * kPi * k / kDirectPhaseGrid));
      if (p < worst_slope) {
        worst_slope = p;
        worst_k = k;
      }
    }
    const double step = 2.0 * kPi / kDirectPhaseGrid;
    const double centre = step * worst_k;
    const Golden refined =
        golden_min([&](double th) { return g.slope(std::polar(1.0, th)); }, centre - step,
                   centre + step, 40);
    if (refined.f < worst_slope) {
      worst_slope = refined.f;
      worst_dir = std::polar(1.0, refined.x);
    } else {
      worst_dir = std::polar(1.0, centre);
    }
  }

  const double band = operator_band(t, s);
  double defect = 0.0;
  Complex lambda(0.0, 0.0);
  if (worst_slope < 0.0) {
    const Golden m = g.ray_min(worst_dir, bracket);
    if (m.f < 0.0) {
      defect = m.f;
      lambda = m.x * worst_dir;
    }
  }

  double margin = worst_slope;
  // A clearly negative minimum overrides a slope estimate that missed it.
  const double floor = 1e-12 * g.nt * g.nt;
  if (defect < -floor && margin >= -band) margin = -std::sqrt(-defect) * g.ns;

  Verdict v = verdict_from_margin(margin, band, Method::DirectMinimization);
  v.defect = defect;
  v.lambda = lambda;
  return v;
}

Verdict op_orth_attainment_real(const ABoundedOperator& t, const ABoundedOperator& s,
                                Epsilon eps) {
  require_same_space(t, s);
  if (t.space().field() != Field::Real)
    throw Error(ErrorCode::ComplexField, "the attainment criterion is for real spaces; use the theta sweep");
  require_nonzero(t);

  const AttainmentForm form = attainment_form(t, s, eps);
  const Matrix ms = 0.5 * (form.m + form.m.adjoint());
  const Eigensystem eig = hermitian_eig(ms, 1e-6);
  const Index m = ms.rows();
  const double mu_max = eig.values[0];
  const double mu_min = eig.values[m - 1];
  const Vector e_max = eig.vectors.col(0);
  const Vector e_min = eig.vectors.col(m - 1);

  double minval = 0.0;
  Vector u;
  if (mu_min <= 0.0 && mu_max >= 0.0) {
    if (mu_max - mu_min <= 0.0) {
      u = e_max;
    } else {
      // cos^2 mu_min + sin^2 mu_max = 0.
      const double c = std::sqrt(mu_max / (mu_max - mu_min));
      const double sn = std::sqrt(-mu_min / (mu_max - mu_min));
      u = c * e_min + sn * e_max;
    }
  } else if (mu_min > 0.0) {
    minval = mu_min;
    u = e_min;
  } else {
    minval = -mu_max;
    u = e_max;
  }

  Verdict v = verdict_from_margin(form.e - minval, operator_band(t, s), Method::Attainment);
  v.x = Vector(t.space().coord_inverse() * (form.attainment.attain_coords * u));
  return v;
}

Verdict op_orth_theta_sweep_complex(const ABoundedOperator& t, const ABoundedOperator& s,
                                    Epsilon eps, int grid) {
  require_same_space(t, s);
  if (t.space().field() != Field::Complex)
    throw Error(ErrorCode::RealField, "the theta sweep is for complex spaces; use the attainment criterion");
  if (grid < 1) throw Error(ErrorCode::InvalidArgument, "theta grid must be positive");
  require_nonzero(t);

  const AttainmentForm form = attainment_form(t, s, eps);
  auto hermitian_part = [&](double theta) {
    const Complex ph = std::polar(1.0, -theta);
    return Matrix(0.5 * (ph * form.m + std::conj(ph) * form.m.adjoint()));
  };
  // Re(e^{-i theta} <T x, S x>_A) must reach >= -e and <= e on the sphere.
  auto margin_at = [&](double theta) {
    const Matrix h = hermitian_part(theta);
    const double hi = hermitian_max_eigenvalue(h);
    const double lo = -hermitian_max_eigenvalue(-h);
    return std::min(hi + form.e, form.e - lo);
  };

  double worst = std::numeric_limits<double>::infinity();
  double worst_theta = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double theta = kPi * k / grid;
    const double mg = margin_at(theta);
    if (mg < worst) {
      worst = mg;
      worst_theta = theta;
    }
  }
  const double step = kPi / grid;
  const Golden refined =
      golden_min(margin_at, worst_theta - step, worst_theta + step, 40);
  if (refined.f < worst) {
    worst = refined.f;
    worst_theta = refined.x;
  }

  const Eigensystem eig = hermitian_eig(hermitian_part(worst_theta), 1e-6);
  const Matrix& basis = form.attainment.attain_coords;
  const Matrix& winv = t.space().coord_inverse();

  Verdict v = verdict_from_margin(worst, operator_band(t, s), Method::ThetaSweep);
  v.theta = worst_theta;
  v.x = Vector(winv * (basis * eig.vectors.col(0)));
  v.y = Vector(winv * (basis * eig.vectors.col(eig.vectors.cols() - 1)));
  return v;
}

SubsetCheck attainment_subset(const ABoundedOperator& t, const ABoundedOperator& s) {
  require_same_space(t, s);
  SubsetCheck out;
  if (t.space().rank() == 0) {
    out.contained = true;
    return out;
  }
  const Matrix qt = norm_attainment_set(t).attain_coords;
  const Matrix qs = norm_attainment_set(s).attain_coords;
  const Matrix residual = qt - qs * (qs.adjoint() * qt);
  out.residual = std::sqrt(sq_spectral_norm(residual));
  out.contained = out.residual <= t.space().tolerances().orth_tol;
  return out;
}

Verdict op_orth_pointwise(const ABoundedOperator& t, const ABoundedOperator& s, Epsilon eps) {
  require_same_space(t, s);
  if (t.space().field() != Field::Real)
    throw Error(ErrorCode::ComplexField, "the pointwise criterion is stated for real spaces");
  require_nonzero(t);
  const SubsetCheck subset = attainment_subset(t, s);
  if (!subset.contained)
    throw Error(ErrorCode::SubsetHypothesisFails,
                "M_A^T is not contained in M_A^S (residual " + std::to_string(subset.residual) + ")");

  const Vector x = *op_orth_attainment_real(t, s, eps).x;
  Verdict v = is_chmielinski_orthogonal_vec(t.space(), t.apply(x), s.apply(x), eps);
  v.method = Method::Pointwise;
  v.x = x;
  return v;
}

}  // namespace semiortho
