#include "semiortho/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "json.hpp"
#include "semiortho/approx_orth.hpp"
#include "semiortho/fixtures.hpp"
#include "semiortho/symmetry.hpp"

namespace semiortho {

namespace {

using nlohmann::json;

struct TrialFailure {
  std::string what;
};

json to_json(const Matrix& m) {
  const bool real = is_real(m);
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      if (real)
        row.push_back(m(i, j).real());
      else
        row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

json to_json(const Vector& v) {
  const bool real = is_real(v);
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    if (real)
      out.push_back(v[i].real());
    else
      out.push_back({v[i].real(), v[i].imag()});
  }
  return out;
}

json to_json(const Verdict& v) {
  return {{"holds", v.holds}, {"boundary", v.boundary}, {"margin", v.margin},
          {"method", to_string(v.method)}};
}

// Trial context: the instance being tested is recorded as it is built so a
// failure can be replayed.
struct Trial {
  InstanceGenerator& gen;
  json instance = json::object();

  void require(bool ok, const std::string& what) const {
    if (!ok) throw TrialFailure{what};
  }
};

using TrialFn = std::function<void(Trial&, int)>;

struct Suite {
  const char* name;
  const char* module;
  bool repeat;  // false: deterministic, run once
  TrialFn run;
};

double pick_epsilon(InstanceGenerator& gen) {
  static const double kGrid[] = {0.0, 0.1, 0.5, 0.9};
  if (gen.uniform(0.0, 1.0) < 0.3) return kGrid[gen.uniform_index(0, 3)];
  return gen.epsilon();
}

PsdPtr psd_of(const RandomSpace& s) { return make_psd(s.a, s.field); }

// ---------------------------------------------------------------- core-linalg

void eig_roundtrip(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const Index n = g.uniform_index(1, 8);
  Matrix m;
  if (g.uniform(0.0, 1.0) < 0.3) {
    // Repeated eigenvalues exercise the cluster cleanup.
    RealVector mu(n);
    for (Index k = 0; k < n; ++k) mu[k] = std::round(g.uniform(-2.0, 2.0));
    const Matrix q = g.unitary(n, f);
    m = q * mu.cast<Complex>().asDiagonal() * q.adjoint();
  } else {
    const Matrix x = g.matrix(n, n, f);
    m = 0.5 * (x + x.adjoint());
  }
  m = 0.5 * (m + m.adjoint());
  tr.instance["M"] = to_json(m);
  const Eigensystem e = hermitian_eig(m);
  const double scale = e.values.cwiseAbs().maxCoeff();
  const Matrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  tr.require(max_abs(rec - m) <= 1e-9 * (1.0 + scale), "reconstruction error");
  tr.require(max_abs(e.vectors.adjoint() * e.vectors - Matrix::Identity(n, n)) <= 1e-9,
             "eigenvectors not orthonormal");
  for (Index k = 1; k < n; ++k) tr.require(e.values[k - 1] >= e.values[k], "not descending");
}

void psd_structure(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const RandomSpace s = g.space(1, 7, 0, g.field());
  tr.instance["A"] = to_json(s.a);
  const PsdOperator a = psd_decompose(s.a, s.field);
  const double l1 = a.lambda_max();
  tr.require(a.rank() == s.rank, "rank differs from construction");
  for (Index k = 0; k < a.dim(); ++k) tr.require(a.eigenvalues()[k] >= 0.0, "negative eigenvalue");
  const Matrix p = a.range_projection();
  const double tol = 1e-10 * (1.0 + l1);
  tr.require(max_abs(p * p - p) <= 1e-10, "P^2 != P");
  tr.require(max_abs(p - p.adjoint()) <= 1e-10, "P != P*");
  tr.require(max_abs(p * a.matrix() - a.matrix()) <= tol, "PA != A");
  tr.require(max_abs(a.matrix() * p - a.matrix()) <= tol, "AP != A");
  const Matrix root = sqrt_psd(a);
  tr.require(max_abs(root * root - a.matrix()) <= 1e-9 * (1.0 + l1), "sqrt(A)^2 != A");
  const Matrix nb = null_basis(a);
  for (Index j = 0; j < nb.cols(); ++j)
    tr.require((a.matrix() * nb.col(j)).norm() <= a.tolerances().rank_tol * l1 * 10.0 + 1e-14,
               "null basis residual");
  if (a.rank() > 0) {
    const Vector u = g.vector(a.rank(), s.field);
    const Vector x = a.from_coords(u);
    tr.require(std::abs(norm_a(a, x) - u.norm()) <= 1e-10 * (1.0 + u.norm()),
               "coordinate map is not an isometry");
  }
  // Rank is monotone in rank_tol.
  Tolerances loose;
  loose.rank_tol = 1e-3;
  tr.require(psd_decompose(s.a, s.field, loose).rank() <= a.rank(), "rank not monotone");
}

// ----------------------------------------------------------------- semi-inner

struct VecInstance {
  RandomSpace s;
  PsdPtr a;
  Vector x;
  Vector y;
  double eps;
};

VecInstance vec_instance(Trial& tr, Field f) {
  InstanceGenerator& g = tr.gen;
  VecInstance v{g.space(1, 6, 0, f), nullptr, {}, {}, pick_epsilon(g)};
  v.a = psd_of(v.s);
  const Index n = v.s.dim();
  v.x = g.vector(n, f) * g.uniform(0.1, 3.0);
  v.y = g.vector(n, f) * g.uniform(0.1, 3.0);
  const double kind = g.uniform(0.0, 1.0);
  if (kind < 0.1 && v.s.rank < n) {
    v.x = g.null_vector(v.s);
  } else if (kind < 0.25 && v.s.rank > 0) {
    // Steer |<x,y>_A| onto the threshold eps ||x|| ||y|| (up to a random factor).
    const double nx = norm_a(*v.a, v.x);
    if (nx > 0.0) {
      const Vector y0 = orthogonal_decomposition(*v.a, v.x, v.y);
      const double target = v.eps * g.uniform(0.5, 1.5);
      const double ny0 = norm_a(*v.a, y0);
      // y = y0 + c x with |c| nx = target ||y|| => |c| nx = target sqrt(ny0^2 + |c|^2 nx^2).
      if (target < 1.0 && ny0 > 0.0) {
        const double c = target * ny0 / (nx * std::sqrt(1.0 - target * target));
        v.y = y0 + c * g.unimodular(f) * v.x;
      }
    }
  }
  tr.instance["field"] = to_string(f);
  tr.instance["A"] = to_json(v.s.a);
  tr.instance["x"] = to_json(v.x);
  tr.instance["y"] = to_json(v.y);
  tr.instance["epsilon"] = v.eps;
  return v;
}

void vec_inner_product(Trial& tr, int) {
  const VecInstance v = vec_instance(tr, tr.gen.field());
  const PsdOperator& a = *v.a;
  const Complex xy = inner_a(a, v.x, v.y);
  const Complex yx = inner_a(a, v.y, v.x);
  const double scale = v.x.norm() * v.y.norm() * a.lambda_max();
  tr.require(std::abs(xy - std::conj(yx)) <= 1e-12 * (1.0 + scale), "not conjugate symmetric");
  const Complex brute = v.y.dot(a.effective() * v.x);
  tr.require(std::abs(xy - brute) <= 1e-10 * (1.0 + scale), "differs from y* A x");
  const double nx = norm_a(a, v.x);
  tr.require(std::abs(nx - std::sqrt(std::max(0.0, inner_a(a, v.x, v.x).real()))) <=
                 1e-10 * (1.0 + nx),
             "norm differs from sqrt<x,x>_A");
  tr.require(std::abs(nx - (sqrt_psd(a) * v.x).norm()) <= 1e-10 * (1.0 + nx),
             "norm differs from ||A^{1/2} x||");
}

void vec_equality_routes(Trial& tr, int) {
  const VecInstance v = vec_instance(tr, tr.gen.field());
  const Epsilon eps(v.eps);
  const Verdict ip = is_eps_orthogonal(*v.a, v.x, v.y, eps);
  const Verdict direct = is_chmielinski_orthogonal_vec(*v.a, v.x, v.y, eps);
  tr.instance["inner_product"] = to_json(ip);
  tr.instance["direct"] = to_json(direct);
  const double scale = norm_a(*v.a, v.x) * norm_a(*v.a, v.y);
  tr.require(std::abs(ip.margin - direct.margin) <= 1e-8 * (1.0 + scale), "margins differ");
  tr.require(ip.holds == direct.holds, "verdicts differ");
}

void vec_symmetry(Trial& tr, int) {
  const VecInstance v = vec_instance(tr, tr.gen.field());
  const Epsilon eps(v.eps);
  tr.require(is_eps_orthogonal(*v.a, v.x, v.y, eps).holds ==
                 is_eps_orthogonal(*v.a, v.y, v.x, eps).holds,
             "relation is not symmetric");
}

void vec_homogeneity(Trial& tr, int) {
  const VecInstance v = vec_instance(tr, tr.gen.field());
  InstanceGenerator& g = tr.gen;
  const Field f = v.s.field;
  const Epsilon eps(v.eps);
  const Verdict base = is_chmielinski_orthogonal_vec(*v.a, v.x, v.y, eps);
  Complex a = g.scalar(f) * 3.0;
  const Complex b = g.scalar(f) * 3.0;
  if (g.uniform(0.0, 1.0) < 0.1) a = 0.0;
  tr.instance["a"] = {a.real(), a.imag()};
  tr.instance["b"] = {b.real(), b.imag()};
  const Verdict scaled_v = is_chmielinski_orthogonal_vec(*v.a, a * v.x, b * v.y, eps);
  if (a == Complex(0.0, 0.0)) {
    tr.require(scaled_v.holds, "0 is orthogonal to everything");
    return;
  }
  if (base.boundary || scaled_v.boundary) return;
  tr.require(base.holds == scaled_v.holds, "verdict changed under scaling");
}

void vec_characterization(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  if (trial % 2 == 0) {
    const VecInstance v = vec_instance(tr, g.field());
    const PsdOperator& a = *v.a;
    const Vector z = orthogonal_decomposition(a, v.x, v.y);
    const double nx = norm_a(a, v.x);
    const double ny = norm_a(a, v.y);
    const double scale = 1.0 + nx * ny + ny * ny;
    tr.require(std::abs(inner_a(a, v.x, z)) <= 1e-10 * scale, "<x, z>_A != 0");
    const Verdict ip = is_eps_orthogonal(a, v.x, v.y, Epsilon(v.eps));
    const double dist = norm_a(a, Vector(z - v.y));
    const double slack = ip.boundary && nx > 0.0 ? a.tolerances().verdict_margin_tol / nx : 0.0;
    if (ip.holds)
      tr.require(dist <= v.eps * ny + 1e-10 * (1.0 + ny) + slack, "||z - y||_A > eps ||y||_A");
    else if (nx > 0.0 && !ip.boundary)
      tr.require(dist > v.eps * ny, "z satisfies the bound although x is not orthogonal to y");
  } else {
    // Converse: build z with x ⊥_A z, then y within eps ||y||_A of z.
    const Field f = g.field();
    const RandomSpace s = g.space(1, 6, 1, f);
    const PsdPtr a = psd_of(s);
    const double e = pick_epsilon(g);
    const Vector x = g.vector(s.dim(), f);
    const Vector z = orthogonal_decomposition(*a, x, g.vector(s.dim(), f));
    const Vector d = g.vector(s.dim(), f);
    const double nz = norm_a(*a, z);
    const double nd = norm_a(*a, d);
    const double step = nd > 0.0 ? g.uniform(0.0, 1.0) * e * nz / ((1.0 + e) * nd) : 0.0;
    const Vector y = z + step * d;
    tr.instance["A"] = to_json(s.a);
    tr.instance["x"] = to_json(x);
    tr.instance["y"] = to_json(y);
    tr.instance["epsilon"] = e;
    tr.require(norm_a(*a, Vector(y - z)) <= e * norm_a(*a, y) + 1e-12, "construction");
    tr.require(is_eps_orthogonal(*a, x, y, Epsilon(e)).holds, "predicate fails for constructed pair");
  }
}

void vec_cone_dichotomy(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  const VecInstance v = vec_instance(tr, g.field());
  const PsdOperator& a = *v.a;
  Complex alpha(1.0, 0.0);
  if (v.s.field == Field::Complex) alpha = std::polar(1.0, g.uniform(0.0, std::numbers::pi));
  Vector y = v.y;
  if (trial % 4 == 0) y = orthogonal_decomposition(a, v.x, v.y);
  tr.instance["alpha"] = {alpha.real(), alpha.imag()};
  const Cone cone = cone_membership(a, v.x, y, alpha);
  if (trial % 4 == 0) tr.require(cone == Cone::Both, "A-orthogonal pair is not in both cones");
  const double nx = norm_a(a, v.x);
  const double slack = 1e-9 * (1.0 + nx);
  for (int k = -1000; k <= 1000; ++k) {
    const double t = 0.01 * k;
    const double val = norm_a(a, Vector(v.x + t * alpha * y));
    if (val >= nx - slack) continue;
    if (t > 0.0) tr.require(cone == Cone::MinusOnly, "plus cone violated");
    if (t < 0.0) tr.require(cone == Cone::PlusOnly, "minus cone violated");
  }
}

void vec_null_degeneracy(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const Index n = g.uniform_index(2, 6);
  const RandomSpace s = g.space(n, g.uniform_index(0, n - 1), f);
  const PsdPtr a = psd_of(s);
  const Vector x = g.null_vector(s);
  const Vector y = g.vector(n, f);
  const Epsilon eps(pick_epsilon(g));
  tr.instance["A"] = to_json(s.a);
  tr.instance["x"] = to_json(x);
  tr.instance["y"] = to_json(y);
  tr.require(a->is_null(x), "null vector not detected");
  tr.require(is_a_orthogonal(*a, x, y).holds, "A-orthogonality fails");
  tr.require(is_eps_orthogonal(*a, x, y, eps).holds, "approximate orthogonality fails");
  tr.require(is_chmielinski_orthogonal_vec(*a, x, y, eps).holds, "direct route fails");
  tr.require((orthogonal_decomposition(*a, x, y) - y).norm() == 0.0, "z != y");
}

void vec_directional_derivative(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const RandomSpace s = g.space(1, 6, 1, f);
  const PsdPtr a = psd_of(s);
  Vector x = g.range_vector(s) + g.null_vector(s);
  x /= norm_a(*a, x);
  const Vector y = g.vector(s.dim(), f);
  tr.instance["A"] = to_json(s.a);
  tr.instance["x"] = to_json(x);
  tr.instance["y"] = to_json(y);
  const double h = 1e-6;
  const double fd =
      (norm_a(*a, Vector(x + h * y)) - norm_a(*a, Vector(x - h * y))) / (2.0 * h);
  tr.require(std::abs(fd - directional_derivative(*a, x, y)) <= 1e-5,
             "finite difference disagrees with Re<x,y>_A");
}

// ------------------------------------------------------------- operator-space

struct OpInstance {
  RandomSpace s;
  PsdPtr a;
  Matrix t;
  Matrix sm;
  double eps;
};

void record(Trial& tr, const OpInstance& in) {
  tr.instance["field"] = to_string(in.s.field);
  tr.instance["A"] = to_json(in.s.a);
  tr.instance["T"] = to_json(in.t);
  tr.instance["S"] = to_json(in.sm);
  tr.instance["epsilon"] = in.eps;
}

// Random pair. Some trials give T a repeated top singular value or put S in
// special position so both verdicts get exercised.
OpInstance op_instance(Trial& tr, Field f, Index min_dim, Index min_rank) {
  InstanceGenerator& g = tr.gen;
  OpInstance in{g.space(min_dim, 6, min_rank, f), nullptr, {}, {}, pick_epsilon(g)};
  in.a = psd_of(in.s);
  const Index r = in.s.rank;
  Matrix ct = g.matrix(r, r, f);
  Matrix cs = g.matrix(r, r, f);
  const double kind = g.uniform(0.0, 1.0);
  if (r > 0 && kind < 0.2) {
    RealVector sigma(r);
    const Index m = g.uniform_index(1, r);
    for (Index k = 0; k < r; ++k) sigma[k] = k < m ? 1.0 : g.uniform(0.0, 0.9);
    ct = g.with_singular_values(sigma, f);
  } else if (r > 0 && kind < 0.3) {
    cs = ct * g.uniform(0.5, 2.0) * g.unimodular(f);
  } else if (r > 0 && kind < 0.4) {
    cs = g.matrix(r, r, f) * 1e-3 + g.unimodular(f) * Matrix::Identity(r, r);
  }
  in.t = g.with_coords(in.s, ct);
  in.sm = g.with_coords(in.s, cs);
  record(tr, in);
  return in;
}

void op_norm_reduction(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const Index n = g.uniform_index(2, 6);
  const RandomSpace s = g.space(n, g.uniform_index(1, n - 1), f);
  const PsdPtr a = psd_of(s);
  const Matrix t = g.bounded(s);
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  const ABoundedOperator op = ABoundedOperator::make(a, t);
  const Eigensystem kk = hermitian_eig(op.reduced().adjoint() * op.reduced());
  const double sigma = std::sqrt(std::max(0.0, kk.values[0]));
  tr.require(std::abs(sigma - op.norm()) <= 1e-9 * (1.0 + op.norm()), "||K|| != ||T~||");
  for (int k = 0; k < 200; ++k) {
    Vector x = g.vector(n, f);
    const double nx = norm_a(*a, x);
    if (nx <= 1e-8) continue;
    x /= nx;
    tr.require(norm_a(*a, op.apply(x)) <= op.norm() + 1e-7, "sampled vector beats the norm");
  }
}

void op_tilde_linearity(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const RandomSpace s = g.space(1, 6, 1, f);
  const PsdPtr a = psd_of(s);
  const Matrix t = g.bounded(s);
  const Matrix u = g.bounded(s);
  const Complex c = g.scalar(f);
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  tr.instance["S"] = to_json(u);
  const Matrix tt = tilde_reduce(a, t);
  const Matrix tu = tilde_reduce(a, u);
  const double scale = 1.0 + max_abs(tt) + max_abs(tu);
  tr.require(max_abs(tilde_reduce(a, t + u) - tt - tu) <= 1e-10 * scale, "not additive");
  tr.require(max_abs(tilde_reduce(a, c * t) - c * tt) <= 1e-10 * scale * (1.0 + std::abs(c)),
             "not homogeneous");
  tr.require(std::abs(eigenbasis_coords(s, t).norm() - tt.norm()) <= 1e-9 * scale,
             "reduction depends on the eigenbasis");
}

void op_attainment(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const RandomSpace s = g.space(1, 6, 1, f);
  const PsdPtr a = psd_of(s);
  const Index r = s.rank;
  const Index m = g.uniform_index(1, r);
  RealVector sigma(r);
  const double top = g.uniform(0.5, 3.0);
  for (Index k = 0; k < r; ++k) sigma[k] = k < m ? top : top * g.uniform(0.0, 0.9);
  const Matrix t = trial % 5 == 0 ? g.null_valued(s) : g.with_coords(s, g.with_singular_values(sigma, f));
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  const ABoundedOperator op = ABoundedOperator::make(a, t);
  const NormAttainment na = norm_attainment_set(op);
  const Matrix p = a->range_projection();
  if (trial % 5 == 0) {
    tr.require(op.is_zero(), "null-valued operator has nonzero norm");
    tr.require(na.multiplicity == r, "zero operator must be attained on all of R(A)");
  } else {
    tr.require(na.multiplicity == m, "multiplicity differs from construction");
  }
  for (Index j = 0; j < na.multiplicity; ++j) {
    const Vector v = na.attain_basis.col(j);
    tr.require(std::abs(norm_a(*a, v) - 1.0) <= 1e-8, "basis vector not A-unit");
    tr.require((v - p * v).norm() <= 1e-9 * v.norm(), "basis vector leaves R(A)");
    tr.require(std::abs(norm_a(*a, op.apply(v)) - op.norm()) <= 1e-8 * (1.0 + op.norm()),
               "basis vector does not attain");
  }
}

void op_null_absorption(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const Index n = g.uniform_index(2, 6);
  const RandomSpace s = g.space(n, g.uniform_index(1, n - 1), f);
  const PsdPtr a = psd_of(s);
  const Matrix t = g.bounded(s);
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  const Vector v = g.range_vector(s);
  const Vector u = g.null_vector(s);
  const double lhs = norm_a(*a, Vector(t * (u + v)));
  const double rhs = norm_a(*a, Vector(t * v));
  tr.require(std::abs(lhs - rhs) <= 1e-9 * (1.0 + rhs + u.norm() * max_abs(t)),
             "null component changes ||Tx||_A");
}

void op_isometry(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const RandomSpace s = g.space(1, 6, 1, f);
  const PsdPtr a = psd_of(s);
  const Index r = s.rank;
  Matrix t;
  bool expect;
  switch (trial % 3) {
    case 0:
      t = g.with_coords(s, g.unitary(r, f) * g.uniform(0.2, 3.0));
      expect = true;
      break;
    case 1:
      t = g.null_valued(s);
      expect = true;
      break;
    default: {
      RealVector sigma(r);
      for (Index k = 0; k < r; ++k) sigma[k] = 1.0 + 0.5 * k;
      t = g.with_coords(s, g.with_singular_values(sigma, f));
      expect = r == 1;
    }
  }
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  tr.require(is_a_isometry(ABoundedOperator::make(a, t)).isometry == expect,
             "isometry flag differs from construction");
}

// ---------------------------------------------------------------- approx-orth

void orth_routes_real(Trial& tr, int, bool inject_fault) {
  OpInstance in = op_instance(tr, Field::Real, 1, 1);
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const ABoundedOperator s = ABoundedOperator::make(in.a, in.sm);
  const Epsilon eps(in.eps);
  const Verdict direct = op_orth_direct(t, s, eps);
  Verdict attain = op_orth_attainment_real(t, s, eps);
  if (inject_fault) {
    attain.holds = !attain.holds;
    attain.boundary = false;
  }
  tr.instance["direct"] = to_json(direct);
  tr.instance["attainment"] = to_json(attain);
  tr.require(routes_agree(direct, attain), "direct and attainment routes disagree");
}

void orth_routes_complex(Trial& tr, int) {
  OpInstance in = op_instance(tr, Field::Complex, 1, 1);
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const ABoundedOperator s = ABoundedOperator::make(in.a, in.sm);
  const Epsilon eps(in.eps);
  const Verdict direct = op_orth_direct(t, s, eps);
  const Verdict sweep = op_orth_theta_sweep_complex(t, s, eps);
  tr.instance["direct"] = to_json(direct);
  tr.instance["theta_sweep"] = to_json(sweep);
  tr.require(routes_agree(direct, sweep), "direct and theta-sweep routes disagree");
}

// T and S share right singular vectors; T's top space sits inside S's.
OpInstance nested_attainment(Trial& tr) {
  InstanceGenerator& g = tr.gen;
  OpInstance in{g.space(1, 6, 1, Field::Real), nullptr, {}, {}, pick_epsilon(g)};
  in.a = psd_of(in.s);
  const Index r = in.s.rank;
  const Index mt = g.uniform_index(1, r);
  const Index ms = g.uniform_index(mt, r);
  const Matrix p = g.unitary(r, Field::Real);
  RealVector st(r), ss(r);
  for (Index k = 0; k < r; ++k) {
    st[k] = k < mt ? 1.0 : g.uniform(0.0, 0.9);
    ss[k] = k < ms ? 2.0 : g.uniform(0.0, 1.8);
  }
  const Matrix left_t = g.unitary(r, Field::Real);
  Matrix left_s = g.unitary(r, Field::Real);
  if (g.uniform(0.0, 1.0) < 0.3) left_s = left_t;
  in.t = g.with_coords(in.s, left_t * st.cast<Complex>().asDiagonal() * p.adjoint());
  in.sm = g.with_coords(in.s, left_s * ss.cast<Complex>().asDiagonal() * p.adjoint());
  record(tr, in);
  return in;
}

void orth_pointwise(Trial& tr, int) {
  const OpInstance in = nested_attainment(tr);
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const ABoundedOperator s = ABoundedOperator::make(in.a, in.sm);
  const Epsilon eps(in.eps);
  tr.require(attainment_subset(t, s).contained, "constructed attainment sets are not nested");
  const Verdict pw = op_orth_pointwise(t, s, eps);
  const Verdict direct = op_orth_direct(t, s, eps);
  tr.instance["pointwise"] = to_json(pw);
  tr.instance["direct"] = to_json(direct);
  tr.require(routes_agree(pw, direct), "pointwise and direct routes disagree");
}

void orth_subset_reverse(Trial& tr, int) {
  const OpInstance in = nested_attainment(tr);
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const ABoundedOperator s = ABoundedOperator::make(in.a, in.sm);
  const Epsilon eps(in.eps);
  const Verdict fwd = op_orth_direct(t, s, eps);
  if (!fwd.holds) return;
  const Verdict rev = op_orth_direct(s, t, eps);
  tr.instance["forward"] = to_json(fwd);
  tr.instance["reverse"] = to_json(rev);
  tr.require(rev.holds || rev.boundary || fwd.boundary,
             "T ⊥ S with nested attainment sets but S not ⊥ T");
}

void orth_homogeneity(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.uniform(0.0, 1.0) < 0.75 ? Field::Real : Field::Complex;
  const OpInstance in = op_instance(tr, f, 1, 1);
  Complex ca = g.scalar(f) * 2.0;
  Complex cb = g.scalar(f) * 2.0;
  if (std::abs(ca) < 1e-3) ca = 1.0;
  if (std::abs(cb) < 1e-3) cb = 1.0;
  tr.instance["a"] = {ca.real(), ca.imag()};
  tr.instance["b"] = {cb.real(), cb.imag()};
  const Epsilon eps(in.eps);
  const Verdict base = op_orth_direct(ABoundedOperator::make(in.a, in.t),
                                      ABoundedOperator::make(in.a, in.sm), eps);
  const Verdict moved = op_orth_direct(ABoundedOperator::make(in.a, ca * in.t),
                                       ABoundedOperator::make(in.a, cb * in.sm), eps);
  tr.require(routes_agree(base, moved), "verdict changed under scaling");
}

void orth_eps_monotone(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const OpInstance in = op_instance(tr, f, 1, 1);
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const ABoundedOperator s = ABoundedOperator::make(in.a, in.sm);
  if (t.is_zero()) return;
  const double e2 = g.uniform(in.eps, 0.99);
  tr.instance["epsilon2"] = e2;
  auto decide = [&](double e) {
    return f == Field::Real ? op_orth_attainment_real(t, s, Epsilon(e))
                            : op_orth_theta_sweep_complex(t, s, Epsilon(e));
  };
  const Verdict lo = decide(in.eps);
  const Verdict hi = decide(e2);
  tr.require(hi.margin >= lo.margin - 1e-12 * (1.0 + t.norm() * s.norm()),
             "margin decreased with eps");
  if (lo.holds) tr.require(hi.holds, "holds at eps but not at a larger eps");
  // Same property through the defining functional, real field (cheap).
  if (f == Field::Real) {
    const Verdict dlo = op_orth_direct(t, s, Epsilon(in.eps));
    const Verdict dhi = op_orth_direct(t, s, Epsilon(e2));
    if (dlo.holds && !dlo.boundary) tr.require(dhi.holds, "direct route not monotone in eps");
  }
}

void orth_zero_cases(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const Field f = g.field();
  const RandomSpace s = g.space(1, 6, 1, f);
  const PsdPtr a = psd_of(s);
  const Matrix z = g.null_valued(s);
  const Matrix t = g.bounded(s);
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  tr.instance["Z"] = to_json(z);
  const Epsilon eps(pick_epsilon(g));
  const ABoundedOperator zo = ABoundedOperator::make(a, z);
  const ABoundedOperator to = ABoundedOperator::make(a, t);
  tr.require(zo.is_zero(), "null-valued operator has nonzero norm");
  tr.require(op_orth_direct(zo, to, eps).holds, "0 must be orthogonal to T");
  tr.require(op_orth_direct(to, zo, eps).holds, "T must be orthogonal to 0");
  bool threw = false;
  try {
    if (f == Field::Real)
      op_orth_attainment_real(zo, to, eps);
    else
      op_orth_theta_sweep_complex(zo, to, eps);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::ZeroNorm;
  }
  tr.require(threw, "attainment routes must reject ||T||_A = 0");
}

// ------------------------------------------------------------------ symmetry

// Real pair (space, T) whose reduction has the given singular values.
struct SymInstance {
  RandomSpace s;
  PsdPtr a;
  Matrix t;
  double eps;
};

SymInstance sym_instance(Trial& tr, Index min_rank, const std::function<RealVector(Index)>& sigma) {
  InstanceGenerator& g = tr.gen;
  static const double kGrid[] = {0.0, 0.1, 0.5, 0.9};
  SymInstance in{g.space(min_rank, 6, min_rank, Field::Real), nullptr, {}, kGrid[g.uniform_index(0, 3)]};
  in.a = psd_of(in.s);
  in.t = g.with_coords(in.s, g.with_singular_values(sigma(in.s.rank), Field::Real) *
                                 g.uniform(0.3, 3.0));
  tr.instance["A"] = to_json(in.s.a);
  tr.instance["T"] = to_json(in.t);
  tr.instance["epsilon"] = in.eps;
  return in;
}

void require_verified(Trial& tr, const SymmetryReport& rep) {
  if (rep.must_hold) tr.instance["must_hold"] = to_json(*rep.must_hold);
  if (rep.must_fail) tr.instance["must_fail"] = to_json(*rep.must_fail);
  tr.require(rep.verified, "witness does not verify");
}

void check_witness_shape(Trial& tr, const PsdOperator& a, const WitnessConstruction& w) {
  const Matrix nb = null_basis(a);
  if (nb.cols() > 0)
    tr.require(max_abs(w.op * nb) <= 1e-9 * (1.0 + max_abs(w.op)), "witness acts on N(A)");
}

void sym_right_witness(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const SymInstance in = sym_instance(tr, 2, [&](Index r) {
    RealVector s(r);
    const Index m = g.uniform_index(1, r - 1);
    for (Index k = 0; k < r; ++k) s[k] = k < m ? 1.0 : g.uniform(0.0, 0.95);
    return s;
  });
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const SymmetryReport rep = classify_right(t, Epsilon(in.eps));
  tr.require(rep.kind == SymmetryKind::NotRightSymmetric, "non-isometry classified symmetric");
  require_verified(tr, rep);
  const WitnessConstruction& w = *rep.witness;
  const Matrix c = t.tilde() / t.norm();
  tr.require((w.h0_basis.adjoint() * c.adjoint() * w.w).norm() <= 1e-9, "w0 not orthogonal to T~(H0)");
  tr.require(std::abs(w.w.norm() - 1.0) <= 1e-9, "w0 not a unit vector");
  check_witness_shape(tr, *in.a, w);
}

// S ⊥ T for an isometry T, by construction: S attains its norm only at v and
// S v is orthogonal to T v.
Matrix orthogonal_to_isometry(InstanceGenerator& g, const RandomSpace& s, const Matrix& ct) {
  const Index r = s.rank;
  const Matrix v = g.unitary(r, Field::Real);
  Vector u = g.vector(r, Field::Real);
  const Vector tv = ct * v.col(0);
  u -= (tv.dot(u) / tv.squaredNorm()) * tv;
  u.normalize();
  Matrix left(r, r);
  left.col(0) = u;
  left.rightCols(r - 1) = orthonormal_complement(Matrix(u), r - 1);
  RealVector sigma(r);
  sigma[0] = g.uniform(0.5, 2.0);
  for (Index k = 1; k < r; ++k) sigma[k] = sigma[0] * g.uniform(0.0, 0.9);
  return g.with_coords(s, left * sigma.cast<Complex>().asDiagonal() * v.adjoint());
}

void sym_isometry_direction(Trial& tr, int) {
  InstanceGenerator& g = tr.gen;
  const RandomSpace s = g.space(2, 6, 2, Field::Real);
  const PsdPtr a = psd_of(s);
  const Matrix ct = g.unitary(s.rank, Field::Real) * g.uniform(0.3, 3.0);
  const Matrix t = g.with_coords(s, ct);
  const Epsilon eps(pick_epsilon(g));
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  tr.instance["epsilon"] = eps.value();
  const ABoundedOperator to = ABoundedOperator::make(a, t);
  tr.require(classify_right(to, eps).kind == SymmetryKind::RightSymmetric,
             "isometry classified not right symmetric");
  for (int k = 0; k < 3; ++k) {
    const Matrix sm = orthogonal_to_isometry(g, s, ct);
    tr.instance["S"] = to_json(sm);
    const ABoundedOperator so = ABoundedOperator::make(a, sm);
    tr.require(op_orth_direct(so, to, eps).holds, "construction: S ⊥ T fails");
    tr.require(op_orth_direct(to, so, eps).holds, "isometry T is not orthogonal to S");
  }
}

void sym_right_probe(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  const bool iso = trial % 2 == 0;
  const SymInstance in = sym_instance(tr, 2, [&](Index r) {
    RealVector s(r);
    for (Index k = 0; k < r; ++k) s[k] = iso || k == 0 ? 1.0 : g.uniform(0.0, 0.95);
    return s;
  });
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const Epsilon eps(in.eps);
  const SymmetryReport rep = classify_right(t, eps);
  if (!iso) {
    tr.require(rep.kind == SymmetryKind::NotRightSymmetric, "non-isometry classified symmetric");
    require_verified(tr, rep);
    return;
  }
  tr.require(rep.kind == SymmetryKind::RightSymmetric, "isometry classified not symmetric");
  for (int k = 0; k < 10; ++k) {
    const Matrix sm = g.bounded(in.s);
    const ABoundedOperator so = ABoundedOperator::make(in.a, sm);
    if (so.is_zero() || !op_orth_attainment_real(so, t, eps).holds) continue;
    tr.instance["S"] = to_json(sm);
    const Verdict back = op_orth_direct(t, so, eps);
    tr.require(back.holds, "probe found S ⊥ T without T ⊥ S for an isometry");
  }
}

void sym_left_witness(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  const int branch = trial % 3;
  const SymInstance in = sym_instance(tr, 2, [&](Index r) {
    RealVector s = RealVector::Zero(r);
    s[0] = 1.0;
    if (branch == 0) {
      const Index m = g.uniform_index(2, r);
      for (Index k = 1; k < r; ++k) s[k] = k < m ? 1.0 : g.uniform(0.0, 0.9);
    } else if (branch == 2) {
      for (Index k = 1; k < r; ++k) s[k] = g.uniform(0.05, 0.9);
    }
    return s;
  });
  tr.instance["branch"] = branch;
  const ABoundedOperator t = ABoundedOperator::make(in.a, in.t);
  const SymmetryReport rep = classify_left(t, Epsilon(in.eps));
  tr.require(rep.kind == SymmetryKind::NotLeftSymmetric, "nonzero T classified left symmetric");
  require_verified(tr, rep);
  const WitnessConstruction& w = *rep.witness;
  static const ConstructionTag kTags[] = {ConstructionTag::LeftMultiPair, ConstructionTag::LeftCaseI,
                                          ConstructionTag::LeftCaseII};
  tr.require(w.tag == kTags[branch], "unexpected construction branch");
  if (w.tag != ConstructionTag::LeftMultiPair) {
    const Matrix c = t.tilde() / t.norm();
    const Vector tx = c * w.h0_basis.col(0);
    tr.require(std::abs(tx.dot(w.w)) <= 1e-9, "w not orthogonal to T~x");
    tr.require(std::abs(w.z1.dot(w.z2)) <= 1e-9, "z1, z2 not orthogonal");
  }
  check_witness_shape(tr, *in.a, w);
}

void sym_left_classification(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  const RandomSpace s = g.space(2, 6, 2, Field::Real);
  const PsdPtr a = psd_of(s);
  const bool zero = trial % 2 == 0;
  const Matrix t = zero ? g.null_valued(s) : g.bounded(s);
  tr.instance["A"] = to_json(s.a);
  tr.instance["T"] = to_json(t);
  const double e = pick_epsilon(g);
  tr.instance["epsilon"] = e;
  const SymmetryReport rep = classify_left(ABoundedOperator::make(a, t), Epsilon(e));
  if (zero) {
    tr.require(rep.kind == SymmetryKind::LeftSymmetric, "zero-norm T not left symmetric");
  } else {
    tr.require(rep.kind == SymmetryKind::NotLeftSymmetric, "nonzero T classified left symmetric");
    require_verified(tr, rep);
  }
  // A one-dimensional effective space is rejected rather than guessed.
  const RandomSpace thin = g.space(g.uniform_index(1, 4), 1, Field::Real);
  bool rejected = false;
  try {
    classify_left(ABoundedOperator::make(psd_of(thin), g.bounded(thin)), Epsilon(0.2));
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::RankTooSmall;
  }
  tr.require(rejected, "dim R(A) = 1 must be rejected");
}

void sym_witness_scaling(Trial& tr, int trial) {
  InstanceGenerator& g = tr.gen;
  const SymInstance in = sym_instance(tr, 2, [&](Index r) {
    RealVector s(r);
    for (Index k = 0; k < r; ++k) s[k] = k == 0 ? 1.0 : g.uniform(0.0, 0.9);
    return s;
  });
  const double c = g.uniform(0.1, 10.0) * (g.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  tr.instance["scale"] = c;
  const Epsilon eps(in.eps);
  const ABoundedOperator t1 = ABoundedOperator::make(in.a, in.t);
  const ABoundedOperator t2 = ABoundedOperator::make(in.a, c * in.t);
  const bool right = trial % 2 == 0;
  const SymmetryReport r1 = right ? classify_right(t1, eps) : classify_left(t1, eps);
  const SymmetryReport r2 = right ? classify_right(t2, eps) : classify_left(t2, eps);
  tr.require(r1.kind == r2.kind, "classification changed under scaling");
  tr.require(r1.verified && r2.verified, "witness does not verify after scaling");
  // The witness built for T still separates c T.
  const ABoundedOperator w = ABoundedOperator::make(in.a, r1.witness->op);
  const bool hold = right ? op_orth_direct(w, t2, eps).holds : op_orth_direct(t2, w, eps).holds;
  const bool fail = right ? op_orth_direct(t2, w, eps).holds : op_orth_direct(w, t2, eps).holds;
  tr.require(hold && !fail, "witness for T does not separate a rescaled T");
}

void sym_lemma_grid(Trial& tr, int) {
  for (int k = 0; k < 100; ++k) {
    const double e = 0.99 * k / 99.0;
    const LeftParameters p = left_parameters(Epsilon(e));
    tr.instance["epsilon"] = e;
    const double s1 = std::sqrt(1.0 - p.eps1 * p.eps1);
    tr.require(p.eps1 > e && p.eps1 < 1.0, "eps1 outside (eps, 1)");
    tr.require(p.t > 0.0, "t not positive");
    tr.require(p.a * p.eps1 > e, "a eps1 <= eps");
    tr.require((p.a * p.eps1 - e) / (s1 * p.b) < 1.0, "lower alpha bound >= 1");
    tr.require(std::abs(p.a * p.a + p.b * p.b - 1.0) <= 1e-12 && p.b > 0.0, "a^2 + b^2 != 1");
    if (e > 0.0)
      tr.require(p.alpha > p.alpha_lo && p.alpha < p.alpha_hi, "alpha not interior");
    else
      tr.require(p.alpha == p.alpha_lo, "alpha at eps = 0 must be the closed point");
    tr.require(std::abs(p.eps1 * p.a - s1 * p.alpha * p.b) <= e + 1e-12,
               "|<T~x, S~x>| exceeds eps");
  }
}

void reference_pair_chain(Trial& tr, int) {
  const ReferencePair ref = reference_asymmetric_pair();
  const PsdPtr a = make_psd(ref.a);
  const ABoundedOperator t = ABoundedOperator::make(a, ref.t);
  const ABoundedOperator s = ABoundedOperator::make(a, ref.s);
  const Epsilon eps(ref.eps);
  tr.require(std::abs(t.norm() - 2.0) <= 1e-12, "||T||_A != 2");
  tr.require(std::abs(s.norm() - 1.0) <= 1e-12, "||S||_A != 1");
  const NormAttainment nt = norm_attainment_set(t);
  const NormAttainment ns = norm_attainment_set(s);
  tr.require(nt.multiplicity == 1 && ns.multiplicity == 1, "attainment sets are not single pairs");
  tr.require(std::abs(std::abs(nt.attain_basis(0, 0)) - 1.0) <= 1e-9 &&
                 std::abs(nt.attain_basis(1, 0)) <= 1e-9,
             "M_A^T != {±(1,0)}");
  tr.require(std::abs(ns.attain_basis(0, 0)) <= 1e-9 &&
                 std::abs(std::abs(ns.attain_basis(1, 0)) - std::sqrt(0.5)) <= 1e-9,
             "M_A^S != {±(0,1/sqrt2)}");
  const Verdict fd = op_orth_direct(t, s, eps);
  const Verdict fa = op_orth_attainment_real(t, s, eps);
  const Verdict rd = op_orth_direct(s, t, eps);
  const Verdict ra = op_orth_attainment_real(s, t, eps);
  tr.require(fd.holds && fa.holds, "T ⊥ S fails");
  tr.require(!rd.holds && !ra.holds, "S ⊥ T holds");
  tr.require(std::abs(fa.margin - 2.0 / 3.0) <= 1e-12, "forward margin != 2/3");
  tr.require(std::abs(ra.margin - (2.0 / 3.0 - 1.0)) <= 1e-12, "reverse margin != -1/3");
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"eig_roundtrip", "core-linalg", true, eig_roundtrip},
      {"psd_structure", "core-linalg", true, psd_structure},
      {"inner_product", "semi-inner", true, vec_inner_product},
      {"vector_route_equivalence", "semi-inner", true, vec_equality_routes},
      {"vector_symmetry", "semi-inner", true, vec_symmetry},
      {"vector_homogeneity", "semi-inner", true, vec_homogeneity},
      {"characterization", "semi-inner", true, vec_characterization},
      {"cone_dichotomy", "semi-inner", true, vec_cone_dichotomy},
      {"null_degeneracy", "semi-inner", true, vec_null_degeneracy},
      {"directional_derivative", "semi-inner", true, vec_directional_derivative},
      {"norm_reduction", "operator-space", true, op_norm_reduction},
      {"tilde_linearity", "operator-space", true, op_tilde_linearity},
      {"attainment_set", "operator-space", true, op_attainment},
      {"null_absorption", "operator-space", true, op_null_absorption},
      {"isometry_flag", "operator-space", true, op_isometry},
      {"route_equivalence_real", "approx-orth", true, nullptr},
      {"route_equivalence_complex", "approx-orth", true, orth_routes_complex},
      {"pointwise_route", "approx-orth", true, orth_pointwise},
      {"nested_attainment_reverse", "approx-orth", true, orth_subset_reverse},
      {"operator_homogeneity", "approx-orth", true, orth_homogeneity},
      {"eps_monotonicity", "approx-orth", true, orth_eps_monotone},
      {"zero_operators", "approx-orth", true, orth_zero_cases},
      {"right_witness", "symmetry", true, sym_right_witness},
      {"isometry_direction", "symmetry", true, sym_isometry_direction},
      {"right_classification_probe", "symmetry", true, sym_right_probe},
      {"left_witness", "symmetry", true, sym_left_witness},
      {"left_classification", "symmetry", true, sym_left_classification},
      {"witness_scaling", "symmetry", true, sym_witness_scaling},
      {"left_lemma_grid", "symmetry", false, sym_lemma_grid},
      {"reference_pair", "symmetry", false, reference_pair_chain},
  };
  return all;
}

std::uint64_t suite_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 of (seed, index)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<std::string> selftest_suite_names() {
  std::vector<std::string> out;
  for (const Suite& s : suites()) out.emplace_back(s.name);
  return out;
}

std::vector<SuiteResult> run_selftest(const SelfTestOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  std::vector<SuiteResult> results;
  const auto& all = suites();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Suite& suite = all[i];
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), suite.name) == options.only.end())
      continue;
    TrialFn fn = suite.run;
    if (!fn) {
      const bool fault = options.inject_fault;
      fn = [fault](Trial& tr, int k) { orth_routes_real(tr, k, fault); };
    }

    SuiteResult res;
    res.name = suite.name;
    res.module = suite.module;
    InstanceGenerator gen(suite_seed(options.seed, i));
    const auto start = std::chrono::steady_clock::now();
    const int trials = suite.repeat ? options.trials : 1;
    for (int k = 0; k < trials; ++k) {
      Trial tr{gen};
      std::string failure;
      try {
        fn(tr, k);
      } catch (const TrialFailure& f) {
        failure = f.what;
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
      ++res.trials;
      if (failure.empty()) continue;
      if (res.failures++ == 0) {
        json ce = {{"suite", suite.name},   {"seed", options.seed}, {"trial", k},
                   {"failure", failure},    {"instance", tr.instance}};
        res.counterexample = ce.dump();
      }
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(res));
  }
  return results;
}

std::string selftest_json(const SelfTestOptions& options, const std::vector<SuiteResult>& results,
                          bool include_timing) {
  json suites_json = json::array();
  bool passed = true;
  double total = 0.0;
  for (const SuiteResult& r : results) {
    json s = {{"name", r.name},
              {"module", r.module},
              {"trials", r.trials},
              {"failures", r.failures},
              {"passed", r.passed()}};
    if (!r.counterexample.empty()) s["counterexample"] = json::parse(r.counterexample);
    if (include_timing) s["seconds"] = r.seconds;
    total += r.seconds;
    passed = passed && r.passed();
    suites_json.push_back(std::move(s));
  }
  json out = {{"schema", 1},       {"seed", options.seed}, {"trials", options.trials},
              {"passed", passed},  {"suites", suites_json}};
  if (include_timing) out["seconds"] = total;
  return out.dump();
}

}  // namespace semiortho
