#include "semiortho/semiortho.h"

#include <cstring>
#include <new>
#include <string>

#include "semiortho/approx_orth.hpp"
#include "semiortho/selftest.hpp"
#include "semiortho/symmetry.hpp"

using namespace semiortho;

struct so_space {
  PsdPtr psd;
};

struct so_operator {
  ABoundedOperator op;
};

struct so_verdict {
  Verdict v;
  Index dim;
};

struct so_attainment {
  NormAttainment att;
};

struct so_symmetry {
  SymmetryReport report;
  Index dim;
};

namespace {

thread_local std::string g_last_error;

so_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SO_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return SO_DIMENSION_MISMATCH;
    case ErrorCode::NotSquare: return SO_NOT_SQUARE;
    case ErrorCode::NotHermitian: return SO_NOT_HERMITIAN;
    case ErrorCode::NotPositive: return SO_NOT_POSITIVE;
    case ErrorCode::NotABounded: return SO_NOT_A_BOUNDED;
    case ErrorCode::InvalidEpsilon: return SO_INVALID_EPSILON;
    case ErrorCode::NotAUnit: return SO_NOT_A_UNIT;
    case ErrorCode::ZeroNorm: return SO_ZERO_NORM;
    case ErrorCode::RealField: return SO_REAL_FIELD;
    case ErrorCode::ComplexField: return SO_COMPLEX_FIELD;
    case ErrorCode::RankTooSmall: return SO_RANK_TOO_SMALL;
    case ErrorCode::IsIsometry: return SO_IS_ISOMETRY;
    case ErrorCode::SubsetHypothesisFails: return SO_SUBSET_HYPOTHESIS_FAILS;
    case ErrorCode::Numerical: return SO_NUMERICAL;
  }
  return SO_INTERNAL;
}

template <class F>
so_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SO_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SO_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SO_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Matrix read_matrix(Index rows, Index cols, const double* re, const double* im) {
  require(re != nullptr || rows * cols == 0, "null matrix data");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const std::size_t k = static_cast<std::size_t>(i * cols + j);
      m(i, j) = Complex(re[k], im ? im[k] : 0.0);
    }
  return m;
}

Vector read_vector(Index n, const double* re, const double* im) {
  require(re != nullptr || n == 0, "null vector data");
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex(re[i], im ? im[i] : 0.0);
  return v;
}

void write_matrix(const Matrix& m, double* re, double* im) {
  require(re != nullptr || m.size() == 0, "null output buffer");
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const std::size_t k = static_cast<std::size_t>(i * m.cols() + j);
      re[k] = m(i, j).real();
      if (im) im[k] = m(i, j).imag();
    }
}

void write_vector(const Vector& v, double* re, double* im) {
  for (Index i = 0; i < v.size(); ++i) {
    if (re) re[i] = v[i].real();
    if (im) im[i] = v[i].imag();
  }
}

Tolerances from_c(const so_tolerances* tol) {
  Tolerances t;
  if (tol) {
    t.hermitian_tol = tol->hermitian_tol;
    t.rank_tol = tol->rank_tol;
    t.orth_tol = tol->orth_tol;
    t.verdict_margin_tol = tol->verdict_margin_tol;
    t.cluster_tol = tol->cluster_tol;
  }
  return t;
}

so_verdict* wrap(Verdict v, Index dim) { return new so_verdict{std::move(v), dim}; }

}  // namespace

extern "C" {

const char* so_version(void) { return "0.1.0"; }

const char* so_status_name(so_status status) {
  switch (status) {
    case SO_OK: return "ok";
    case SO_INVALID_ARGUMENT: return "invalid_argument";
    case SO_DIMENSION_MISMATCH: return "dimension_mismatch";
    case SO_NOT_SQUARE: return "not_square";
    case SO_NOT_HERMITIAN: return "not_hermitian";
    case SO_NOT_POSITIVE: return "not_positive";
    case SO_NOT_A_BOUNDED: return "not_a_bounded";
    case SO_INVALID_EPSILON: return "invalid_epsilon";
    case SO_NOT_A_UNIT: return "not_a_unit";
    case SO_ZERO_NORM: return "zero_norm";
    case SO_REAL_FIELD: return "real_field";
    case SO_COMPLEX_FIELD: return "complex_field";
    case SO_RANK_TOO_SMALL: return "rank_too_small";
    case SO_IS_ISOMETRY: return "is_isometry";
    case SO_SUBSET_HYPOTHESIS_FAILS: return "subset_hypothesis_fails";
    case SO_NUMERICAL: return "numerical";
    case SO_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* so_last_error_message(void) { return g_last_error.c_str(); }

void so_default_tolerances(so_tolerances* out) {
  if (!out) return;
  const Tolerances t;
  *out = {t.hermitian_tol, t.rank_tol, t.orth_tol, t.verdict_margin_tol, t.cluster_tol};
}

so_status so_space_create(size_t n, const double* re, const double* im, so_field field,
                          const so_tolerances* tol, so_space** out) {
  return guard([&] {
    require(out != nullptr, "null output handle");
    const Index dim = static_cast<Index>(n);
    const Field f = field == SO_FIELD_COMPLEX ? Field::Complex : Field::Real;
    PsdPtr psd = make_psd(read_matrix(dim, dim, re, im), f, from_c(tol));
    *out = new so_space{std::move(psd)};
  });
}

void so_space_free(so_space* space) { delete space; }

size_t so_space_dim(const so_space* space) {
  return space ? static_cast<size_t>(space->psd->dim()) : 0;
}

size_t so_space_rank(const so_space* space) {
  return space ? static_cast<size_t>(space->psd->rank()) : 0;
}

so_field so_space_field(const so_space* space) {
  return space && space->psd->field() == Field::Complex ? SO_FIELD_COMPLEX : SO_FIELD_REAL;
}

so_status so_space_eigenvalues(const so_space* space, double* out) {
  return guard([&] {
    require(space && out, "null argument");
    const RealVector& ev = space->psd->eigenvalues();
    for (Index i = 0; i < ev.size(); ++i) out[i] = ev[i];
  });
}

so_status so_space_null_basis(const so_space* space, double* re, double* im) {
  return guard([&] {
    require(space != nullptr, "null space");
    write_matrix(null_basis(*space->psd), re, im);
  });
}

so_status so_vec_inner(const so_space* space, const double* x_re, const double* x_im,
                       const double* y_re, const double* y_im, double* out_re, double* out_im) {
  return guard([&] {
    require(space && out_re, "null argument");
    const Index n = space->psd->dim();
    const Complex v = inner_a(*space->psd, read_vector(n, x_re, x_im), read_vector(n, y_re, y_im));
    *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

so_status so_vec_norm(const so_space* space, const double* x_re, const double* x_im,
                      double* out) {
  return guard([&] {
    require(space && out, "null argument");
    *out = norm_a(*space->psd, read_vector(space->psd->dim(), x_re, x_im));
  });
}

so_status so_vec_check(const so_space* space, const double* x_re, const double* x_im,
                       const double* y_re, const double* y_im, double eps, so_vec_route route,
                       so_verdict** out) {
  return guard([&] {
    require(space && out, "null argument");
    const PsdOperator& a = *space->psd;
    const Vector x = read_vector(a.dim(), x_re, x_im);
    const Vector y = read_vector(a.dim(), y_re, y_im);
    Verdict v;
    switch (route) {
      case SO_VEC_EXACT: v = is_a_orthogonal(a, x, y); break;
      case SO_VEC_INNER_PRODUCT: v = is_eps_orthogonal(a, x, y, Epsilon(eps)); break;
      case SO_VEC_DIRECT: v = is_chmielinski_orthogonal_vec(a, x, y, Epsilon(eps)); break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown vector route");
    }
    *out = wrap(std::move(v), a.dim());
  });
}

so_status so_vec_decompose(const so_space* space, const double* x_re, const double* x_im,
                           const double* y_re, const double* y_im, double* z_re, double* z_im) {
  return guard([&] {
    require(space && z_re, "null argument");
    const PsdOperator& a = *space->psd;
    write_vector(orthogonal_decomposition(a, read_vector(a.dim(), x_re, x_im),
                                          read_vector(a.dim(), y_re, y_im)),
                 z_re, z_im);
  });
}

so_status so_operator_create(const so_space* space, const double* re, const double* im,
                             so_operator** out) {
  return guard([&] {
    require(space && out, "null argument");
    const Index n = space->psd->dim();
    *out = new so_operator{ABoundedOperator::make(space->psd, read_matrix(n, n, re, im))};
  });
}

void so_operator_free(so_operator* op) { delete op; }

double so_operator_norm(const so_operator* op) { return op ? op->op.norm() : 0.0; }

int so_operator_is_zero(const so_operator* op) { return op && op->op.is_zero() ? 1 : 0; }

so_status so_operator_tilde(const so_operator* op, double* re, double* im) {
  return guard([&] {
    require(op != nullptr, "null operator");
    write_matrix(op->op.tilde(), re, im);
  });
}

so_status so_operator_isometry(const so_operator* op, int* isometry, double* deviation) {
  return guard([&] {
    require(op && isometry, "null argument");
    const IsometryCheck c = is_a_isometry(op->op);
    *isometry = c.isometry ? 1 : 0;
    if (deviation) *deviation = c.deviation;
  });
}

so_status so_attainment_create(const so_operator* op, so_attainment** out) {
  return guard([&] {
    require(op && out, "null argument");
    *out = new so_attainment{norm_attainment_set(op->op)};
  });
}

void so_attainment_free(so_attainment* att) { delete att; }

double so_attainment_norm(const so_attainment* att) { return att ? att->att.norm : 0.0; }

size_t so_attainment_multiplicity(const so_attainment* att) {
  return att ? static_cast<size_t>(att->att.multiplicity) : 0;
}

so_status so_attainment_basis(const so_attainment* att, double* re, double* im) {
  return guard([&] {
    require(att != nullptr, "null attainment");
    write_matrix(att->att.attain_basis, re, im);
  });
}

so_status so_op_check(const so_operator* t, const so_operator* s, double eps,
                      so_op_route route, so_verdict** out) {
  return guard([&] {
    require(t && s && out, "null argument");
    const Epsilon e(eps);
    Verdict v;
    switch (route) {
      case SO_OP_DIRECT: v = op_orth_direct(t->op, s->op, e); break;
      case SO_OP_ATTAINMENT: v = op_orth_attainment_real(t->op, s->op, e); break;
      case SO_OP_THETA_SWEEP: v = op_orth_theta_sweep_complex(t->op, s->op, e); break;
      case SO_OP_POINTWISE: v = op_orth_pointwise(t->op, s->op, e); break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown operator route");
    }
    *out = wrap(std::move(v), t->op.dim());
  });
}

so_status so_op_defect(const so_operator* t, const so_operator* s, double eps, double lambda_re,
                       double lambda_im, double* out) {
  return guard([&] {
    require(t && s && out, "null argument");
    *out = chmielinski_defect(t->op, s->op, Epsilon(eps), Complex(lambda_re, lambda_im));
  });
}

so_status so_attainment_subset(const so_operator* t, const so_operator* s, int* contained,
                               double* residual) {
  return guard([&] {
    require(t && s && contained, "null argument");
    const SubsetCheck c = attainment_subset(t->op, s->op);
    *contained = c.contained ? 1 : 0;
    if (residual) *residual = c.residual;
  });
}

void so_verdict_free(so_verdict* v) { delete v; }
int so_verdict_holds(const so_verdict* v) { return v && v->v.holds ? 1 : 0; }
int so_verdict_boundary(const so_verdict* v) { return v && v->v.boundary ? 1 : 0; }
double so_verdict_margin(const so_verdict* v) { return v ? v->v.margin : 0.0; }
double so_verdict_defect(const so_verdict* v) { return v ? v->v.defect : 0.0; }
const char* so_verdict_method(const so_verdict* v) { return v ? to_string(v->v.method) : ""; }
size_t so_verdict_dim(const so_verdict* v) { return v ? static_cast<size_t>(v->dim) : 0; }

int so_verdict_lambda(const so_verdict* v, double* re, double* im) {
  if (!v || !v->v.lambda) return 0;
  if (re) *re = v->v.lambda->real();
  if (im) *im = v->v.lambda->imag();
  return 1;
}

int so_verdict_theta(const so_verdict* v, double* theta) {
  if (!v || !v->v.theta) return 0;
  if (theta) *theta = *v->v.theta;
  return 1;
}

int so_verdict_x(const so_verdict* v, double* re, double* im) {
  if (!v || !v->v.x) return 0;
  write_vector(*v->v.x, re, im);
  return 1;
}

int so_verdict_y(const so_verdict* v, double* re, double* im) {
  if (!v || !v->v.y) return 0;
  write_vector(*v->v.y, re, im);
  return 1;
}

so_status so_classify(const so_operator* t, double eps, so_side side, so_symmetry** out) {
  return guard([&] {
    require(t && out, "null argument");
    const Epsilon e(eps);
    SymmetryReport rep = side == SO_SIDE_LEFT ? classify_left(t->op, e) : classify_right(t->op, e);
    *out = new so_symmetry{std::move(rep), t->op.dim()};
  });
}

void so_symmetry_free(so_symmetry* sym) { delete sym; }

const char* so_symmetry_kind(const so_symmetry* sym) {
  return sym ? to_string(sym->report.kind) : "";
}

double so_symmetry_evidence(const so_symmetry* sym) { return sym ? sym->report.evidence : 0.0; }

int so_symmetry_has_witness(const so_symmetry* sym) {
  return sym && sym->report.witness ? 1 : 0;
}

int so_symmetry_verified(const so_symmetry* sym) { return sym && sym->report.verified ? 1 : 0; }

const char* so_symmetry_construction(const so_symmetry* sym) {
  return sym && sym->report.witness ? to_string(sym->report.witness->tag) : "";
}

size_t so_symmetry_multiplicity(const so_symmetry* sym) {
  return sym && sym->report.witness ? static_cast<size_t>(sym->report.witness->multiplicity) : 0;
}

int so_symmetry_sign_flipped(const so_symmetry* sym) {
  return sym && sym->report.witness && sym->report.witness->sign_flipped ? 1 : 0;
}

so_status so_symmetry_witness(const so_symmetry* sym, double* re, double* im) {
  return guard([&] {
    require(sym && sym->report.witness, "no witness");
    write_matrix(sym->report.witness->op, re, im);
  });
}

int so_symmetry_left_params(const so_symmetry* sym, so_left_params* out) {
  if (!sym || !sym->report.witness || !sym->report.witness->params || !out) return 0;
  const LeftParameters& p = *sym->report.witness->params;
  *out = {p.eps, p.eps1, p.t, p.a, p.b, p.alpha_lo, p.alpha_hi, p.alpha, sym->report.witness->beta};
  return 1;
}

so_status so_symmetry_check(const so_symmetry* sym, int which, so_verdict** out) {
  return guard([&] {
    require(sym && out, "null argument");
    const auto& v = which == 0 ? sym->report.must_hold : sym->report.must_fail;
    require(v.has_value(), "no witness check recorded");
    *out = wrap(*v, sym->dim);
  });
}

so_status so_selftest_run(uint64_t seed, int trials, int flags, char** json, int* all_passed) {
  return guard([&] {
    require(json != nullptr, "null output");
    SelfTestOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.inject_fault = (flags & SO_SELFTEST_INJECT_FAULT) != 0;
    const auto results = run_selftest(opt);
    const std::string text = selftest_json(opt, results, (flags & SO_SELFTEST_TIMING) != 0);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed();
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *json = buf;
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

void so_string_free(char* s) { delete[] s; }

}  // extern "C"
