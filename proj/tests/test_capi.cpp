// Exercises the shared library through its C header only.
#include <semiortho/semiortho.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Ref {
  so_space* a = nullptr;
  so_operator* t = nullptr;
  so_operator* s = nullptr;

  Ref() {
    const double a_re[] = {1, 0, 0, 2};
    const double t_re[] = {2, 0, 0, 1};
    const double s_re[] = {0, 0, 0, 1};
    REQUIRE(so_space_create(2, a_re, nullptr, SO_FIELD_REAL, nullptr, &a) == SO_OK);
    REQUIRE(so_operator_create(a, t_re, nullptr, &t) == SO_OK);
    REQUIRE(so_operator_create(a, s_re, nullptr, &s) == SO_OK);
  }
  ~Ref() {
    so_operator_free(s);
    so_operator_free(t);
    so_space_free(a);
  }
};

const double kThird = 1.0 / 3.0;

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(so_version()).size() > 0);
  CHECK(std::string(so_status_name(SO_OK)) == "ok");
  CHECK(std::string(so_status_name(SO_NOT_POSITIVE)) == "not_positive");
  so_tolerances tol;
  so_default_tolerances(&tol);
  CHECK(tol.rank_tol == 1e-10);
  CHECK(tol.verdict_margin_tol == 1e-9);
}

TEST_CASE("space and operator queries") {
  Ref r;
  CHECK(so_space_dim(r.a) == 2);
  CHECK(so_space_rank(r.a) == 2);
  CHECK(so_space_field(r.a) == SO_FIELD_REAL);
  double ev[2];
  REQUIRE(so_space_eigenvalues(r.a, ev) == SO_OK);
  CHECK(ev[0] == doctest::Approx(2.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(std::abs(so_operator_norm(r.t) - 2.0) <= 1e-12);
  CHECK(std::abs(so_operator_norm(r.s) - 1.0) <= 1e-12);
  CHECK_FALSE(so_operator_is_zero(r.t));
  int iso = 1;
  double dev = 0;
  REQUIRE(so_operator_isometry(r.t, &iso, &dev) == SO_OK);
  CHECK(iso == 0);

  so_attainment* att = nullptr;
  REQUIRE(so_attainment_create(r.s, &att) == SO_OK);
  CHECK(so_attainment_multiplicity(att) == 1);
  double b_re[2], b_im[2];
  REQUIRE(so_attainment_basis(att, b_re, b_im) == SO_OK);
  CHECK(std::abs(b_re[0]) <= 1e-9);
  CHECK(std::abs(std::abs(b_re[1]) - 1.0 / std::sqrt(2.0)) <= 1e-9);
  so_attainment_free(att);
}

TEST_CASE("operator checks on the reference pair") {
  Ref r;
  for (so_op_route route : {SO_OP_DIRECT, SO_OP_ATTAINMENT}) {
    so_verdict* v = nullptr;
    REQUIRE(so_op_check(r.t, r.s, kThird, route, &v) == SO_OK);
    CHECK(so_verdict_holds(v));
    so_verdict_free(v);
    REQUIRE(so_op_check(r.s, r.t, kThird, route, &v) == SO_OK);
    CHECK_FALSE(so_verdict_holds(v));
    so_verdict_free(v);
  }
  // witness round trip: the reported lambda reproduces the reported defect
  so_verdict* v = nullptr;
  REQUIRE(so_op_check(r.s, r.t, kThird, SO_OP_DIRECT, &v) == SO_OK);
  double lre = 0, lim = 0, g = 0;
  REQUIRE(so_verdict_lambda(v, &lre, &lim));
  REQUIRE(so_op_defect(r.s, r.t, kThird, lre, lim, &g) == SO_OK);
  CHECK(std::abs(g - so_verdict_defect(v)) <= 1e-12);
  CHECK(g < 0);
  CHECK(so_verdict_theta(v, nullptr) == 0);
  so_verdict_free(v);

  int contained = 1;
  double residual = 0;
  REQUIRE(so_attainment_subset(r.t, r.s, &contained, &residual) == SO_OK);
  CHECK(contained == 0);
  CHECK(so_op_check(r.t, r.s, kThird, SO_OP_POINTWISE, &v) == SO_SUBSET_HYPOTHESIS_FAILS);
  CHECK(so_op_check(r.t, r.s, kThird, SO_OP_THETA_SWEEP, &v) == SO_REAL_FIELD);
  CHECK(so_op_check(r.t, r.s, 1.5, SO_OP_DIRECT, &v) == SO_INVALID_EPSILON);
  CHECK(std::string(so_last_error_message()).size() > 0);
}

TEST_CASE("vector checks, real and complex") {
  const double a_re[] = {1, 0, 0, 2};
  so_space* a = nullptr;
  REQUIRE(so_space_create(2, a_re, nullptr, SO_FIELD_REAL, nullptr, &a) == SO_OK);
  const double x[] = {1, 1}, y[] = {1, -1};
  double ip_re = 0, ip_im = 0, n = 0;
  REQUIRE(so_vec_inner(a, x, nullptr, y, nullptr, &ip_re, &ip_im) == SO_OK);
  CHECK(ip_re == doctest::Approx(-1.0));
  REQUIRE(so_vec_norm(a, x, nullptr, &n) == SO_OK);
  CHECK(n == doctest::Approx(std::sqrt(3.0)));
  for (so_vec_route route : {SO_VEC_INNER_PRODUCT, SO_VEC_DIRECT}) {
    so_verdict* v = nullptr;
    REQUIRE(so_vec_check(a, x, nullptr, y, nullptr, 0.5, route, &v) == SO_OK);
    CHECK(so_verdict_holds(v));
    so_verdict_free(v);
    REQUIRE(so_vec_check(a, x, nullptr, y, nullptr, 0.2, route, &v) == SO_OK);
    CHECK_FALSE(so_verdict_holds(v));
    so_verdict_free(v);
  }
  double z_re[2], z_im[2];
  REQUIRE(so_vec_decompose(a, x, nullptr, y, nullptr, z_re, z_im) == SO_OK);
  double check_re = 0, check_im = 0;
  REQUIRE(so_vec_inner(a, x, nullptr, z_re, z_im, &check_re, &check_im) == SO_OK);
  CHECK(std::abs(check_re) + std::abs(check_im) <= 1e-12);
  so_space_free(a);

  // complex Hermitian A
  const double c_re[] = {2, 0.5, 0.5, 1}, c_im[] = {0, 0.5, -0.5, 0};
  REQUIRE(so_space_create(2, c_re, c_im, SO_FIELD_COMPLEX, nullptr, &a) == SO_OK);
  const double xr[] = {1, 0}, xi[] = {0, 1}, yr[] = {0.5, 1}, yi[] = {-1, 0.25};
  so_verdict* v1 = nullptr;
  so_verdict* v2 = nullptr;
  REQUIRE(so_vec_check(a, xr, xi, yr, yi, 0.3, SO_VEC_INNER_PRODUCT, &v1) == SO_OK);
  REQUIRE(so_vec_check(a, xr, xi, yr, yi, 0.3, SO_VEC_DIRECT, &v2) == SO_OK);
  CHECK(so_verdict_holds(v1) == so_verdict_holds(v2));
  CHECK(so_verdict_margin(v1) == doctest::Approx(so_verdict_margin(v2)).epsilon(1e-8));
  so_verdict_free(v1);
  so_verdict_free(v2);
  so_space_free(a);
}

TEST_CASE("errors map to status codes") {
  so_space* a = nullptr;
  const double neg[] = {1, 0, 0, -1};
  CHECK(so_space_create(2, neg, nullptr, SO_FIELD_REAL, nullptr, &a) == SO_NOT_POSITIVE);
  CHECK(a == nullptr);
  const double asym[] = {1, 2, 0, 1};
  CHECK(so_space_create(2, asym, nullptr, SO_FIELD_REAL, nullptr, &a) == SO_NOT_HERMITIAN);
  CHECK(so_space_create(2, nullptr, nullptr, SO_FIELD_REAL, nullptr, &a) == SO_INVALID_ARGUMENT);
  const double sing[] = {1, 0, 0, 0};
  REQUIRE(so_space_create(2, sing, nullptr, SO_FIELD_REAL, nullptr, &a) == SO_OK);
  CHECK(so_space_rank(a) == 1);
  double nb_re[2], nb_im[2];
  REQUIRE(so_space_null_basis(a, nb_re, nb_im) == SO_OK);
  CHECK(std::abs(std::abs(nb_re[1]) - 1.0) <= 1e-12);
  const double leak[] = {0, 1, 0, 0};
  so_operator* t = nullptr;
  CHECK(so_operator_create(a, leak, nullptr, &t) == SO_NOT_A_BOUNDED);
  CHECK(std::string(so_last_error_message()).find("N(A)") != std::string::npos);
  so_space_free(a);
  so_space_free(nullptr);
  so_operator_free(nullptr);
  so_verdict_free(nullptr);
}

TEST_CASE("classification through the C interface") {
  Ref r;
  for (so_side side : {SO_SIDE_RIGHT, SO_SIDE_LEFT}) {
    so_symmetry* sym = nullptr;
    REQUIRE(so_classify(r.t, kThird, side, &sym) == SO_OK);
    CHECK(so_symmetry_has_witness(sym));
    CHECK(so_symmetry_verified(sym));
    double w_re[4], w_im[4];
    REQUIRE(so_symmetry_witness(sym, w_re, w_im) == SO_OK);
    // reload the witness and re-run both checks
    so_operator* w = nullptr;
    REQUIRE(so_operator_create(r.a, w_re, nullptr, &w) == SO_OK);
    for (int which = 0; which < 2; ++which) {
      so_verdict* stated = nullptr;
      REQUIRE(so_symmetry_check(sym, which, &stated) == SO_OK);
      const bool t_first = (side == SO_SIDE_LEFT) == (which == 0);
      so_verdict* again = nullptr;
      REQUIRE(so_op_check(t_first ? r.t : w, t_first ? w : r.t, kThird, SO_OP_DIRECT, &again) == SO_OK);
      CHECK(std::abs(so_verdict_margin(again) - so_verdict_margin(stated)) <= 1e-9);
      CHECK(so_verdict_holds(again) == (which == 0));
      so_verdict_free(again);
      so_verdict_free(stated);
    }
    so_left_params p;
    CHECK(so_symmetry_left_params(sym, &p) == (side == SO_SIDE_LEFT ? 1 : 0));
    so_operator_free(w);
    so_symmetry_free(sym);
  }
  const double c_re[] = {1, 0, 0, 1};
  so_space* c = nullptr;
  REQUIRE(so_space_create(2, c_re, nullptr, SO_FIELD_COMPLEX, nullptr, &c) == SO_OK);
  so_operator* ct = nullptr;
  REQUIRE(so_operator_create(c, c_re, nullptr, &ct) == SO_OK);
  so_symmetry* sym = nullptr;
  CHECK(so_classify(ct, 0.2, SO_SIDE_RIGHT, &sym) == SO_COMPLEX_FIELD);
  so_operator_free(ct);
  so_space_free(c);
}

TEST_CASE("self-test entry point and fault injection") {
  char* text = nullptr;
  int passed = 0;
  REQUIRE(so_selftest_run(5, 3, 0, &text, &passed) == SO_OK);
  CHECK(passed == 1);
  auto report = nlohmann::json::parse(text);
  CHECK(report["schema"] == 1);
  CHECK(report["passed"] == true);
  CHECK_FALSE(report.contains("seconds"));
  so_string_free(text);

  REQUIRE(so_selftest_run(5, 20, SO_SELFTEST_INJECT_FAULT, &text, &passed) == SO_OK);
  CHECK(passed == 0);
  report = nlohmann::json::parse(text);
  bool found = false;
  for (const auto& s : report["suites"])
    if (!s["passed"].get<bool>()) found = found || s.contains("counterexample");
  CHECK(found);
  so_string_free(text);
}
