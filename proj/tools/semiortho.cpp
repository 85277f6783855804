// semiortho command-line front end. Reads JSON instance files, runs the
// library through its C interface and prints a JSON report.
//
// Exit codes: 0 ok, 1 property failure, 2 parse/usage error, 3 mathematical
// precondition violated, 4 route disagreement.

#include <semiortho/semiortho.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kPropertyFailure = 1, kParse = 2, kMath = 3, kDisagree = 4 };

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void parse_error(const std::string& what) { throw CliError{kParse, what}; }

int exit_for(so_status s) {
  switch (s) {
    case SO_INVALID_ARGUMENT:
    case SO_DIMENSION_MISMATCH:
    case SO_NOT_SQUARE:
      return kParse;
    default:
      return kMath;
  }
}

void check(so_status s) {
  if (s != SO_OK)
    throw CliError{exit_for(s), std::string(so_status_name(s)) + ": " + so_last_error_message()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Space = std::unique_ptr<so_space, Deleter<so_space, so_space_free>>;
using Operator = std::unique_ptr<so_operator, Deleter<so_operator, so_operator_free>>;
using VerdictPtr = std::unique_ptr<so_verdict, Deleter<so_verdict, so_verdict_free>>;
using Attainment = std::unique_ptr<so_attainment, Deleter<so_attainment, so_attainment_free>>;
using Symmetry = std::unique_ptr<so_symmetry, Deleter<so_symmetry, so_symmetry_free>>;

// ---------------------------------------------------------------------------
// Instance files

struct Mat {
  size_t n = 0;
  std::vector<double> re, im;  // row-major
};

struct Vec {
  std::vector<double> re, im;
};

struct Instance {
  so_field field = SO_FIELD_REAL;
  Mat a;
  std::optional<Mat> t, s;
  std::optional<Vec> x, y;
  std::optional<double> eps;
  so_tolerances tol{};
  json canonical;  // parsed file, used for the digest
};

void read_scalar(const json& v, so_field field, double& re, double& im, const std::string& where) {
  if (v.is_number()) {
    re = v.get<double>();
    im = 0.0;
  } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    re = v[0].get<double>();
    im = v[1].get<double>();
    if (field == SO_FIELD_REAL && im != 0.0)
      parse_error(where + ": complex entry in a real instance");
  } else {
    parse_error(where + ": expected a number or [re, im]");
  }
  if (!std::isfinite(re) || !std::isfinite(im)) parse_error(where + ": non-finite entry");
}

Mat read_matrix(const json& j, so_field field, const std::string& name) {
  if (!j.is_array() || j.empty()) parse_error(name + ": expected a non-empty array of rows");
  Mat m;
  m.n = j.size();
  m.re.resize(m.n * m.n);
  m.im.resize(m.n * m.n);
  for (size_t i = 0; i < m.n; ++i) {
    if (!j[i].is_array() || j[i].size() != m.n) parse_error(name + ": matrix is not square");
    for (size_t k = 0; k < m.n; ++k)
      read_scalar(j[i][k], field, m.re[i * m.n + k], m.im[i * m.n + k],
                  name + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

Vec read_vector(const json& j, so_field field, size_t n, const std::string& name) {
  if (!j.is_array() || j.size() != n)
    parse_error(name + ": expected an array of length " + std::to_string(n));
  Vec v;
  v.re.resize(n);
  v.im.resize(n);
  for (size_t i = 0; i < n; ++i)
    read_scalar(j[i], field, v.re[i], v.im[i], name + "[" + std::to_string(i) + "]");
  return v;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  Instance inst;
  try {
    inst.canonical = json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
  const json& j = inst.canonical;
  if (!j.is_object()) parse_error(path + ": top level must be an object");
  if (j.contains("schema") && j["schema"] != 1) parse_error("unsupported instance schema");

  const std::string field = j.value("field", "real");
  if (field == "real")
    inst.field = SO_FIELD_REAL;
  else if (field == "complex")
    inst.field = SO_FIELD_COMPLEX;
  else
    parse_error("field must be \"real\" or \"complex\"");

  if (!j.contains("A")) parse_error("missing A");
  inst.a = read_matrix(j["A"], inst.field, "A");
  const size_t n = inst.a.n;
  for (const char* name : {"T", "S"}) {
    if (!j.contains(name)) continue;
    Mat m = read_matrix(j[name], inst.field, name);
    if (m.n != n) parse_error(std::string(name) + " does not match the dimension of A");
    (std::string(name) == "T" ? inst.t : inst.s) = std::move(m);
  }
  if (j.contains("x")) inst.x = read_vector(j["x"], inst.field, n, "x");
  if (j.contains("y")) inst.y = read_vector(j["y"], inst.field, n, "y");
  if (j.contains("epsilon")) {
    if (!j["epsilon"].is_number()) parse_error("epsilon must be a number");
    inst.eps = j["epsilon"].get<double>();
  }

  so_default_tolerances(&inst.tol);
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) parse_error("tolerances must be an object");
    for (const auto& [key, value] : t.items()) {
      if (!value.is_number() || !(value.get<double>() > 0.0))
        parse_error("tolerance " + key + " must be a positive number");
      const double v = value.get<double>();
      if (key == "hermitian_tol") inst.tol.hermitian_tol = v;
      else if (key == "rank_tol") inst.tol.rank_tol = v;
      else if (key == "orth_tol") inst.tol.orth_tol = v;
      else if (key == "verdict_margin_tol") inst.tol.verdict_margin_tol = v;
      else if (key == "cluster_tol") inst.tol.cluster_tol = v;
      else parse_error("unknown tolerance " + key);
    }
  }
  return inst;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Output helpers. Matrices and vectors use the instance encoding, so any
// witness can be pasted back into an instance file.

json scalar_json(double re, double im, so_field field) {
  if (field == SO_FIELD_REAL) return re;
  return json::array({re, im});
}

json vector_json(const std::vector<double>& re, const std::vector<double>& im, so_field field) {
  json out = json::array();
  for (size_t i = 0; i < re.size(); ++i) out.push_back(scalar_json(re[i], im[i], field));
  return out;
}

// rows x cols row-major block
json matrix_json(const std::vector<double>& re, const std::vector<double>& im, size_t rows,
                 size_t cols, so_field field) {
  json out = json::array();
  for (size_t i = 0; i < rows; ++i) {
    json row = json::array();
    for (size_t k = 0; k < cols; ++k)
      row.push_back(scalar_json(re[i * cols + k], im[i * cols + k], field));
    out.push_back(std::move(row));
  }
  return out;
}

json verdict_json(const so_verdict* v, so_field field) {
  json out = {{"holds", so_verdict_holds(v) != 0},
              {"boundary", so_verdict_boundary(v) != 0},
              {"margin", so_verdict_margin(v)},
              {"defect", so_verdict_defect(v)},
              {"method", so_verdict_method(v)}};
  json witness = json::object();
  double re = 0.0, im = 0.0;
  if (so_verdict_lambda(v, &re, &im)) witness["lambda"] = scalar_json(re, im, field);
  double theta = 0.0;
  if (so_verdict_theta(v, &theta)) witness["theta"] = theta;
  const size_t n = so_verdict_dim(v);
  std::vector<double> xr(n), xi(n);
  if (so_verdict_x(v, xr.data(), xi.data())) witness["x"] = vector_json(xr, xi, field);
  if (so_verdict_y(v, xr.data(), xi.data())) witness["y"] = vector_json(xr, xi, field);
  out["witness"] = std::move(witness);
  return out;
}

const double* im_or_null(const std::vector<double>& im, so_field field) {
  return field == SO_FIELD_COMPLEX ? im.data() : nullptr;
}

Space make_space(const Instance& inst) {
  so_space* s = nullptr;
  check(so_space_create(inst.a.n, inst.a.re.data(), im_or_null(inst.a.im, inst.field), inst.field,
                        &inst.tol, &s));
  return Space(s);
}

Operator make_operator(const so_space* space, const Mat& m, so_field field) {
  so_operator* op = nullptr;
  check(so_operator_create(space, m.re.data(), im_or_null(m.im, field), &op));
  return Operator(op);
}

json space_json(const so_space* space, so_field field) {
  const size_t n = so_space_dim(space);
  const size_t r = so_space_rank(space);
  std::vector<double> ev(n);
  check(so_space_eigenvalues(space, ev.data()));
  std::vector<double> nre(n * (n - r)), nim(n * (n - r));
  check(so_space_null_basis(space, nre.data(), nim.data()));
  return {{"dim", n},
          {"rank", r},
          {"eigenvalues", ev},
          {"null_basis_size", n - r},
          {"null_basis", matrix_json(nre, nim, n, n - r, field)}};
}

json operator_json(const so_operator* op, size_t n, so_field field) {
  int iso = 0;
  double deviation = 0.0;
  check(so_operator_isometry(op, &iso, &deviation));
  so_attainment* raw = nullptr;
  check(so_attainment_create(op, &raw));
  Attainment att(raw);
  const size_t m = so_attainment_multiplicity(att.get());
  std::vector<double> bre(n * m), bim(n * m);
  check(so_attainment_basis(att.get(), bre.data(), bim.data()));
  return {{"norm", so_operator_norm(op)},
          {"is_zero", so_operator_is_zero(op) != 0},
          {"isometry", iso != 0},
          {"isometry_deviation", deviation},
          {"attainment_multiplicity", m},
          {"attainment_basis", matrix_json(bre, bim, n, m, field)}};
}

double epsilon_of(const Instance& inst, const std::optional<double>& flag) {
  const double e = flag ? *flag : inst.eps.value_or(0.0);
  if (!(e >= 0.0 && e < 1.0)) parse_error("epsilon must lie in [0, 1)");
  return e;
}

// ---------------------------------------------------------------------------
// Commands

struct Options {
  std::string instance;
  std::string mode;
  std::string route = "auto";
  std::string side = "right";
  std::optional<double> eps;
  std::uint64_t seed = 42;
  int trials = 100;
  std::string json_out;
};

struct Result {
  json report = json::object();
  int code = kOk;
  std::vector<std::string> summary;
};

void cmd_norm(const Instance& inst, Result& res) {
  if (!inst.t) parse_error("norm needs T");
  Space space = make_space(inst);
  json derived = space_json(space.get(), inst.field);
  json ops = json::object();
  Operator t = make_operator(space.get(), *inst.t, inst.field);
  ops["T"] = operator_json(t.get(), inst.a.n, inst.field);
  if (inst.s) {
    Operator s = make_operator(space.get(), *inst.s, inst.field);
    ops["S"] = operator_json(s.get(), inst.a.n, inst.field);
  }
  derived["operators"] = std::move(ops);
  res.summary.push_back("||T||_A = " + json(so_operator_norm(t.get())).dump() +
                        "  rank(A) = " + std::to_string(so_space_rank(space.get())) +
                        "  isometry = " + (derived["operators"]["T"]["isometry"].get<bool>() ? "true" : "false"));
  res.report["derived"] = std::move(derived);
}

bool agree(const json& a, const json& b) {
  if (a["boundary"].get<bool>() || b["boundary"].get<bool>()) return true;
  return a["holds"] == b["holds"];
}

bool all_agree(const json& verdicts) {
  for (size_t i = 0; i < verdicts.size(); ++i)
    for (size_t k = i + 1; k < verdicts.size(); ++k)
      if (!agree(verdicts[i], verdicts[k])) return false;
  return true;
}

void check_vec(const Instance& inst, const Options& opt, double eps, Result& res) {
  if (!inst.x || !inst.y) parse_error("vector mode needs x and y");
  std::vector<std::pair<std::string, so_vec_route>> routes;
  if (opt.route == "auto")
    routes = {{"ip", SO_VEC_INNER_PRODUCT}, {"direct", SO_VEC_DIRECT}};
  else if (opt.route == "ip")
    routes = {{"ip", SO_VEC_INNER_PRODUCT}};
  else if (opt.route == "direct")
    routes = {{"direct", SO_VEC_DIRECT}};
  else if (opt.route == "exact")
    routes = {{"exact", SO_VEC_EXACT}};
  else
    parse_error("route " + opt.route + " does not apply to vectors");

  Space space = make_space(inst);
  const Vec& x = *inst.x;
  const Vec& y = *inst.y;
  const double* xi = im_or_null(x.im, inst.field);
  const double* yi = im_or_null(y.im, inst.field);

  json verdicts = json::array();
  for (const auto& [name, route] : routes) {
    so_verdict* raw = nullptr;
    check(so_vec_check(space.get(), x.re.data(), xi, y.re.data(), yi, eps, route, &raw));
    VerdictPtr v(raw);
    json vj = verdict_json(v.get(), inst.field);
    vj["route"] = name;
    vj["relation"] = "x_perp_y";
    res.summary.push_back("x perp y [" + name + "]: " + (vj["holds"].get<bool>() ? "holds" : "fails") +
                          "  margin " + vj["margin"].dump());
    verdicts.push_back(std::move(vj));
  }

  double ire = 0.0, iim = 0.0, nx = 0.0, ny = 0.0;
  check(so_vec_inner(space.get(), x.re.data(), xi, y.re.data(), yi, &ire, &iim));
  check(so_vec_norm(space.get(), x.re.data(), xi, &nx));
  check(so_vec_norm(space.get(), y.re.data(), yi, &ny));
  json derived = space_json(space.get(), inst.field);
  derived["inner_product"] = scalar_json(ire, iim, inst.field);
  derived["norm_x"] = nx;
  derived["norm_y"] = ny;

  const bool ok = all_agree(verdicts);
  res.report["verdicts"] = std::move(verdicts);
  res.report["agreement"] = {{"x_perp_y", ok}};
  res.report["derived"] = std::move(derived);
  if (!ok) res.code = kDisagree;
}

struct OpRoute {
  const char* name;
  so_op_route route;
};

void check_op(const Instance& inst, const Options& opt, double eps, Result& res) {
  if (!inst.t || !inst.s) parse_error("operator mode needs T and S");
  const bool real = inst.field == SO_FIELD_REAL;
  std::vector<OpRoute> routes;
  const bool automatic = opt.route == "auto";
  if (automatic) {
    routes.push_back({"direct", SO_OP_DIRECT});
    if (real) {
      routes.push_back({"attain", SO_OP_ATTAINMENT});
      routes.push_back({"pointwise", SO_OP_POINTWISE});
    } else {
      routes.push_back({"theta", SO_OP_THETA_SWEEP});
    }
  } else if (opt.route == "direct") {
    routes.push_back({"direct", SO_OP_DIRECT});
  } else if (opt.route == "attain") {
    routes.push_back({"attain", SO_OP_ATTAINMENT});
  } else if (opt.route == "theta") {
    routes.push_back({"theta", SO_OP_THETA_SWEEP});
  } else if (opt.route == "pointwise") {
    routes.push_back({"pointwise", SO_OP_POINTWISE});
  } else {
    parse_error("route " + opt.route + " does not apply to operators");
  }

  Space space = make_space(inst);
  Operator t = make_operator(space.get(), *inst.t, inst.field);
  Operator s = make_operator(space.get(), *inst.s, inst.field);

  struct Relation {
    const char* name;
    const so_operator* first;
    const so_operator* second;
  };
  const Relation relations[] = {{"T_perp_S", t.get(), s.get()}, {"S_perp_T", s.get(), t.get()}};

  json verdicts = json::array();
  json skipped = json::array();
  json agreement = json::object();
  bool ok = true;
  for (const Relation& rel : relations) {
    json group = json::array();
    for (const OpRoute& r : routes) {
      so_verdict* raw = nullptr;
      const so_status st = so_op_check(rel.first, rel.second, eps, r.route, &raw);
      // In auto mode, routes whose hypotheses do not hold are skipped, not fatal.
      if (automatic && (st == SO_ZERO_NORM || st == SO_SUBSET_HYPOTHESIS_FAILS)) {
        skipped.push_back({{"relation", rel.name}, {"route", r.name}, {"reason", so_status_name(st)}});
        continue;
      }
      check(st);
      VerdictPtr v(raw);
      json vj = verdict_json(v.get(), inst.field);
      vj["route"] = r.name;
      vj["relation"] = rel.name;
      res.summary.push_back(std::string(rel.name) + " [" + r.name + "]: " +
                            (vj["holds"].get<bool>() ? "holds" : "fails") + "  margin " +
                            vj["margin"].dump());
      group.push_back(vj);
      verdicts.push_back(std::move(vj));
    }
    const bool rel_ok = all_agree(group);
    agreement[rel.name] = rel_ok;
    ok = ok && rel_ok;
  }

  json derived = space_json(space.get(), inst.field);
  derived["norm_T"] = so_operator_norm(t.get());
  derived["norm_S"] = so_operator_norm(s.get());
  for (const Relation& rel : relations) {
    int contained = 0;
    double residual = 0.0;
    check(so_attainment_subset(rel.first, rel.second, &contained, &residual));
    derived[std::string("attainment_subset_") + rel.name] = {{"contained", contained != 0},
                                                             {"residual", residual}};
  }
  res.report["verdicts"] = std::move(verdicts);
  if (!skipped.empty()) res.report["skipped"] = std::move(skipped);
  res.report["agreement"] = std::move(agreement);
  res.report["derived"] = std::move(derived);
  // Every operator on a finite-dimensional space is compact, so the
  // attainment-based routes apply without further assumptions.
  res.report["hypotheses"] = {{"compact", true}, {"reason", "finite dimension"}};
  if (!ok) res.code = kDisagree;
}

void cmd_check(const Instance& inst, const Options& opt, Result& res) {
  const double eps = epsilon_of(inst, opt.eps);
  res.report["command"]["epsilon"] = eps;
  std::string mode = opt.mode;
  if (mode.empty()) mode = inst.t ? "op" : "vec";
  res.report["command"]["mode"] = mode;
  if (mode == "vec")
    check_vec(inst, opt, eps, res);
  else
    check_op(inst, opt, eps, res);
}

void cmd_classify(const Instance& inst, const Options& opt, Result& res) {
  if (!inst.t) parse_error("classify needs T");
  const double eps = epsilon_of(inst, opt.eps);
  res.report["command"]["epsilon"] = eps;
  Space space = make_space(inst);
  Operator t = make_operator(space.get(), *inst.t, inst.field);
  const so_side side = opt.side == "left" ? SO_SIDE_LEFT : SO_SIDE_RIGHT;
  so_symmetry* raw = nullptr;
  check(so_classify(t.get(), eps, side, &raw));
  Symmetry sym(raw);

  json out = {{"side", opt.side},
              {"kind", so_symmetry_kind(sym.get())},
              {"evidence", so_symmetry_evidence(sym.get())}};
  std::string line = std::string("T is ") + so_symmetry_kind(sym.get());
  if (so_symmetry_has_witness(sym.get())) {
    const size_t n = inst.a.n;
    std::vector<double> re(n * n), im(n * n);
    check(so_symmetry_witness(sym.get(), re.data(), im.data()));
    json w = {{"construction", so_symmetry_construction(sym.get())},
              {"multiplicity", so_symmetry_multiplicity(sym.get())},
              {"sign_flipped", so_symmetry_sign_flipped(sym.get()) != 0},
              {"operator", matrix_json(re, im, n, n, inst.field)}};
    so_left_params p{};
    if (so_symmetry_left_params(sym.get(), &p))
      w["parameters"] = {{"eps", p.eps},         {"eps1", p.eps1}, {"t", p.t},
                         {"a", p.a},             {"b", p.b},       {"alpha_lo", p.alpha_lo},
                         {"alpha_hi", p.alpha_hi}, {"alpha", p.alpha}, {"beta", p.beta}};
    json checks = json::object();
    const char* names[] = {"must_hold", "must_fail"};
    for (int which = 0; which < 2; ++which) {
      so_verdict* v = nullptr;
      check(so_symmetry_check(sym.get(), which, &v));
      VerdictPtr owned(v);
      json vj = verdict_json(v, inst.field);
      vj["relation"] = side == SO_SIDE_RIGHT ? (which == 0 ? "W_perp_T" : "T_perp_W")
                                             : (which == 0 ? "T_perp_W" : "W_perp_T");
      checks[names[which]] = std::move(vj);
    }
    w["checks"] = std::move(checks);
    const bool verified = so_symmetry_verified(sym.get()) != 0;
    w["verified"] = verified;
    out["witness"] = std::move(w);
    line += std::string(", witness ") + (verified ? "verified" : "NOT verified");
    if (!verified) res.code = kPropertyFailure;
  }
  res.summary.push_back(line);
  res.report["classification"] = std::move(out);
  res.report["derived"] = space_json(space.get(), inst.field);
  res.report["derived"]["norm_T"] = so_operator_norm(t.get());
}

void cmd_selftest(const Options& opt, Result& res) {
  if (opt.trials < 1) parse_error("--trials must be positive");
  int flags = SO_SELFTEST_TIMING;
#ifdef SEMIORTHO_INJECT_FAULT
  flags |= SO_SELFTEST_INJECT_FAULT;
#endif
  char* text = nullptr;
  int passed = 0;
  check(so_selftest_run(opt.seed, opt.trials, flags, &text, &passed));
  json st = json::parse(text);
  so_string_free(text);

  // Per-suite timings move under "timing" so the rest of the report is deterministic.
  json times = json::object();
  for (json& suite : st["suites"]) {
    times[suite["name"].get<std::string>()] = suite["seconds"];
    suite.erase("seconds");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %-8s %5d/%-5d %s", suite["name"].get<std::string>().c_str(),
                  suite["module"].get<std::string>().c_str(),
                  suite["trials"].get<int>() - suite["failures"].get<int>(), suite["trials"].get<int>(),
                  suite["passed"].get<bool>() ? "PASS" : "FAIL");
    res.summary.push_back(buf);
    if (suite.contains("counterexample"))
      res.summary.push_back("  counterexample: " + suite["counterexample"].dump());
  }
  res.report["selftest"] = {{"passed", st["passed"]}, {"suites", st["suites"]}};
  res.report["timing_suites"] = std::move(times);
  res.summary.push_back(passed ? "all suites passed" : "property failures detected");
  if (!passed) res.code = kPropertyFailure;
}

void emit(const Result& res, const Options& opt) {
  const std::string text = res.report.dump(2) + "\n";
  if (opt.json_out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.json_out);
  if (!out) {
    std::cerr << "semiortho: cannot write " << opt.json_out << "\n";
    return;
  }
  out << text;
  for (const std::string& line : res.summary) std::cout << line << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate orthogonality checks in semi-Hilbertian spaces"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json-out", opt.json_out, "Write the JSON report to PATH");
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", opt.instance, "Instance JSON file")->required();
    sub->add_option("--epsilon", opt.eps, "Override the instance epsilon");
    add_common(sub);
  };

  CLI::App* norm = app.add_subcommand("norm", "A-norm, rank and attainment basis of T");
  add_instance(norm);
  CLI::App* chk = app.add_subcommand("check", "Decide approximate orthogonality");
  add_instance(chk);
  chk->add_option("--mode", opt.mode, "vec or op (default: op when T is present)")
      ->check(CLI::IsMember({"vec", "op"}));
  chk->add_option("--route", opt.route, "Decision route")
      ->check(CLI::IsMember({"ip", "exact", "direct", "attain", "theta", "pointwise", "auto"}));
  CLI::App* cls = app.add_subcommand("classify", "Right/left approximate symmetry of T");
  add_instance(cls);
  cls->add_option("--side", opt.side, "right or left")->check(CLI::IsMember({"right", "left"}));
  CLI::App* st = app.add_subcommand("selftest", "Run the property suites");
  st->add_option("--seed", opt.seed, "Generator seed");
  st->add_option("--trials", opt.trials, "Trials per suite");
  add_common(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  CLI::App* sub = app.get_subcommands().front();
  Result res;
  res.report["schema"] = 1;
  res.report["command"] = {{"name", sub->get_name()}};
  if (sub == chk) res.report["command"]["route"] = opt.route;
  if (sub == cls) res.report["command"]["side"] = opt.side;
  if (sub == st) {
    res.report["command"]["seed"] = opt.seed;
    res.report["command"]["trials"] = opt.trials;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (sub == st) {
      cmd_selftest(opt, res);
    } else {
      const Instance inst = load_instance(opt.instance);
      res.report["command"]["instance"] = opt.instance;
      std::string canonical = inst.canonical.dump();
      if (opt.eps) canonical += "|epsilon=" + json(*opt.eps).dump();
      res.report["inputs_digest"] = fnv1a(canonical);
      res.report["field"] = inst.field == SO_FIELD_REAL ? "real" : "complex";
      if (sub == norm) cmd_norm(inst, res);
      else if (sub == chk) cmd_check(inst, opt, res);
      else cmd_classify(inst, opt, res);
    }
  } catch (const CliError& e) {
    res.code = e.code;
    res.report["error"] = e.message;
    std::cerr << "semiortho: " << e.message << "\n";
  } catch (const std::exception& e) {
    res.code = kMath;
    res.report["error"] = e.what();
    std::cerr << "semiortho: " << e.what() << "\n";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json timing = {{"seconds", seconds}};
  if (res.report.contains("timing_suites")) {
    timing["suites"] = res.report["timing_suites"];
    res.report.erase("timing_suites");
  }
  res.report["timing"] = std::move(timing);
  res.report["exit_code"] = res.code;
  emit(res, opt);
  return res.code;
}
