#include "majorize/majorize.h"

#include <cmath>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "majorize/error.hpp"
#include "majorize/expr.hpp"
#include "majorize/io.hpp"
#include "majorize/majorization.hpp"
#include "majorize/spider.hpp"
#include "majorize/tree.hpp"

using json = nlohmann::ordered_json;
namespace mz = majorize;

struct mjz_vector {
  mz::RankedVector ranked;
};

struct mjz_expr {
  mz::expr::Expr expr;
};

struct mjz_tree {
  mz::Tree tree;
};

struct mjz_measure {
  mz::SpiderMeasure measure;
};

struct mjz_report {
  std::string json;
  bool holds = false;
  std::vector<std::string> warnings;
};

namespace {

thread_local std::string g_last_error;

mjz_status status_of(mz::ErrorCode code) {
  switch (code) {
    case mz::ErrorCode::invalid_argument: return MJZ_E_INVALID;
    case mz::ErrorCode::length_mismatch: return MJZ_E_LENGTH;
    case mz::ErrorCode::parse: return MJZ_E_PARSE;
    case mz::ErrorCode::domain: return MJZ_E_DOMAIN;
    case mz::ErrorCode::precondition: return MJZ_E_PRECONDITION;
    case mz::ErrorCode::io: return MJZ_E_IO;
  }
  return MJZ_E_INTERNAL;
}

template <class Fn>
mjz_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    return fn();
  } catch (const mz::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return MJZ_E_INTERNAL;
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw mz::Error(mz::ErrorCode::invalid_argument, std::string("null ") + what);
}

mz::Tolerance tolerance(double tol) {
  if (tol < 0.0 || std::isnan(tol)) return {};
  if (tol == 0.0) return mz::Tolerance::exact();
  return {tol, 1e-12};
}

mjz_status emit(json body, bool holds, std::vector<std::string> warnings,
                mjz_report** out) {
  if (out) {
    *out = new mjz_report{body.dump(), holds, std::move(warnings)};
  }
  return holds ? MJZ_OK : MJZ_FAILS;
}

// Scalar functions may only mention t.
mz::ScalarFunction scalar(const mjz_expr* e) {
  require(e, "expression");
  for (const auto& name : e->expr.variables()) {
    if (name != "t") {
      throw mz::Error(mz::ErrorCode::invalid_argument,
                      "expression '" + e->expr.source() + "' may only use the variable t");
    }
  }
  const mz::expr::Expr* ex = &e->expr;
  return [ex](double t) { return (*ex)(t); };
}

json point_json(const mz::SpiderPoint& p) {
  return json{{"leg", p.leg()}, {"r", p.radius()}};
}

json measure_json(const mz::SpiderMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) {
    atoms.push_back({{"leg", a.point.leg()}, {"r", a.point.radius()}, {"w", a.weight}});
  }
  return json{{"K", m.legs()}, {"atoms", atoms}};
}

mz::SpiderPoint to_point(const mjz_spider_point* p) {
  require(p, "spider point");
  return {p->legs, p->leg, p->radius};
}

mjz_spider_point from_point(const mz::SpiderPoint& p) {
  return {p.legs(), p.leg(), p.radius()};
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json optional_index(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

json tree_body(const mz::Tree& t, const mz::CenterResult& c, mz::OrderMode mode) {
  json center = json::array();
  for (std::size_t v : c.center) center.push_back(t.label(v));
  json relations = json::array();
  for (const auto& er : c.edge_relations) {
    relations.push_back({{"u", t.label(er.u)},
                         {"v", t.label(er.v)},
                         {"mode", mz::to_string(mode)},
                         {"relation", mz::to_string(er.relation)}});
  }
  json pair = c.pair ? json::array({t.label(c.pair->first), t.label(c.pair->second)})
                     : json(nullptr);
  return json{{"mode", mz::to_string(mode)},
              {"center", center},
              {"m_symmetric", c.m_symmetric},
              {"pair", pair},
              {"empty_family", c.empty_family},
              {"relations", relations},
              {"facility", nullptr}};
}

mz::OrderMode tree_mode(mjz_order mode) {
  if (mode == MJZ_WEAK) return mz::OrderMode::weak;
  if (mode == MJZ_STRONG) return mz::OrderMode::strong;
  throw mz::Error(mz::ErrorCode::invalid_argument, "tree mode must be weak or strong");
}

mz::SpiderFunction spider_function(const mjz_expr* const* f, std::size_t legs) {
  require(f, "function array");
  std::vector<mz::ScalarFunction> parts;
  for (std::size_t i = 0; i < legs; ++i) parts.push_back(scalar(f[i]));
  return mz::SpiderFunction(std::move(parts));
}

}  // namespace

extern "C" {

const char* mjz_last_error(void) { return g_last_error.c_str(); }

const char* mjz_status_name(mjz_status s) {
  switch (s) {
    case MJZ_OK: return "ok";
    case MJZ_FAILS: return "fails";
    case MJZ_E_INVALID: return "invalid_argument";
    case MJZ_E_LENGTH: return "length_mismatch";
    case MJZ_E_PARSE: return "parse_error";
    case MJZ_E_DOMAIN: return "domain_error";
    case MJZ_E_PRECONDITION: return "precondition_failed";
    case MJZ_E_IO: return "io_error";
    case MJZ_E_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* mjz_version(void) { return "1.0.0"; }

const char* mjz_report_json(const mjz_report* r) { return r ? r->json.c_str() : ""; }
int mjz_report_holds(const mjz_report* r) { return r && r->holds ? 1 : 0; }
size_t mjz_report_warning_count(const mjz_report* r) { return r ? r->warnings.size() : 0; }
const char* mjz_report_warning(const mjz_report* r, size_t i) {
  return r && i < r->warnings.size() ? r->warnings[i].c_str() : nullptr;
}
void mjz_report_free(mjz_report* r) { delete r; }

/* ---- vectors ---- */

mjz_status mjz_vector_create(const double* values, size_t n, mjz_vector** out) {
  return guarded([&] {
    require(out, "output");
    if (n > 0) require(values, "values");
    *out = new mjz_vector{mz::RankedVector(std::span<const double>(values, n))};
    return MJZ_OK;
  });
}

mjz_status mjz_vector_load(const char* path, mjz_vector** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = new mjz_vector{mz::RankedVector(mz::io::read_vector_file(path))};
    return MJZ_OK;
  });
}

mjz_status mjz_vector_parse(const char* text, mjz_vector** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output");
    *out = new mjz_vector{mz::RankedVector(mz::io::parse_vector(text))};
    return MJZ_OK;
  });
}

void mjz_vector_free(mjz_vector* v) { delete v; }
size_t mjz_vector_size(const mjz_vector* v) { return v ? v->ranked.size() : 0; }
const double* mjz_vector_data(const mjz_vector* v) {
  return v ? v->ranked.original().data() : nullptr;
}

mjz_status mjz_vector_ranked(const mjz_vector* v, double* sorted, double* prefix) {
  return guarded([&] {
    require(v, "vector");
    if (sorted) std::copy(v->ranked.sorted().begin(), v->ranked.sorted().end(), sorted);
    if (prefix) std::copy(v->ranked.prefix().begin(), v->ranked.prefix().end(), prefix);
    return MJZ_OK;
  });
}

/* ---- expressions ---- */

mjz_status mjz_expr_parse(const char* src, mjz_expr** out) {
  return guarded([&] {
    require(src, "expression source");
    require(out, "output");
    *out = new mjz_expr{mz::expr::Expr::parse(src)};
    return MJZ_OK;
  });
}

void mjz_expr_free(mjz_expr* e) { delete e; }

mjz_status mjz_expr_eval_t(const mjz_expr* e, double t, double* out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "output");
    *out = e->expr(t);
    return MJZ_OK;
  });
}

mjz_status mjz_expr_eval_x(const mjz_expr* e, const double* x, size_t n, double* out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "output");
    if (n > 0) require(x, "values");
    *out = e->expr.eval_indexed(std::span<const double>(x, n));
    return MJZ_OK;
  });
}

/* ---- majorization ---- */

mjz_status mjz_compare(const mjz_vector* x, const mjz_vector* y, mjz_order mode,
                       double tol, mjz_report** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    mz::Tolerance t = tolerance(tol);
    mz::MajorizationVerdict v;
    mz::Relation wanted;
    switch (mode) {
      case MJZ_WEAK:
        v = mz::check_weak(x->ranked, y->ranked, t);
        wanted = mz::Relation::weak;
        break;
      case MJZ_CLASSICAL:
        v = mz::check_classical(x->ranked, y->ranked, t);
        wanted = mz::Relation::classical;
        break;
      case MJZ_STRONG:
        v = mz::check_strong(x->ranked, y->ranked, t);
        wanted = mz::Relation::strong;
        break;
      default:
        throw mz::Error(mz::ErrorCode::invalid_argument, "unknown order mode");
    }
    bool holds = v.holds(wanted);
    json body{{"mode", mz::to_string(wanted)},
              {"relation", mz::to_string(v.relation)},
              {"holds", holds},
              {"slacks", v.slacks},
              {"lhs", v.lhs},
              {"rhs", v.rhs},
              {"first_failure", optional_index(v.first_failure)},
              {"total_x", v.total_x},
              {"total_y", v.total_y},
              {"alpha", optional_number(v.alpha)},
              {"sorted_x", x->ranked.sorted()},
              {"sorted_y", y->ranked.sorted()}};
    return emit(std::move(body), holds, {}, out);
  });
}

mjz_status mjz_mass_ratio(const mjz_vector* x, const mjz_vector* y, double* alpha) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(alpha, "output");
    *alpha = mz::mass_ratio(x->ranked.original(), y->ranked.original());
    return MJZ_OK;
  });
}

static json inequality_json(const mz::InequalityReport& r) {
  return json{{"status", mz::to_string(r.status)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"slack", r.slack},
              {"alpha", optional_number(r.alpha)},
              {"holds", r.holds}};
}

mjz_status mjz_hlp(const mjz_vector* x, const mjz_vector* y, const mjz_expr* f,
                   double tol, mjz_report** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    auto r = mz::hlp_generalized_check(x->ranked.original(), y->ranked.original(),
                                       scalar(f), tolerance(tol));
    bool ok = r.holds && r.status == mz::CheckStatus::ok;
    return emit(inequality_json(r), ok, r.warnings, out);
  });
}

mjz_status mjz_tomic_weyl(const mjz_vector* x, const mjz_vector* y, const mjz_expr* f,
                          double tol, mjz_report** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    auto r = mz::tomic_weyl_check(x->ranked.original(), y->ranked.original(), scalar(f),
                                  tolerance(tol));
    bool ok = r.holds && r.status == mz::CheckStatus::ok;
    return emit(inequality_json(r), ok, r.warnings, out);
  });
}

mjz_status mjz_witness(const mjz_vector* x, const mjz_vector* y, double tol,
                       double* matrix, mjz_report** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    mz::Tolerance t = tolerance(tol);
    auto v = mz::check_classical(x->ranked, y->ranked, t);
    if (!v.holds(mz::Relation::classical)) {
      json body{{"majorized", false},
                {"relation", mz::to_string(v.relation)},
                {"first_failure", optional_index(v.first_failure)},
                {"matrix", nullptr}};
      return emit(std::move(body), false, {"x not majorized by y"}, out);
    }
    mz::Matrix a = mz::doubly_stochastic_witness(x->ranked.original(),
                                                 y->ranked.original(), t);
    const auto& xs = x->ranked.original();
    auto ay = a.apply(y->ranked.original());
    double residual = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      residual = std::max(residual, std::abs(xs[i] - ay[i]));
    }
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
      rows.push_back(std::vector<double>(a.row(r).begin(), a.row(r).end()));
    }
    if (matrix) std::copy(a.data().begin(), a.data().end(), matrix);
    json body{{"majorized", true},
              {"n", a.rows()},
              {"matrix", rows},
              {"residual", residual},
              {"doubly_stochastic", mz::is_doubly_stochastic(a, t.abs > 0 ? t.abs : 1e-9)}};
    return emit(std::move(body), true, {}, out);
  });
}

mjz_status mjz_is_doubly_stochastic(const double* a, size_t rows, size_t cols, double tol,
                                    int* out) {
  return guarded([&] {
    require(out, "output");
    if (rows * cols > 0) require(a, "matrix");
    mz::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = a[r * cols + c];
    }
    *out = mz::is_doubly_stochastic(m, tol < 0.0 ? 1e-9 : tol) ? 1 : 0;
    return MJZ_OK;
  });
}

void mjz_schur_options_init(mjz_schur_options* opt) {
  if (!opt) return;
  mz::SchurOptions d;
  *opt = {3, 0.0, 10.0, d.samples, d.seed, d.fd_step, d.fd_tol};
}

mjz_status mjz_schur(const mjz_expr* f, const mjz_schur_options* opt, mjz_report** out) {
  return guarded([&] {
    require(f, "expression");
    require(opt, "options");
    for (const auto& name : f->expr.variables()) {
      bool ok = name != "t";
      if (ok) {
        std::size_t idx = std::stoul(name.substr(1));
        ok = idx >= 1 && idx <= opt->dim;
      }
      if (!ok) {
        throw mz::Error(mz::ErrorCode::invalid_argument,
                        "variable '" + name + "' is not one of x1..x" + std::to_string(opt->dim));
      }
    }
    mz::SchurOptions o{opt->dim, opt->lo, opt->hi, opt->samples,
                       opt->seed, opt->fd_step, opt->fd_tol};
    const mz::expr::Expr* ex = &f->expr;
    auto r = mz::schur_ostrowski_check(
        [ex](std::span<const double> v) { return ex->eval_indexed(v); }, o);
    json body{{"verdict", mz::to_string(r.verdict)},
              {"min_slack_convex", r.min_slack_convex},
              {"min_slack_concave", r.min_slack_concave},
              {"witness_point", r.witness_point},
              {"witness_pair", json::array({r.witness_pair.first + 1, r.witness_pair.second + 1})},
              {"symmetric", r.symmetric},
              {"evaluated", r.evaluated},
              {"skipped", r.skipped}};
    bool ok = r.verdict != mz::SchurVerdict::inconclusive;
    return emit(std::move(body), ok, r.notes, out);
  });
}

/* ---- trees ---- */

mjz_status mjz_tree_create(const char* const* from, const char* const* to, size_t n_edges,
                           mjz_tree** out) {
  return guarded([&] {
    require(out, "output");
    require(from, "edge sources");
    require(to, "edge targets");
    std::vector<mz::Edge> edges;
    for (std::size_t i = 0; i < n_edges; ++i) {
      require(from[i], "label");
      require(to[i], "label");
      edges.emplace_back(from[i], to[i]);
    }
    *out = new mjz_tree{mz::Tree::from_edges(edges)};
    return MJZ_OK;
  });
}

mjz_status mjz_tree_load(const char* path, mjz_tree** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = new mjz_tree{mz::io::read_edge_list_file(path)};
    return MJZ_OK;
  });
}

mjz_status mjz_tree_parse(const char* text, mjz_tree** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output");
    *out = new mjz_tree{mz::io::parse_edge_list(text)};
    return MJZ_OK;
  });
}

void mjz_tree_free(mjz_tree* t) { delete t; }
size_t mjz_tree_size(const mjz_tree* t) { return t ? t->tree.size() : 0; }
const char* mjz_tree_label(const mjz_tree* t, size_t v) {
  return t && v < t->tree.size() ? t->tree.label(v).c_str() : nullptr;
}

mjz_status mjz_tree_distance_vector(const mjz_tree* t, size_t u, int* out) {
  return guarded([&] {
    require(t, "tree");
    require(out, "output");
    auto row = t->tree.distances_from(u);
    std::copy(row.begin(), row.end(), out);
    return MJZ_OK;
  });
}

mjz_status mjz_tree_center(const mjz_tree* t, mjz_order mode, mjz_report** out) {
  return guarded([&] {
    require(t, "tree");
    mz::OrderMode m = tree_mode(mode);
    auto c = mz::majorization_center(t->tree, m);
    std::vector<std::string> warnings;
    if (c.empty_family) {
      warnings.push_back("no adjacent pair is strictly comparable; center is the whole vertex set");
    }
    return emit(tree_body(t->tree, c, m), true, std::move(warnings), out);
  });
}

mjz_status mjz_tree_relation(const mjz_tree* t, const char* u, const char* v,
                             mjz_order mode, mjz_report** out) {
  return guarded([&] {
    require(t, "tree");
    require(u, "vertex label");
    require(v, "vertex label");
    mz::OrderMode m = tree_mode(mode);
    std::size_t iu = t->tree.index_of(u), iv = t->tree.index_of(v);
    auto rel = mz::vertex_relation(t->tree, iu, iv, m);
    json body = tree_body(t->tree, mz::majorization_center(t->tree, m), m);
    body["relations"] = json::array({{{"u", u},
                                      {"v", v},
                                      {"mode", mz::to_string(m)},
                                      {"relation", mz::to_string(rel.relation)}}});
    return emit(std::move(body), true, {}, out);
  });
}

mjz_status mjz_tree_facility(const mjz_tree* t, const mjz_expr* g, double tol,
                             mjz_report** out) {
  return guarded([&] {
    require(t, "tree");
    const mz::Tree& tree = t->tree;
    auto r = mz::facility_argmin(tree, scalar(g), tolerance(tol));
    json body = tree_body(tree, r.strong_center, mz::OrderMode::strong);
    json values = json::object(), alpha = json::object(), slacks = json::object(),
         equity = json::object();
    for (std::size_t v = 0; v < tree.size(); ++v) {
      values[tree.label(v)] = r.values[v];
      auto d = tree.distances_from(v);
      std::vector<double> dv(d.begin(), d.end());
      equity[tree.label(v)] = mz::equity_measure(dv);
    }
    for (const auto& e : r.entries) {
      alpha[tree.label(e.vertex)] = e.alpha;
      slacks[tree.label(e.vertex)] = e.slack;
    }
    json witnesses = json::array();
    for (std::size_t w : r.center_witnesses) witnesses.push_back(tree.label(w));
    body["facility"] = json{{"v0", tree.label(r.v0)},
                            {"F", values},
                            {"alpha", alpha},
                            {"alpha_slacks", slacks},
                            {"violations", r.violations},
                            {"alpha_not_below_one", r.alpha_not_below_one},
                            {"v0_in_strong_center", r.v0_in_strong_center},
                            {"center_witnesses", witnesses},
                            {"equity", equity}};
    std::vector<std::string> warnings;
    if (r.violations > 0) {
      warnings.push_back(std::to_string(r.violations) +
                         " vertex/vertices violate F(v0) <= alpha F(v)");
    }
    if (r.center_witnesses.empty()) {
      warnings.push_back("no strong-center vertex satisfies F(w) <= alpha F(v) for all v");
    }
    if (!r.v0_in_strong_center) {
      warnings.push_back("argmin of F lies outside the strong majorization center");
    }
    return emit(std::move(body), true, std::move(warnings), out);
  });
}

mjz_status mjz_equity_measure(const double* d, size_t n, double* out) {
  return guarded([&] {
    require(out, "output");
    if (n > 0) require(d, "distances");
    *out = mz::equity_measure(std::span<const double>(d, n));
    return MJZ_OK;
  });
}

/* ---- spiders ---- */

mjz_status mjz_spider_distance(const mjz_spider_point* p, const mjz_spider_point* q,
                               double* out) {
  return guarded([&] {
    require(out, "output");
    *out = mz::spider_distance(to_point(p), to_point(q));
    return MJZ_OK;
  });
}

mjz_status mjz_spider_midpoint(const mjz_spider_point* p, const mjz_spider_point* q,
                               mjz_spider_point* out) {
  return guarded([&] {
    require(out, "output");
    *out = from_point(mz::geodesic_midpoint(to_point(p), to_point(q)));
    return MJZ_OK;
  });
}

mjz_status mjz_spider_npc(const mjz_spider_point* x0, const mjz_spider_point* x1,
                          const mjz_spider_point* z, double tol, mjz_report** out) {
  return guarded([&] {
    auto a = to_point(x0), b = to_point(x1), c = to_point(z);
    auto r = mz::npc_inequality_check(a, b, c, tol < 0.0 ? 1e-9 : tol);
    json body{{"x0", point_json(a)},   {"x1", point_json(b)}, {"z", point_json(c)},
              {"midpoint", point_json(r.midpoint)},
              {"lhs", r.lhs},          {"rhs", r.rhs},
              {"slack", r.slack},      {"holds", r.holds}};
    return emit(std::move(body), r.holds, {}, out);
  });
}

mjz_status mjz_spider_npc_sample(size_t samples, uint64_t seed, size_t min_legs,
                                 size_t max_legs, double max_radius, double tol,
                                 mjz_report** out) {
  return guarded([&] {
    mz::NpcSampleOptions o{samples, seed, min_legs, max_legs, max_radius,
                           tol < 0.0 ? 1e-9 : tol};
    auto r = mz::npc_sample_check(o);
    json worst = json::array();
    for (const auto& p : r.worst) worst.push_back(point_json(p));
    json body{{"samples", r.samples},
              {"min_legs", min_legs},
              {"max_legs", max_legs},
              {"violations", r.violations},
              {"min_slack", r.min_slack},
              {"worst", worst},
              {"holds", r.violations == 0}};
    return emit(std::move(body), r.violations == 0, {}, out);
  });
}

mjz_status mjz_measure_create(size_t legs, const mjz_spider_point* points,
                              const double* weights, size_t n, mjz_measure** out) {
  return guarded([&] {
    require(out, "output");
    if (n > 0) {
      require(points, "points");
      require(weights, "weights");
    }
    std::vector<mz::SpiderAtom> atoms;
    for (std::size_t i = 0; i < n; ++i) atoms.push_back({to_point(&points[i]), weights[i]});
    *out = new mjz_measure{mz::SpiderMeasure(legs, std::move(atoms))};
    return MJZ_OK;
  });
}

mjz_status mjz_measure_load(const char* path, mjz_measure** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = new mjz_measure{mz::io::read_measure_file(path)};
    return MJZ_OK;
  });
}

mjz_status mjz_measure_parse(const char* text, mjz_measure** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output");
    *out = new mjz_measure{mz::io::parse_measure_json(text)};
    return MJZ_OK;
  });
}

void mjz_measure_free(mjz_measure* m) { delete m; }

mjz_status mjz_spider_barycenter(const mjz_measure* m, mjz_spider_point* point,
                                 mjz_report** out) {
  return guarded([&] {
    require(m, "measure");
    const auto& mu = m->measure;
    auto b = mz::spider_barycenter_numeric(mu);
    if (point) *point = from_point(b);
    json body{{"K", mu.legs()},
              {"barycenter", point_json(b)},
              {"objective", mz::barycenter_objective(mu, b)},
              {"closed_form", nullptr}};
    bool tripod = mu.legs() == 3 && mu.atoms().size() == 3;
    if (tripod) {
      bool legs_seen[3] = {false, false, false};
      for (const auto& a : mu.atoms()) {
        if (a.point.is_origin() || legs_seen[a.point.leg() - 1]) tripod = false;
        else legs_seen[a.point.leg() - 1] = true;
      }
    }
    if (tripod) {
      auto c = mz::tripod_barycenter(mu);
      body["closed_form"] = point_json(c);
      body["closed_form_gap"] = mz::spider_distance(b, c);
    }
    return emit(std::move(body), true, {}, out);
  });
}

mjz_status mjz_spider_convexity(const mjz_expr* const* f, size_t legs, uint64_t seed,
                                mjz_report** out) {
  return guarded([&] {
    auto sf = spider_function(f, legs);
    auto r = mz::convexity_conditions_check(sf);
    json pairs = json::array();
    for (const auto& p : r.pairs) {
      pairs.push_back({{"i", p.i},
                       {"j", p.j},
                       {"derivative_sum", p.derivative_sum},
                       {"derivative_ok", p.derivative_ok},
                       {"sum_nondecreasing", p.sum_nondecreasing}});
    }
    json body{{"restriction_convex", r.restriction_convex},
              {"each_restriction_convex", r.each_restriction_convex},
              {"right_derivs_at_0", r.right_derivs_at_0},
              {"pairs", pairs},
              {"derivative_conditions", r.derivative_conditions},
              {"pairwise_sums_nondecreasing", r.pairwise_sums_nondecreasing},
              {"conditions_hold", r.conditions_hold},
              {"jensen_violation", nullptr}};
    std::vector<std::string> warnings;
    if (!r.conditions_hold) {
      warnings.push_back(
          "conditions are sufficient, not necessary; searched for an explicit Jensen violation");
      if (auto hit = mz::search_jensen_violation(sf, 2000, seed)) {
        body["jensen_violation"] = json{{"measure", measure_json(hit->measure)},
                                        {"barycenter", point_json(hit->report.barycenter)},
                                        {"lhs", hit->report.lhs},
                                        {"rhs", hit->report.rhs},
                                        {"slack", hit->report.slack}};
      }
    }
    return emit(std::move(body), r.conditions_hold, std::move(warnings), out);
  });
}

mjz_status mjz_spider_jensen(const mjz_expr* const* f, size_t legs, const mjz_measure* m,
                             double tol, mjz_report** out) {
  return guarded([&] {
    require(m, "measure");
    auto sf = spider_function(f, legs);
    auto r = mz::jensen_check(sf, m->measure, tol < 0.0 ? 1e-9 : tol);
    json body{{"measure", measure_json(m->measure)},
              {"barycenter", point_json(r.barycenter)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"slack", r.slack},
              {"holds", r.holds}};
    return emit(std::move(body), r.holds, {}, out);
  });
}

}  // extern "C"
