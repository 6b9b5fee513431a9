// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "majorize/majorize.h"

using json = nlohmann::ordered_json;

namespace {

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Vector = std::unique_ptr<mjz_vector, Deleter<mjz_vector, mjz_vector_free>>;
using Expr = std::unique_ptr<mjz_expr, Deleter<mjz_expr, mjz_expr_free>>;
using Tree = std::unique_ptr<mjz_tree, Deleter<mjz_tree, mjz_tree_free>>;
using Measure = std::unique_ptr<mjz_measure, Deleter<mjz_measure, mjz_measure_free>>;
using Report = std::unique_ptr<mjz_report, Deleter<mjz_report, mjz_report_free>>;

// Raised for any status other than OK / FAILS.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mjz_status check(mjz_status s, const std::string& context) {
  if (s == MJZ_OK || s == MJZ_FAILS) return s;
  std::string msg = mjz_last_error();
  throw InputError(context.empty() ? msg : context + ": " + msg);
}

Vector load_vector(const std::string& path) {
  mjz_vector* v = nullptr;
  check(mjz_vector_load(path.c_str(), &v), path);
  return Vector(v);
}

Expr parse_expr(const std::string& src) {
  mjz_expr* e = nullptr;
  check(mjz_expr_parse(src.c_str(), &e), "expression '" + src + "'");
  return Expr(e);
}

Tree load_tree(const std::string& path) {
  mjz_tree* t = nullptr;
  check(mjz_tree_load(path.c_str(), &t), path);
  return Tree(t);
}

Measure load_measure(const std::string& path) {
  mjz_measure* m = nullptr;
  check(mjz_measure_load(path.c_str(), &m), path);
  return Measure(m);
}

json vector_json(const Vector& v) {
  const double* d = mjz_vector_data(v.get());
  return std::vector<double>(d, d + mjz_vector_size(v.get()));
}

mjz_order parse_order(const std::string& mode) {
  if (mode == "weak") return MJZ_WEAK;
  if (mode == "classic" || mode == "classical") return MJZ_CLASSICAL;
  if (mode == "strong") return MJZ_STRONG;
  throw InputError("unknown mode '" + mode + "'");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Outcome {
  json result;
  std::vector<std::string> warnings;
  int exit_code = 0;
};

Outcome from_report(mjz_status s, const Report& r) {
  Outcome o;
  o.result = json::parse(mjz_report_json(r.get()));
  for (std::size_t i = 0; i < mjz_report_warning_count(r.get()); ++i) {
    o.warnings.emplace_back(mjz_report_warning(r.get(), i));
  }
  o.exit_code = s == MJZ_OK ? 0 : 1;
  return o;
}

// Parses "leg:r".
mjz_spider_point parse_point(const std::string& text, std::size_t legs) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InputError("spider point '" + text + "' must look like leg:radius");
  }
  try {
    std::size_t used = 0;
    unsigned long leg = std::stoul(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    std::string rs = text.substr(colon + 1);
    double r = std::stod(rs, &used);
    if (used != rs.size()) throw std::invalid_argument(text);
    return {legs, leg, r};
  } catch (const std::logic_error&) {
    throw InputError("spider point '" + text + "' must look like leg:radius");
  }
}

json point_json(const mjz_spider_point& p) {
  return json{{"leg", p.leg}, {"r", p.radius}};
}

constexpr std::size_t kMaxLegs = 8;

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int indent = 2;

  std::string x_file, y_file, f_expr, out_csv, mode = "weak";
  std::string schur_expr;
  std::size_t dim = 3, samples = 0;
  double lo = 0.0, hi = 10.0;

  std::string edges, u, v, g_expr;

  std::string measure;
  std::vector<std::string> points;
  std::size_t legs = 3, min_legs = 2, max_legs = 6;
  double max_radius = 10.0;
  std::string f[kMaxLegs];
};

std::vector<std::string> leg_functions(const Options& o) {
  std::vector<std::string> out;
  for (const auto& s : o.f) {
    if (s.empty()) break;
    out.push_back(s);
  }
  for (std::size_t i = out.size(); i < kMaxLegs; ++i) {
    if (!o.f[i].empty()) {
      throw InputError("--f" + std::to_string(i + 1) + " given without --f" +
                       std::to_string(out.size() + 1));
    }
  }
  if (out.empty()) throw InputError("at least one leg function --f1 is required");
  return out;
}

Outcome run_compare(const Options& o, json& inputs) {
  auto x = load_vector(o.x_file), y = load_vector(o.y_file);
  inputs = {{"x", vector_json(x)}, {"y", vector_json(y)}, {"mode", o.mode}, {"tol", o.tol}};
  mjz_report* r = nullptr;
  mjz_status s = check(mjz_compare(x.get(), y.get(), parse_order(o.mode), o.tol, &r), "");
  return from_report(s, Report(r));
}

Outcome run_hlp(const Options& o, json& inputs, bool tomic) {
  auto x = load_vector(o.x_file), y = load_vector(o.y_file);
  auto f = parse_expr(o.f_expr);
  inputs = {{"x", vector_json(x)}, {"y", vector_json(y)}, {"f", o.f_expr}, {"tol", o.tol}};
  mjz_report* r = nullptr;
  mjz_status s = tomic ? mjz_tomic_weyl(x.get(), y.get(), f.get(), o.tol, &r)
                       : mjz_hlp(x.get(), y.get(), f.get(), o.tol, &r);
  s = check(s, "");
  return from_report(s, Report(r));
}

Outcome run_witness(const Options& o, json& inputs) {
  auto x = load_vector(o.x_file), y = load_vector(o.y_file);
  inputs = {{"x", vector_json(x)}, {"y", vector_json(y)}, {"tol", o.tol}};
  if (!o.out_csv.empty()) inputs["out"] = o.out_csv;
  std::size_t n = mjz_vector_size(x.get());
  if (n != mjz_vector_size(y.get())) throw InputError("length mismatch: x and y differ in length");
  std::vector<double> a(n * n);
  mjz_report* r = nullptr;
  mjz_status s = check(mjz_witness(x.get(), y.get(), o.tol, a.data(), &r), "");
  Outcome out = from_report(s, Report(r));
  if (s == MJZ_OK && !o.out_csv.empty()) {
    std::ofstream csv(o.out_csv);
    if (!csv) throw InputError("cannot write " + o.out_csv);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        csv << (j ? "," : "") << format_real(a[i * n + j]);
      }
      csv << '\n';
    }
  }
  return out;
}

Outcome run_schur(const Options& o, json& inputs) {
  auto f = parse_expr(o.schur_expr);
  mjz_schur_options so;
  mjz_schur_options_init(&so);
  so.dim = o.dim;
  so.lo = o.lo;
  so.hi = o.hi;
  so.seed = o.seed;
  if (o.samples) so.samples = o.samples;
  inputs = {{"F", o.schur_expr}, {"dim", so.dim},         {"lo", so.lo},
            {"hi", so.hi},       {"samples", so.samples}, {"seed", so.seed},
            {"fd_step", so.fd_step}, {"fd_tol", so.fd_tol}};
  mjz_report* r = nullptr;
  mjz_status s = check(mjz_schur(f.get(), &so, &r), "");
  return from_report(s, Report(r));
}

Outcome run_tree(const Options& o, json& inputs, const std::string& sub) {
  auto t = load_tree(o.edges);
  json labels = json::array();
  for (std::size_t i = 0; i < mjz_tree_size(t.get()); ++i) labels.push_back(mjz_tree_label(t.get(), i));
  inputs = {{"edges", o.edges}, {"vertices", labels}};
  mjz_report* r = nullptr;
  mjz_status s;
  if (sub == "center") {
    inputs["mode"] = o.mode;
    s = mjz_tree_center(t.get(), parse_order(o.mode), &r);
  } else if (sub == "relation") {
    inputs["u"] = o.u;
    inputs["v"] = o.v;
    inputs["mode"] = o.mode;
    s = mjz_tree_relation(t.get(), o.u.c_str(), o.v.c_str(), parse_order(o.mode), &r);
  } else {
    auto g = parse_expr(o.g_expr);
    inputs["g"] = o.g_expr;
    inputs["tol"] = o.tol;
    s = mjz_tree_facility(t.get(), g.get(), o.tol, &r);
  }
  s = check(s, "");
  return from_report(s, Report(r));
}

Outcome run_bary(const Options& o, json& inputs) {
  auto m = load_measure(o.measure);
  inputs = {{"measure", o.measure}};
  mjz_spider_point p{};
  mjz_report* r = nullptr;
  mjz_status s = check(mjz_spider_barycenter(m.get(), &p, &r), "");
  return from_report(s, Report(r));
}

Outcome run_npc(const Options& o, json& inputs) {
  mjz_report* r = nullptr;
  mjz_status s;
  if (!o.points.empty()) {
    if (o.points.size() != 3) throw InputError("--points takes exactly three points x0 x1 z");
    mjz_spider_point p[3];
    json pts = json::array();
    for (int i = 0; i < 3; ++i) {
      p[i] = parse_point(o.points[i], o.legs);
      pts.push_back(point_json(p[i]));
    }
    inputs = {{"K", o.legs}, {"points", pts}, {"tol", o.tol}};
    s = mjz_spider_npc(&p[0], &p[1], &p[2], o.tol, &r);
  } else {
    std::size_t samples = o.samples ? o.samples : 10000;
    inputs = {{"samples", samples},   {"seed", o.seed},
              {"min_legs", o.min_legs}, {"max_legs", o.max_legs},
              {"max_radius", o.max_radius}, {"tol", o.tol}};
    s = mjz_spider_npc_sample(samples, o.seed, o.min_legs, o.max_legs, o.max_radius, o.tol, &r);
  }
  s = check(s, "");
  return from_report(s, Report(r));
}

Outcome run_convex(const Options& o, json& inputs, bool jensen) {
  auto sources = leg_functions(o);
  std::vector<Expr> owned;
  std::vector<const mjz_expr*> fs;
  for (const auto& src : sources) {
    owned.push_back(parse_expr(src));
    fs.push_back(owned.back().get());
  }
  inputs = {{"f", sources}};
  mjz_report* r = nullptr;
  mjz_status s;
  if (jensen) {
    auto m = load_measure(o.measure);
    inputs["measure"] = o.measure;
    inputs["tol"] = o.tol;
    s = mjz_spider_jensen(fs.data(), fs.size(), m.get(), o.tol, &r);
  } else {
    inputs["seed"] = o.seed;
    s = mjz_spider_convexity(fs.data(), fs.size(), o.seed, &r);
  }
  s = check(s, "");
  return from_report(s, Report(r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorization, tree-center and spider-barycenter analyses"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(mjz_version()));

  Options o;
  app.add_option("--tol", o.tol, "Comparison tolerance (0 = exact)")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--json-indent", o.indent, "JSON indentation; -1 for one line")
      ->capture_default_str();

  const std::vector<std::string> vec_modes{"weak", "classic", "classical", "strong"};
  const std::vector<std::string> tree_modes{"weak", "strong"};

  auto* major = app.add_subcommand("major", "Vector majorization")->require_subcommand(1);
  auto* compare = major->add_subcommand("compare", "Compare x with y");
  compare->add_option("x", o.x_file, "Vector file x")->required();
  compare->add_option("y", o.y_file, "Vector file y")->required();
  compare->add_option("--mode", o.mode)->check(CLI::IsMember(vec_modes))->capture_default_str();

  auto* hlp = major->add_subcommand("hlp", "Generalized HLP inequality for x << y");
  hlp->add_option("x", o.x_file)->required();
  hlp->add_option("y", o.y_file)->required();
  hlp->add_option("--f", o.f_expr, "Convex function of t")->required();

  auto* tomic = major->add_subcommand("tomic", "Tomic-Weyl inequality for weak majorization");
  tomic->add_option("x", o.x_file)->required();
  tomic->add_option("y", o.y_file)->required();
  tomic->add_option("--f", o.f_expr, "Nondecreasing convex function of t")->required();

  auto* witness = major->add_subcommand("witness", "Doubly stochastic A with x = A y");
  witness->add_option("x", o.x_file)->required();
  witness->add_option("y", o.y_file)->required();
  witness->add_option("--out", o.out_csv, "CSV file for A");

  auto* schur = major->add_subcommand("schur", "Sample the Schur-Ostrowski criterion");
  schur->add_option("--F", o.schur_expr, "Symmetric function of x1..xdim")->required();
  schur->add_option("--dim", o.dim)->capture_default_str();
  schur->add_option("--lo", o.lo)->capture_default_str();
  schur->add_option("--hi", o.hi)->capture_default_str();
  schur->add_option("--samples", o.samples, "Sample count (default 512)");

  auto* tree = app.add_subcommand("tree", "Majorization on trees")->require_subcommand(1);
  auto* center = tree->add_subcommand("center", "Majorization center");
  center->add_option("edges", o.edges, "Edge-list file")->required();
  center->add_option("--mode", o.mode)->check(CLI::IsMember(tree_modes))->capture_default_str();
  auto* facility = tree->add_subcommand("facility", "Minimizer of sum g(d(v,.))");
  facility->add_option("edges", o.edges)->required();
  facility->add_option("--g", o.g_expr, "Function of t")->required();
  auto* relation = tree->add_subcommand("relation", "Compare two vertices");
  relation->add_option("edges", o.edges)->required();
  relation->add_option("u", o.u)->required();
  relation->add_option("v", o.v)->required();
  relation->add_option("--mode", o.mode)->check(CLI::IsMember(tree_modes))->capture_default_str();

  auto* spider = app.add_subcommand("spider", "Geometry of K-spiders")->require_subcommand(1);
  auto* bary = spider->add_subcommand("bary", "Barycenter of an atomic measure");
  bary->add_option("--measure", o.measure, "Measure JSON file")->required();
  auto* npc = spider->add_subcommand("npc", "NPC inequality, one triple or random sampling");
  npc->add_option("--points", o.points, "x0 x1 z as leg:radius")->expected(3);
  npc->add_option("--legs,-K", o.legs, "K for --points")->capture_default_str();
  npc->add_option("--samples", o.samples, "Random triples (default 10000)");
  npc->add_option("--min-legs", o.min_legs)->capture_default_str();
  npc->add_option("--max-legs", o.max_legs)->capture_default_str();
  npc->add_option("--max-radius", o.max_radius)->capture_default_str();
  auto* convex = spider->add_subcommand("convex", "Sufficient convexity conditions on the tripod");
  auto* jensen = spider->add_subcommand("jensen", "Jensen inequality for one measure");
  jensen->add_option("--measure", o.measure)->required();
  for (std::size_t i = 0; i < kMaxLegs; ++i) {
    std::string name = "--f" + std::to_string(i + 1);
    convex->add_option(name, o.f[i], "Restriction to leg " + std::to_string(i + 1));
    jensen->add_option(name, o.f[i], "Restriction to leg " + std::to_string(i + 1));
  }
  for (auto* sub : {major, tree, spider}) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* group = app.get_subcommands().front();
  CLI::App* leaf = group->get_subcommands().front();
  std::string command = group->get_name() + " " + leaf->get_name();

  json inputs = json::object();
  Outcome out;
  std::string error;
  try {
    if (leaf == compare) out = run_compare(o, inputs);
    else if (leaf == hlp) out = run_hlp(o, inputs, false);
    else if (leaf == tomic) out = run_hlp(o, inputs, true);
    else if (leaf == witness) out = run_witness(o, inputs);
    else if (leaf == schur) out = run_schur(o, inputs);
    else if (group == tree) out = run_tree(o, inputs, leaf->get_name());
    else if (leaf == bary) out = run_bary(o, inputs);
    else if (leaf == npc) out = run_npc(o, inputs);
    else if (leaf == convex) out = run_convex(o, inputs, false);
    else out = run_convex(o, inputs, true);
  } catch (const std::exception& e) {
    error = e.what();
    out = Outcome{nullptr, {}, 2};
  }

  json report{{"command", command},
              {"inputs", inputs},
              {"result", out.result},
              {"warnings", out.warnings},
              {"exit_code", out.exit_code}};
  if (!error.empty()) report["error"] = error;
  std::cout << report.dump(o.indent) << '\n';
  if (!error.empty()) std::cerr << "majorize " << command << ": " << error << '\n';
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
  return out.exit_code;
}
