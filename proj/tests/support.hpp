// Shared generators and independent oracles for the test suites.
#ifndef MAJORIZE_TESTS_SUPPORT_HPP
#define MAJORIZE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "majorize/expr.hpp"
#include "majorize/majorization.hpp"
#include "majorize/spider.hpp"
#include "majorize/tree.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

// ---- majorization, exact integer arithmetic -------------------------------

inline std::vector<std::int64_t> sorted_desc(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline bool int_weak(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  auto xs = sorted_desc(x), ys = sorted_desc(y);
  std::int64_t px = 0, py = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (px > py) return false;
  }
  return true;
}

inline bool int_classical(const std::vector<std::int64_t>& x,
                          const std::vector<std::int64_t>& y) {
  return int_weak(x, y) &&
         std::accumulate(x.begin(), x.end(), std::int64_t{0}) ==
             std::accumulate(y.begin(), y.end(), std::int64_t{0});
}

// Sum_{i<=k} x * Sum_{i>k} y <= Sum_{i<=k} y * Sum_{i>k} x for k < N, and
// Sum x <= Sum y, evaluated term by term without prefix arrays.
inline bool int_strong(const std::vector<std::int64_t>& x,
                       const std::vector<std::int64_t>& y) {
  auto xs = sorted_desc(x), ys = sorted_desc(y);
  const std::size_t n = xs.size();
  for (std::size_t k = 1; k < n; ++k) {
    std::int64_t hx = 0, hy = 0, tx = 0, ty = 0;
    for (std::size_t i = 0; i < n; ++i) {
      (i < k ? hx : tx) += xs[i];
      (i < k ? hy : ty) += ys[i];
    }
    if (hx * ty > hy * tx) return false;
  }
  return std::accumulate(xs.begin(), xs.end(), std::int64_t{0}) <=
         std::accumulate(ys.begin(), ys.end(), std::int64_t{0});
}

inline std::vector<double> to_real(const std::vector<std::int64_t>& v) {
  return {v.begin(), v.end()};
}

// ---- majorized pairs --------------------------------------------------------

// x = D z with D a product of random T-transforms, so x is majorized by z.
inline std::vector<double> random_t_mix(Rng& rng, std::vector<double> z, std::size_t steps) {
  const std::size_t n = z.size();
  if (n < 2) return z;
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 2);
    if (j >= i) ++j;
    double lambda = uniform(rng, 0.0, 1.0);
    double a = z[i], b = z[j];
    z[i] = lambda * a + (1.0 - lambda) * b;
    z[j] = (1.0 - lambda) * a + lambda * b;
  }
  return z;
}

// ---- trees ------------------------------------------------------------------

struct RandomTree {
  std::vector<std::string> labels;
  std::vector<majorize::Edge> edges;
};

// Random recursive tree with shuffled labels, edge order and orientation.
inline RandomTree random_tree(Rng& rng, std::size_t n) {
  RandomTree t;
  for (std::size_t i = 0; i < n; ++i) t.labels.push_back("v" + std::to_string(i));
  std::shuffle(t.labels.begin(), t.labels.end(), rng);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t parent = pick(rng, 0, i - 1);
    if (pick(rng, 0, 1)) {
      t.edges.emplace_back(t.labels[i], t.labels[parent]);
    } else {
      t.edges.emplace_back(t.labels[parent], t.labels[i]);
    }
  }
  std::shuffle(t.edges.begin(), t.edges.end(), rng);
  return t;
}

inline majorize::Tree build(const RandomTree& rt) {
  if (rt.edges.empty()) return majorize::Tree::single(rt.labels.front());
  return majorize::Tree::from_edges(rt.edges);
}

// All-pairs distances by Floyd-Warshall over the tree's own adjacency.
inline std::vector<std::vector<int>> floyd_warshall(const majorize::Tree& t) {
  const std::size_t n = t.size();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j : t.neighbors(i)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Vertices reachable from u without crossing edge {u, v}.
inline std::vector<std::size_t> side_of(const majorize::Tree& t, std::size_t u, std::size_t v) {
  std::vector<bool> seen(t.size(), false);
  std::deque<std::size_t> queue{u};
  seen[u] = true;
  while (!queue.empty()) {
    std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b : t.neighbors(a)) {
      if (seen[b] || (a == u && b == v)) continue;
      seen[b] = true;
      queue.push_back(b);
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

// d(u,.) weakly majorized by d(v,.), by exact integer prefix sums.
inline bool dist_weak(const majorize::Tree& t, std::size_t u, std::size_t v) {
  auto du = t.distances_from(u), dv = t.distances_from(v);
  return int_weak({du.begin(), du.end()}, {dv.begin(), dv.end()});
}

inline bool dist_strong(const majorize::Tree& t, std::size_t u, std::size_t v) {
  auto du = t.distances_from(u), dv = t.distances_from(v);
  return int_strong({du.begin(), du.end()}, {dv.begin(), dv.end()});
}

// Center by definition: m-symmetric pair first, otherwise the intersection
// of V(u;v) over adjacent pairs with u strictly below v (all of V if none).
inline std::vector<std::size_t> oracle_center(const majorize::Tree& t, bool strong) {
  auto below = [&](std::size_t u, std::size_t v) {
    return strong ? dist_strong(t, u, v) : dist_weak(t, u, v);
  };
  for (auto [u, v] : t.edges()) {
    if (below(u, v) && below(v, u)) return {u, v};
  }
  std::vector<bool> in(t.size(), true);
  for (auto [a, b] : t.edges()) {
    for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      if (below(u, v) && !below(v, u)) {
        auto side = side_of(t, u, v);
        std::vector<bool> keep(t.size(), false);
        for (std::size_t s : side) keep[s] = true;
        for (std::size_t i = 0; i < t.size(); ++i) in[i] = in[i] && keep[i];
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

// ---- spiders ----------------------------------------------------------------

inline majorize::SpiderPoint random_point(Rng& rng, std::size_t legs, double max_r) {
  double r = pick(rng, 0, 19) == 0 ? 0.0 : uniform(rng, 0.0, max_r);
  return {legs, pick(rng, 1, legs), r};
}

inline majorize::SpiderMeasure random_measure(Rng& rng, std::size_t legs, std::size_t atoms,
                                              double max_r) {
  std::vector<double> w(atoms);
  double total = 0.0;
  for (double& x : w) total += (x = uniform(rng, 0.05, 1.0));
  std::vector<majorize::SpiderAtom> out;
  for (std::size_t i = 0; i < atoms; ++i) {
    auto p = random_point(rng, legs, max_r);
    out.push_back({p, w[i] / total});
  }
  return majorize::SpiderMeasure(legs, std::move(out));
}

// Objective sum w d^2 evaluated from first principles.
inline double oracle_objective(const majorize::SpiderMeasure& mu, std::size_t leg, double r) {
  double acc = 0.0;
  for (const auto& a : mu.atoms()) {
    double s = a.point.radius();
    double d = (a.point.leg() == leg || s == 0.0 || r == 0.0) ? std::abs(r - s) : r + s;
    acc += a.weight * d * d;
  }
  return acc;
}

// Minimum of the objective by ternary search on every leg (convex per leg).
inline double oracle_min_objective(const majorize::SpiderMeasure& mu, double max_r) {
  double best = oracle_objective(mu, 1, 0.0);
  for (std::size_t leg = 1; leg <= mu.legs(); ++leg) {
    double lo = 0.0, hi = max_r;
    for (int it = 0; it < 200; ++it) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (oracle_objective(mu, leg, m1) <= oracle_objective(mu, leg, m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    best = std::min(best, oracle_objective(mu, leg, 0.5 * (lo + hi)));
  }
  return best;
}

// A random function on the tripod satisfying the sufficient conditions:
// convex restrictions with right slopes s_i at 0 and s_i + s_j >= 0.
inline majorize::SpiderFunction random_convex_tripod(Rng& rng) {
  double s[3];
  for (double& v : s) v = uniform(rng, -2, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (s[i] + s[j] < 0) {
        double lift = -(s[i] + s[j]) / 2;
        s[i] += lift;
        s[j] += lift;
      }
    }
  }
  std::vector<majorize::ScalarFunction> fs;
  double c0 = uniform(rng, -1, 1);
  for (double slope : s) {
    double q = uniform(rng, 0, 1), knee = uniform(rng, 0, 5);
    double h = uniform(rng, 0, 2);
    fs.push_back([=](double t) { return c0 + slope * t + q * t * t + h * std::max(t - knee, 0.0); });
  }
  return majorize::SpiderFunction(std::move(fs));
}

// ---- expressions -----------------------------------------------------------

// Random expression tree over t, x1, x2 and the whole function catalog.
inline majorize::expr::NodePtr random_ast(Rng& rng, int depth) {
  using namespace majorize::expr;
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 5);
  static const double constants[] = {0.0, 0.5, 1.0, 2.0, 3.0, 1.25, 10.0, 0.1};
  static const char* vars[] = {"t", "x1", "x2"};
  static const char* unary[] = {"exp", "log", "abs", "sqrt"};
  static const BinaryOp ops[] = {BinaryOp::add, BinaryOp::sub, BinaryOp::mul, BinaryOp::div,
                                BinaryOp::pow};
  auto idx = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  switch (kind(rng)) {
    case 0: return make_constant(constants[idx(8)]);
    case 1: return make_variable(vars[idx(3)]);
    case 2: return make_negate(random_ast(rng, depth - 1));
    case 3: {
      auto l = random_ast(rng, depth - 1);
      auto r = random_ast(rng, depth - 1);
      return make_binary(ops[idx(5)], l, r);
    }
    case 4: return make_call(unary[idx(4)], {random_ast(rng, depth - 1)});
    default: {
      auto l = random_ast(rng, depth - 1);
      auto r = random_ast(rng, depth - 1);
      return make_call(idx(2) ? "max" : "min", {l, r});
    }
  }
}

}  // namespace testing

#endif
