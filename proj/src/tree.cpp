#include "majorize/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "majorize/error.hpp"

namespace majorize {

namespace {

std::string edge_name(const Edge& e) { return e.first + "-" + e.second; }

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

std::vector<double> as_real(std::span<const int> d) {
  return {d.begin(), d.end()};
}

bool below(const RankedVector& a, const RankedVector& b, OrderMode mode) {
  if (mode == OrderMode::weak) {
    return check_weak(a, b, Tolerance::exact()).holds(Relation::weak);
  }
  return check_strong(a, b, Tolerance::exact()).holds(Relation::strong);
}

void require_vertex(const Tree& t, std::size_t v) {
  if (v >= t.size()) {
    throw Error(ErrorCode::invalid_argument,
                "vertex index " + std::to_string(v) + " out of range");
  }
}

}  // namespace

Tree Tree::from_edges(std::span<const Edge> edges) {
  if (edges.empty()) throw Error(ErrorCode::invalid_argument, "empty edge list");
  Tree t;
  std::map<std::string, std::size_t, std::less<>> index;
  auto intern = [&](const std::string& label) {
    auto [it, fresh] = index.emplace(label, t.labels_.size());
    if (fresh) t.labels_.push_back(label);
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ids;
  for (const Edge& e : edges) {
    if (e.first.empty() || e.second.empty()) {
      throw Error(ErrorCode::invalid_argument, "empty vertex label in edge " + edge_name(e));
    }
    std::size_t a = intern(e.first);
    std::size_t b = intern(e.second);
    ids.emplace_back(a, b);
  }

  const std::size_t n = t.labels_.size();
  t.adjacency_.assign(n, {});
  DisjointSets sets(n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = ids[i];
    if (a == b) {
      throw Error(ErrorCode::invalid_argument, "self-loop: edge " + edge_name(edges[i]));
    }
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      throw Error(ErrorCode::invalid_argument, "duplicate edge " + edge_name(edges[i]));
    }
    if (!sets.unite(a, b)) {
      throw Error(ErrorCode::invalid_argument,
                  "cycle: edge " + edge_name(edges[i]) + " closes a cycle");
    }
    t.adjacency_[a].push_back(b);
    t.adjacency_[b].push_back(a);
  }
  // n - 1 edges without a cycle is connected, so this only catches forests.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (sets.find(ids[i].first) != sets.find(0)) {
      throw Error(ErrorCode::invalid_argument,
                  "disconnected: edge " + edge_name(edges[i]) +
                      " is not connected to vertex " + t.labels_[0]);
    }
  }
  for (auto& nb : t.adjacency_) std::sort(nb.begin(), nb.end());
  t.compute_distances();
  return t;
}

Tree Tree::single(std::string label) {
  if (label.empty()) throw Error(ErrorCode::invalid_argument, "empty vertex label");
  Tree t;
  t.labels_.push_back(std::move(label));
  t.adjacency_.assign(1, {});
  t.compute_distances();
  return t;
}

void Tree::compute_distances() {
  const std::size_t n = size();
  dist_.assign(n * n, -1);
  std::deque<std::size_t> queue;
  for (std::size_t root = 0; root < n; ++root) {
    int* row = dist_.data() + root * n;
    row[root] = 0;
    queue.assign(1, root);
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : adjacency_[v]) {
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
}

std::optional<std::size_t> Tree::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Tree::index_of(std::string_view label) const {
  auto v = find(label);
  if (!v) {
    throw Error(ErrorCode::invalid_argument, "unknown vertex '" + std::string(label) + "'");
  }
  return *v;
}

bool Tree::adjacent(std::size_t u, std::size_t v) const {
  const auto& nb = adjacency_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> Tree::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::span<const int> Tree::distances_from(std::size_t u) const {
  require_vertex(*this, u);
  return {dist_.data() + u * size(), size()};
}

int Tree::diameter() const {
  return dist_.empty() ? 0 : *std::max_element(dist_.begin(), dist_.end());
}

Tree build_tree(std::span<const Edge> edges) { return Tree::from_edges(edges); }

std::vector<int> distance_vector(const Tree& t, std::size_t u) {
  auto row = t.distances_from(u);
  return {row.begin(), row.end()};
}

const char* to_string(OrderMode m) {
  return m == OrderMode::weak ? "weak" : "strong";
}

const char* to_string(VertexOrder o) {
  switch (o) {
    case VertexOrder::equivalent: return "equivalent";
    case VertexOrder::u_below_v: return "u_below_v";
    case VertexOrder::v_below_u: return "v_below_u";
    case VertexOrder::incomparable: return "incomparable";
  }
  return "?";
}

VertexRelation vertex_relation(const Tree& t, std::size_t u, std::size_t v,
                               OrderMode mode) {
  require_vertex(t, u);
  require_vertex(t, v);
  if (u == v) {
    throw Error(ErrorCode::invalid_argument, "vertex relation needs two distinct vertices");
  }
  RankedVector du(as_real(t.distances_from(u)));
  RankedVector dv(as_real(t.distances_from(v)));
  bool uv = below(du, dv, mode);
  bool vu = below(dv, du, mode);
  VertexRelation r;
  r.mode = mode;
  if (uv && vu) {
    r.relation = VertexOrder::equivalent;
  } else if (uv) {
    r.relation = VertexOrder::u_below_v;
  } else if (vu) {
    r.relation = VertexOrder::v_below_u;
  } else {
    r.relation = VertexOrder::incomparable;
  }
  return r;
}

SubtreePartition subtree_partition(const Tree& t, std::size_t u, std::size_t v) {
  require_vertex(t, u);
  require_vertex(t, v);
  if (!t.adjacent(u, v)) {
    throw Error(ErrorCode::invalid_argument,
                "vertices " + t.label(u) + " and " + t.label(v) + " are not adjacent");
  }
  std::vector<char> on_u_side(t.size(), 0);
  std::vector<std::size_t> stack{u};
  on_u_side[u] = 1;
  while (!stack.empty()) {
    std::size_t w = stack.back();
    stack.pop_back();
    for (std::size_t next : t.neighbors(w)) {
      if (next == v && w == u) continue;
      if (!on_u_side[next]) {
        on_u_side[next] = 1;
        stack.push_back(next);
      }
    }
  }
  SubtreePartition p;
  for (std::size_t w = 0; w < t.size(); ++w) {
    (on_u_side[w] ? p.u_side : p.v_side).push_back(w);
  }
  return p;
}

CenterResult majorization_center(const Tree& t, OrderMode mode) {
  CenterResult result;
  for (auto [a, b] : t.edges()) {
    result.edge_relations.push_back({a, b, vertex_relation(t, a, b, mode).relation});
  }
  for (const auto& er : result.edge_relations) {
    if (er.relation == VertexOrder::equivalent) {
      result.m_symmetric = true;
      result.pair = std::make_pair(er.u, er.v);
      result.center = {er.u, er.v};
      return result;
    }
  }

  std::vector<char> in_center(t.size(), 1);
  bool any = false;
  for (const auto& er : result.edge_relations) {
    std::size_t low, high;
    if (er.relation == VertexOrder::u_below_v) {
      low = er.u;
      high = er.v;
    } else if (er.relation == VertexOrder::v_below_u) {
      low = er.v;
      high = er.u;
    } else {
      continue;
    }
    any = true;
    std::vector<char> keep(t.size(), 0);
    for (std::size_t w : subtree_partition(t, low, high).u_side) keep[w] = 1;
    for (std::size_t w = 0; w < t.size(); ++w) in_center[w] &= keep[w];
  }
  result.empty_family = !any;
  for (std::size_t w = 0; w < t.size(); ++w) {
    if (in_center[w]) result.center.push_back(w);
  }
  return result;
}

FacilityReport facility_argmin(const Tree& t, const ScalarFunction& g,
                               Tolerance tol) {
  const std::size_t n = t.size();
  std::vector<double> g_at(static_cast<std::size_t>(t.diameter()) + 1);
  for (std::size_t k = 0; k < g_at.size(); ++k) g_at[k] = g(static_cast<double>(k));

  FacilityReport report;
  report.values.assign(n, 0.0);
  std::vector<double> total_distance(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (int d : t.distances_from(v)) {
      report.values[v] += g_at[static_cast<std::size_t>(d)];
      total_distance[v] += d;
    }
  }
  for (std::size_t v = 1; v < n; ++v) {
    if (report.values[v] < report.values[report.v0]) report.v0 = v;
  }

  const std::size_t v0 = report.v0;
  const double f0 = report.values[v0];
  for (std::size_t v = 0; v < n; ++v) {
    if (v == v0) continue;
    FacilityEntry e{v, total_distance[v0] / total_distance[v], 0.0, false};
    e.slack = e.alpha * report.values[v] - f0;
    double scale = std::max(std::abs(f0), std::abs(e.alpha * report.values[v]));
    e.violated = e.slack < -tol.allowance(scale);
    if (e.violated) ++report.violations;
    if (!(e.alpha < 1.0)) ++report.alpha_not_below_one;
    report.entries.push_back(e);
  }

  report.strong_center = majorization_center(t, OrderMode::strong);
  const auto& c = report.strong_center.center;
  report.v0_in_strong_center = std::binary_search(c.begin(), c.end(), v0);

  for (std::size_t w : c) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (v == w) continue;
      double rhs = total_distance[w] / total_distance[v] * report.values[v];
      double lhs = report.values[w];
      ok = rhs - lhs >= -tol.allowance(std::max(std::abs(lhs), std::abs(rhs)));
    }
    if (ok) report.center_witnesses.push_back(w);
  }
  return report;
}

double equity_measure(std::span<const double> d) {
  if (d.empty()) throw Error(ErrorCode::invalid_argument, "empty distance vector");
  double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
  double s = 0.0;
  for (double v : d) s += (v - mean) * (v - mean);
  return s;
}

}  // namespace majorize
