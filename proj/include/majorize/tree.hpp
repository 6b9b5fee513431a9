#ifndef MAJORIZE_TREE_HPP
#define MAJORIZE_TREE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "majorize/majorization.hpp"

namespace majorize {

using Edge = std::pair<std::string, std::string>;

/// An unweighted labeled tree with its all-pairs edge-count distances.
///
/// Vertices are indexed in order of first appearance in the edge list.
/// Immutable after construction.
class Tree {
 public:
  // Throws on self-loops, duplicate edges, cycles and disconnected input,
  // naming the offending edge.
  static Tree from_edges(std::span<const Edge> edges);
  static Tree single(std::string label);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }
  bool adjacent(std::size_t u, std::size_t v) const;
  // Each edge once, as (smaller index, larger index), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  int distance(std::size_t u, std::size_t v) const { return dist_[u * size() + v]; }
  std::span<const int> distances_from(std::size_t u) const;
  int diameter() const;

 private:
  Tree() = default;
  void compute_distances();

  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> dist_;
};

Tree build_tree(std::span<const Edge> edges);

// Row u of the distance matrix, including the zero self-distance.
std::vector<int> distance_vector(const Tree& t, std::size_t u);

enum class OrderMode { weak, strong };
enum class VertexOrder { equivalent, u_below_v, v_below_u, incomparable };

const char* to_string(OrderMode m);
const char* to_string(VertexOrder o);

struct VertexRelation {
  VertexOrder relation = VertexOrder::incomparable;
  OrderMode mode = OrderMode::weak;
};

// Compares d(u,.) with d(v,.); integer data, so the comparison is exact.
VertexRelation vertex_relation(const Tree& t, std::size_t u, std::size_t v,
                               OrderMode mode);

struct SubtreePartition {
  std::vector<std::size_t> u_side;  // V(u;v), sorted
  std::vector<std::size_t> v_side;  // V(v;u), sorted
};

// Components of the tree with edge [u,v] removed. u, v must be adjacent.
SubtreePartition subtree_partition(const Tree& t, std::size_t u, std::size_t v);

struct EdgeRelation {
  std::size_t u;
  std::size_t v;
  VertexOrder relation;
};

struct CenterResult {
  std::vector<std::size_t> center;  // sorted vertex indices
  bool m_symmetric = false;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  // No adjacent pair was strictly comparable; center is all of V.
  bool empty_family = false;
  std::vector<EdgeRelation> edge_relations;
};

/// Majorization center (weak mode) or strong majorization center.
///
/// If two adjacent vertices are equivalent in the given mode, the tree is
/// m-symmetric and the center is that pair. Otherwise it is the intersection
/// of V(u;v) over adjacent pairs with u strictly below v.
CenterResult majorization_center(const Tree& t, OrderMode mode);

struct FacilityEntry {
  std::size_t vertex;
  double alpha;   // sum d(v0,.) / sum d(v,.)
  double slack;   // alpha * F(v) - F(v0)
  bool violated;  // slack below -tol
};

struct FacilityReport {
  std::size_t v0 = 0;
  std::vector<double> values;  // F(v) = sum_i g(d(v, i))
  std::vector<FacilityEntry> entries;  // every v != v0, ascending index
  std::size_t violations = 0;
  std::size_t alpha_not_below_one = 0;
  CenterResult strong_center;
  bool v0_in_strong_center = false;
  // Vertices w of the strong center with F(w) <= alpha(w,v) F(v) for every v.
  std::vector<std::size_t> center_witnesses;
};

/// Evaluates F(v) = sum_i g(d(v,i)) at every vertex, takes v0 = argmin F
/// (smallest index on ties) and reports the per-vertex slack of
/// F(v0) <= alpha(v0,v) F(v). Violations are reported, never suppressed.
/// Independently lists the strong-center vertices for which the inequality
/// holds against every other vertex.
FacilityReport facility_argmin(const Tree& t, const ScalarFunction& g,
                               Tolerance tol = {});

// Sum of squared deviations from the mean.
double equity_measure(std::span<const double> d);

}  // namespace majorize

#endif
