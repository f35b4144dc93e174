#ifndef LMODEL_CGRAPH_HPP
#define LMODEL_CGRAPH_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmodel/collide.hpp"
#include "lmodel/graph.hpp"

namespace lmodel {

using Arc = std::pair<EdgeId, EdgeId>;

/// Directed graph on (a subset of) the edges of a moving graph. There is an
/// arc e -> f when an endpoint of e collides with f.
///
/// Nodes are identified by their EdgeId and kept in ascending (canonical)
/// order; arcs are kept sorted.
class CollisionGraph {
public:
  CollisionGraph() = default;
  CollisionGraph(std::vector<EdgeId> nodes, std::vector<Arc> arcs);

  const std::vector<EdgeId>& nodes() const noexcept { return nodes_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  bool contains(EdgeId node) const;
  bool has_arc(EdgeId from, EdgeId to) const;

  /// Position of `node` in nodes(); the graph must contain it.
  std::size_t local(EdgeId node) const;
  /// Successors and predecessors as local indices, ascending.
  const std::vector<std::size_t>& out(std::size_t local) const { return out_.at(local); }
  const std::vector<std::size_t>& in(std::size_t local) const { return in_.at(local); }

  friend bool operator==(const CollisionGraph& a, const CollisionGraph& b) {
    return a.nodes_ == b.nodes_ && a.arcs_ == b.arcs_;
  }

private:
  std::vector<EdgeId> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

CollisionGraph build_collision_graph(const Graph& g, std::span<const CollisionPair> pairs);

/// Subgraph on `subset` (any order, no duplicates).
CollisionGraph induced(const CollisionGraph& c, std::span<const EdgeId> subset);

struct AcyclicityResult {
  bool acyclic = true;
  /// When cyclic: nodes of one directed cycle, each with an arc to the next
  /// and the last back to the first.
  std::vector<EdgeId> cycle;
};

AcyclicityResult check_acyclic(const CollisionGraph& c);
inline bool is_acyclic(const CollisionGraph& c) { return check_acyclic(c).acyclic; }

/// Undirected graph formed by the directed two-cycles of a collision graph.
struct MultiEdgedSubgraph {
  std::vector<EdgeId> nodes;                    // ascending
  std::vector<std::pair<EdgeId, EdgeId>> edges; // first < second, sorted
};

MultiEdgedSubgraph multi_edged_subgraph(const CollisionGraph& c);

struct Bicoloring {
  /// Part 0 holds the lowest node of the component.
  std::vector<EdgeId> part0;
  std::vector<EdgeId> part1;
};

struct BipartiteResult {
  bool bipartite = true;
  std::vector<Bicoloring> components;  // ordered by lowest node
  /// When not bipartite: a shortest odd cycle, as consecutive nodes.
  std::vector<EdgeId> odd_cycle;
};

BipartiteResult check_bipartite(const MultiEdgedSubgraph& u);

/// Graphviz rendering; two-cycles get an extra red undirected overlay edge.
std::string to_dot(const Graph& g, const CollisionGraph& c);

}  // namespace lmodel

#endif  // LMODEL_CGRAPH_HPP
