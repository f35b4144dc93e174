#ifndef LMODEL_GRAPH_HPP
#define LMODEL_GRAPH_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmodel/expr.hpp"

namespace lmodel {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId u;
  VertexId v;

  bool contains(VertexId w) const noexcept { return u == w || v == w; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with labelled vertices. Vertex and edge order are
/// exactly the insertion order and serve as the canonical order everywhere.
class Graph {
public:
  Graph() = default;
  Graph(std::vector<std::string> vertex_labels, const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Edges incident to `v`, in canonical edge order.
  const std::vector<EdgeId>& incident(VertexId v) const { return incident_.at(v); }

  std::optional<VertexId> find_vertex(std::string_view label) const;
  /// Accepts either endpoint order.
  std::optional<EdgeId> find_edge(std::string_view a, std::string_view b) const;
  /// Looks up "u-v" or "v-u" against the canonical edge names.
  std::optional<EdgeId> find_edge_by_name(std::string_view name) const;

  /// "u-v" in the stored endpoint order.
  std::string edge_name(EdgeId e) const;

  std::vector<VertexId> isolated_vertices() const;

private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 2.0 * std::numbers::pi;
};

struct Motion {
  Expr x;
  Expr y;
};

/// A graph whose vertices follow parametric planar trajectories.
///
/// Edge lengths are supposed to stay constant; that is not enforced here,
/// see validate_edge_lengths.
class MovingGraph {
public:
  MovingGraph(Graph graph, std::vector<Motion> motions, Interval domain = {});

  const Graph& graph() const noexcept { return graph_; }
  const Motion& motion(VertexId v) const { return motions_.at(v); }
  const std::vector<Motion>& motions() const noexcept { return motions_; }
  const Interval& domain() const noexcept { return domain_; }

  MovingGraph with_domain(Interval domain) const;

  /// Throws DomainError annotated with the vertex label and t.
  Point position(VertexId v, double t) const;
  Point position(std::string_view label, double t) const;

private:
  Graph graph_;
  std::vector<Motion> motions_;
  Interval domain_;
};

inline double distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

struct EdgeLength {
  double mean = 0.0;
  double max_deviation = 0.0;
};

struct LengthReport {
  std::vector<EdgeLength> edges;  // indexed by EdgeId
  std::vector<VertexId> isolated;
  double tolerance = 0.0;
  bool pass = true;
};

/// Samples each edge length at `samples` equally spaced times over the domain
/// (both endpoints included). Requires samples >= 2.
LengthReport validate_edge_lengths(const MovingGraph& g, std::size_t samples, double tolerance);

/// True when every vertex is back at its starting position at the end of the
/// domain (within `tolerance`).
bool is_periodic_on_domain(const MovingGraph& g, double tolerance = 1e-9);

}  // namespace lmodel

#endif  // LMODEL_GRAPH_HPP
