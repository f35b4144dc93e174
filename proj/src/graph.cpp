#include "lmodel/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_map>

namespace lmodel {

Graph::Graph(std::vector<std::string> vertex_labels,
             const std::vector<std::pair<std::string, std::string>>& edges)
    : labels_(std::move(vertex_labels)), incident_(labels_.size()) {
  std::unordered_map<std::string, VertexId> index;
  for (VertexId v = 0; v < labels_.size(); ++v) {
    if (labels_[v].empty()) {
      throw Error(ErrorKind::Schema, "vertex label must not be empty");
    }
    if (!index.emplace(labels_[v], v).second) {
      throw Error(ErrorKind::Schema, "duplicate vertex '" + labels_[v] + "'");
    }
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& [a, b] : edges) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw Error(ErrorKind::Schema, "dangling endpoint in edge [" + a + ", " + b + "]");
    }
    if (ia->second == ib->second) {
      throw Error(ErrorKind::Schema, "self-loop on vertex '" + a + "'");
    }
    const auto key = std::minmax(ia->second, ib->second);
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::Schema, "duplicate edge [" + a + ", " + b + "]");
    }
    const EdgeId id = edges_.size();
    edges_.push_back({ia->second, ib->second});
    incident_[ia->second].push_back(id);
    incident_[ib->second].push_back(id);
  }
}

std::optional<VertexId> Graph::find_vertex(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    return std::nullopt;
  }
  return static_cast<VertexId>(it - labels_.begin());
}

std::optional<EdgeId> Graph::find_edge(std::string_view a, std::string_view b) const {
  auto va = find_vertex(a);
  auto vb = find_vertex(b);
  if (!va || !vb) {
    return std::nullopt;
  }
  for (EdgeId e : incident_[*va]) {
    if (edges_[e].contains(*vb)) {
      return e;
    }
  }
  return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge_by_name(std::string_view name) const {
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto& [u, v] = edges_[e];
    if (name == labels_[u] + "-" + labels_[v] || name == labels_[v] + "-" + labels_[u]) {
      return e;
    }
  }
  return std::nullopt;
}

std::string Graph::edge_name(EdgeId e) const {
  const Edge& ed = edges_.at(e);
  return labels_[ed.u] + "-" + labels_[ed.v];
}

std::vector<VertexId> Graph::isolated_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < labels_.size(); ++v) {
    if (incident_[v].empty()) {
      out.push_back(v);
    }
  }
  return out;
}

MovingGraph::MovingGraph(Graph graph, std::vector<Motion> motions, Interval domain)
    : graph_(std::move(graph)), motions_(std::move(motions)), domain_(domain) {
  if (motions_.size() != graph_.vertex_count()) {
    throw Error(ErrorKind::Schema, "every vertex needs exactly one motion");
  }
  if (!std::isfinite(domain_.lo) || !std::isfinite(domain_.hi) || !(domain_.lo < domain_.hi)) {
    throw Error(ErrorKind::Schema, "domain must be a finite interval with lo < hi");
  }
}

MovingGraph MovingGraph::with_domain(Interval domain) const {
  return MovingGraph(graph_, motions_, domain);
}

Point MovingGraph::position(VertexId v, double t) const {
  const Motion& m = motions_.at(v);
  try {
    return {evaluate(m.x, t), evaluate(m.y, t)};
  } catch (const DomainError& err) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
    throw DomainError("vertex '" + graph_.label(v) + "' at t=" + std::string(buf, ptr) + ": " +
                          err.what(),
                      err.subexpression());
  }
}

Point MovingGraph::position(std::string_view label, double t) const {
  auto v = graph_.find_vertex(label);
  if (!v) {
    throw Error(ErrorKind::Precondition, "unknown vertex '" + std::string(label) + "'");
  }
  return position(*v, t);
}

LengthReport validate_edge_lengths(const MovingGraph& g, std::size_t samples, double tolerance) {
  if (samples < 2) {
    throw Error(ErrorKind::Precondition, "edge-length validation needs at least 2 samples");
  }
  const Graph& graph = g.graph();
  const auto [lo, hi] = g.domain();
  const double step = (hi - lo) / static_cast<double>(samples - 1);

  std::vector<std::vector<double>> lengths(graph.edge_count(), std::vector<double>(samples));
  std::vector<Point> at(graph.vertex_count());
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = k + 1 == samples ? hi : lo + step * static_cast<double>(k);
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      at[v] = g.position(v, t);
    }
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      lengths[e][k] = distance(at[graph.edge(e).u], at[graph.edge(e).v]);
    }
  }

  LengthReport report;
  report.tolerance = tolerance;
  report.isolated = graph.isolated_vertices();
  for (const auto& series : lengths) {
    EdgeLength el;
    for (double len : series) {
      el.mean += len;
    }
    el.mean /= static_cast<double>(samples);
    for (double len : series) {
      el.max_deviation = std::max(el.max_deviation, std::abs(len - el.mean));
    }
    report.pass = report.pass && el.max_deviation <= tolerance;
    report.edges.push_back(el);
  }
  return report;
}

bool is_periodic_on_domain(const MovingGraph& g, double tolerance) {
  for (VertexId v = 0; v < g.graph().vertex_count(); ++v) {
    const Point a = g.position(v, g.domain().lo);
    const Point b = g.position(v, g.domain().hi);
    if (std::abs(a.x - b.x) > tolerance || std::abs(a.y - b.y) > tolerance) {
      return false;
    }
  }
  return true;
}

}  // namespace lmodel
