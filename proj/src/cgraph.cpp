#include "lmodel/cgraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace lmodel {

CollisionGraph::CollisionGraph(std::vector<EdgeId> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw Error(ErrorKind::Precondition, "collision graph nodes must be distinct");
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  for (const auto& [from, to] : arcs_) {
    if (from == to) {
      throw Error(ErrorKind::Precondition, "collision graph cannot have self-arcs");
    }
    if (!contains(from) || !contains(to)) {
      throw Error(ErrorKind::Precondition, "arc endpoint is not a node of the collision graph");
    }
    out_[local(from)].push_back(local(to));
    in_[local(to)].push_back(local(from));
  }
  for (auto& list : in_) {
    std::sort(list.begin(), list.end());
  }
}

bool CollisionGraph::contains(EdgeId node) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), node);
}

bool CollisionGraph::has_arc(EdgeId from, EdgeId to) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{from, to});
}

std::size_t CollisionGraph::local(EdgeId node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) {
    throw Error(ErrorKind::Precondition, "edge " + std::to_string(node) + " is not a collision-graph node");
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

CollisionGraph build_collision_graph(const Graph& g, std::span<const CollisionPair> pairs) {
  std::vector<EdgeId> nodes(g.edge_count());
  for (EdgeId e = 0; e < nodes.size(); ++e) {
    nodes[e] = e;
  }
  std::vector<Arc> arcs;
  for (const CollisionPair& p : pairs) {
    if (p.vertex >= g.vertex_count() || p.edge >= g.edge_count()) {
      throw Error(ErrorKind::Schema, "collision pair references an unknown vertex or edge");
    }
    // every edge holding the colliding vertex points at the struck edge
    for (EdgeId source : g.incident(p.vertex)) {
      if (source != p.edge) {
        arcs.emplace_back(source, p.edge);
      }
    }
  }
  return CollisionGraph(std::move(nodes), std::move(arcs));
}

CollisionGraph induced(const CollisionGraph& c, std::span<const EdgeId> subset) {
  std::vector<EdgeId> nodes(subset.begin(), subset.end());
  for (EdgeId n : nodes) {
    if (!c.contains(n)) {
      throw Error(ErrorKind::Precondition, "edge " + std::to_string(n) + " is not a collision-graph node");
    }
  }
  std::sort(nodes.begin(), nodes.end());
  std::vector<Arc> arcs;
  for (const Arc& a : c.arcs()) {
    if (std::binary_search(nodes.begin(), nodes.end(), a.first) &&
        std::binary_search(nodes.begin(), nodes.end(), a.second)) {
      arcs.push_back(a);
    }
  }
  return CollisionGraph(std::move(nodes), std::move(arcs));
}

AcyclicityResult check_acyclic(const CollisionGraph& c) {
  enum class Mark { White, Grey, Black };
  const std::size_t n = c.size();
  std::vector<Mark> mark(n, Mark::White);
  // explicit DFS stack of (node, next successor slot)
  std::vector<std::pair<std::size_t, std::size_t>> stack;

  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::White) {
      continue;
    }
    stack.emplace_back(root, 0);
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, slot] = stack.back();
      const auto& succ = c.out(node);
      if (slot == succ.size()) {
        mark[node] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const std::size_t next = succ[slot++];
      if (mark[next] == Mark::Grey) {
        AcyclicityResult res{false, {}};
        auto from = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == next; });
        for (auto it = from; it != stack.end(); ++it) {
          res.cycle.push_back(c.nodes()[it->first]);
        }
        return res;
      }
      if (mark[next] == Mark::White) {
        mark[next] = Mark::Grey;
        stack.emplace_back(next, 0);
      }
    }
  }
  return {};
}

MultiEdgedSubgraph multi_edged_subgraph(const CollisionGraph& c) {
  MultiEdgedSubgraph u;
  std::set<EdgeId> nodes;
  for (const auto& [from, to] : c.arcs()) {
    if (from < to && c.has_arc(to, from)) {
      u.edges.emplace_back(from, to);
      nodes.insert(from);
      nodes.insert(to);
    }
  }
  std::sort(u.edges.begin(), u.edges.end());
  u.nodes.assign(nodes.begin(), nodes.end());
  return u;
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const MultiEdgedSubgraph& u) {
  std::vector<std::vector<std::size_t>> adj(u.nodes.size());
  auto pos = [&](EdgeId n) {
    return static_cast<std::size_t>(std::lower_bound(u.nodes.begin(), u.nodes.end(), n) - u.nodes.begin());
  };
  for (const auto& [a, b] : u.edges) {
    adj[pos(a)].push_back(pos(b));
    adj[pos(b)].push_back(pos(a));
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
  }
  return adj;
}

// Shortest odd cycle through BFS from every node of the offending component.
std::vector<EdgeId> shortest_odd_cycle(const MultiEdgedSubgraph& u,
                                       const std::vector<std::vector<std::size_t>>& adj,
                                       const std::vector<std::size_t>& component) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<EdgeId> best;
  for (std::size_t s : component) {
    std::vector<std::size_t> dist(adj.size(), none);
    std::vector<std::size_t> parent(adj.size(), none);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : adj[x]) {
        if (dist[y] == none) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (dist[y] == dist[x] && x < y) {
          const std::size_t length = 2 * dist[x] + 1;
          if (!best.empty() && best.size() <= length) {
            continue;
          }
          std::vector<std::size_t> left{x};
          std::vector<std::size_t> right{y};
          while (left.back() != right.back()) {
            left.push_back(parent[left.back()]);
            right.push_back(parent[right.back()]);
          }
          // left runs x..lca, right runs y..lca; stitch lca..x then y..
          std::vector<EdgeId> cycle;
          for (auto it = left.rbegin(); it != left.rend(); ++it) {
            cycle.push_back(u.nodes[*it]);
          }
          for (std::size_t i = 0; i + 1 < right.size(); ++i) {
            cycle.push_back(u.nodes[right[i]]);
          }
          best = std::move(cycle);
        }
      }
    }
  }
  return best;
}

}  // namespace

BipartiteResult check_bipartite(const MultiEdgedSubgraph& u) {
  const auto adj = adjacency(u);
  std::vector<int> color(u.nodes.size(), -1);
  BipartiteResult res;
  for (std::size_t root = 0; root < u.nodes.size(); ++root) {
    if (color[root] != -1) {
      continue;
    }
    std::vector<std::size_t> members;
    bool odd = false;
    std::deque<std::size_t> queue{root};
    color[root] = 0;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      members.push_back(x);
      for (std::size_t y : adj[x]) {
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          odd = true;
        }
      }
    }
    std::sort(members.begin(), members.end());
    if (odd) {
      if (res.bipartite) {
        res.bipartite = false;
        res.odd_cycle = shortest_odd_cycle(u, adj, members);
      }
      continue;
    }
    Bicoloring b;
    for (std::size_t m : members) {
      (color[m] == 0 ? b.part0 : b.part1).push_back(u.nodes[m]);
    }
    res.components.push_back(std::move(b));
  }
  if (!res.bipartite) {
    res.components.clear();
  }
  return res;
}

std::string to_dot(const Graph& g, const CollisionGraph& c) {
  auto quoted = [&](EdgeId e) { return "\"" + g.edge_name(e) + "\""; };
  std::string out = "digraph C {\n";
  for (EdgeId n : c.nodes()) {
    out += "  " + quoted(n) + ";\n";
  }
  for (const auto& [from, to] : c.arcs()) {
    out += "  " + quoted(from) + " -> " + quoted(to) + ";\n";
  }
  for (const auto& [a, b] : multi_edged_subgraph(c).edges) {
    out += "  " + quoted(a) + " -> " + quoted(b) + " [dir=none, color=red, penwidth=2];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace lmodel
