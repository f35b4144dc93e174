// Independent oracles and generators shared by the unit and acceptance tests.
// Nothing here calls into the code under test except for plain accessors.
#ifndef LMODEL_TESTS_SUPPORT_HPP
#define LMODEL_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lmodel/collide.hpp"
#include "lmodel/families.hpp"
#include "lmodel/graph.hpp"
#include "lmodel/plan.hpp"

namespace testsupport {

using lmodel::CollisionPair;
using lmodel::EdgeId;
using lmodel::Graph;
using lmodel::VertexId;

// (vertex label, unordered edge as sorted label pair)
using NamedPair = std::pair<std::string, std::pair<std::string, std::string>>;
using NamedPairSet = std::set<NamedPair>;

inline NamedPair named(std::string v, std::string a, std::string b) {
  if (b < a) {
    std::swap(a, b);
  }
  return {std::move(v), {std::move(a), std::move(b)}};
}

inline NamedPairSet named_set(const Graph& g, const std::vector<CollisionPair>& pairs) {
  NamedPairSet out;
  for (const auto& p : pairs) {
    out.insert(named(g.label(p.vertex), g.label(g.edge(p.edge).u), g.label(g.edge(p.edge).v)));
  }
  return out;
}

inline std::vector<CollisionPair> pairs_from(const Graph& g, const NamedPairSet& set) {
  std::vector<CollisionPair> out;
  for (const auto& [v, e] : set) {
    out.push_back({*g.find_vertex(v), *g.find_edge(e.first, e.second), 0.0, 0.0});
  }
  return out;
}

inline EdgeId edge_of(const Graph& g, const std::string& a, const std::string& b) {
  return *g.find_edge(a, b);
}

// Rule-based Dixon-1 collision set. Case 4 compares the y-signs of the two
// q vertices.
inline NamedPairSet dixon1_rule_pairs(const lmodel::families::Dixon1Params& p) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  auto P = [](std::size_t i) { return "p" + std::to_string(i); };
  auto Q = [](std::size_t j) { return "q" + std::to_string(j); };
  NamedPairSet out;
  for (std::size_t k = 1; k < m; ++k) {
    out.insert(named(P(0), Q(0), P(k)));
  }
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      if (p.sx[i - 1] * p.sx[k - 1] > 0) {
        out.insert(named(P(i), P(k), Q(0)));
      }
    }
  }
  for (std::size_t l = 1; l < n; ++l) {
    out.insert(named(Q(0), P(0), Q(l)));
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (p.sy[i - 1] * p.sy[k - 1] > 0) {
        out.insert(named(Q(i), Q(k), P(0)));
      }
    }
  }
  return out;
}

// Dixon-2: every vertex hits the three edges at its partner other than the
// edge joining the two.
inline NamedPairSet dixon2_partner_pairs() {
  const std::map<int, int> partner{{1, 5}, {2, 6}, {3, 7}, {4, 8}, {5, 1}, {6, 2}, {7, 3}, {8, 4}};
  NamedPairSet out;
  for (const auto& [v, w] : partner) {
    const bool left = v <= 4;
    for (int x = left ? 1 : 5; x <= (left ? 4 : 8); ++x) {
      if (x != v) {
        out.insert(named(std::to_string(v), std::to_string(w), std::to_string(x)));
      }
    }
  }
  return out;
}

inline NamedPairSet s2_listed_pairs() {
  return {named("v6", "v1", "v5"), named("v3", "v1", "v4"), named("v8", "v1", "v2"), named("v8", "v2", "v3"),
          named("v4", "v2", "v3"), named("v4", "v3", "v5"), named("v6", "v3", "v5"), named("v3", "v4", "v6"),
          named("v5", "v4", "v6"), named("v3", "v4", "v8"), named("v2", "v4", "v8"), named("v2", "v5", "v8"),
          named("v6", "v5", "v8"), named("v5", "v6", "v7")};
}

inline lmodel::HeightAssignment s2_reference_heights(const Graph& g) {
  const std::vector<std::pair<std::pair<std::string, std::string>, long long>> table{
      {{"v6", "v7"}, 0}, {{"v1", "v4"}, 1}, {{"v4", "v6"}, 2},  {{"v4", "v8"}, 3},  {{"v3", "v4"}, 4},
      {{"v5", "v6"}, 5}, {{"v5", "v8"}, 6}, {{"v1", "v5"}, 7},  {{"v1", "v7"}, 8},  {{"v3", "v5"}, 9},
      {{"v2", "v8"}, 10}, {{"v2", "v3"}, 11}, {{"v1", "v2"}, 12}};
  lmodel::HeightAssignment h;
  for (const auto& [e, value] : table) {
    h[edge_of(g, e.first, e.second)] = value;
  }
  return h;
}

inline lmodel::families::Dixon1Params example1_params() {
  return {{1, 2, 3}, {1, 2}, {1, -1, 1}, {1, -1}};
}

// Definition-level check, written out separately from the library verifier.
inline bool collision_free(const Graph& g, const std::vector<CollisionPair>& pairs,
                           const std::function<long long(EdgeId)>& h) {
  for (const auto& p : pairs) {
    const auto& inc = g.incident(p.vertex);
    if (inc.empty()) {
      continue;
    }
    long long lo = h(inc.front());
    long long hi = lo;
    for (EdgeId e : inc) {
      lo = std::min(lo, h(e));
      hi = std::max(hi, h(e));
    }
    const long long x = h(p.edge);
    if (lo <= x && x <= hi) {
      return false;
    }
  }
  return true;
}

inline bool collision_free(const Graph& g, const std::vector<CollisionPair>& pairs,
                           const lmodel::HeightAssignment& h) {
  return collision_free(g, pairs, [&](EdgeId e) { return h.at(e); });
}

// Tries every ordering of the edges. Ties never help: pulling tied heights
// apart keeps every strict inequality and every outside-the-range relation.
inline bool brute_force_exists(const Graph& g, const std::vector<CollisionPair>& pairs) {
  std::vector<long long> h(g.edge_count());
  std::iota(h.begin(), h.end(), 0);
  do {
    if (collision_free(g, pairs, [&](EdgeId e) { return h[e]; })) {
      return true;
    }
  } while (std::next_permutation(h.begin(), h.end()));
  return false;
}

// Definition 5 straight from incidence.
inline std::set<std::pair<EdgeId, EdgeId>> arcs_by_definition(const Graph& g, const std::vector<CollisionPair>& pairs) {
  std::set<std::pair<EdgeId, EdgeId>> arcs;
  for (EdgeId ei = 0; ei < g.edge_count(); ++ei) {
    for (EdgeId ej = 0; ej < g.edge_count(); ++ej) {
      if (ei == ej) {
        continue;
      }
      for (const auto& p : pairs) {
        if (p.edge == ej && g.edge(ei).contains(p.vertex)) {
          arcs.insert({ei, ej});
        }
      }
    }
  }
  return arcs;
}

// Exhaustive simple-cycle search; fine for a handful of nodes.
inline bool has_cycle_exhaustive(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& arcs) {
  std::vector<bool> on_path(n, false);
  std::function<bool(std::size_t, std::size_t)> walk = [&](std::size_t start, std::size_t at) {
    for (std::size_t next = 0; next < n; ++next) {
      if (!arcs.contains({at, next})) {
        continue;
      }
      if (next == start) {
        return true;
      }
      if (next > start && !on_path[next]) {
        on_path[next] = true;
        const bool found = walk(start, next);
        on_path[next] = false;
        if (found) {
          return true;
        }
      }
    }
    return false;
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = true;
    if (walk(s, s)) {
      return true;
    }
    on_path[s] = false;
  }
  return false;
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  int sign() { return coin() ? 1 : -1; }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

inline lmodel::families::Dixon1Params random_dixon1(Rng& rng, std::size_t m, std::size_t n) {
  lmodel::families::Dixon1Params p;
  double acc = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    acc += rng.uniform(0.3, 2.0);
    p.a.push_back(acc);
    p.sx.push_back(rng.sign());
  }
  acc = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    acc += rng.uniform(0.3, 2.0);
    p.b.push_back(acc);
    p.sy.push_back(rng.sign());
  }
  return p;
}

inline lmodel::families::Dixon2Params random_dixon2(Rng& rng) {
  lmodel::families::Dixon2Params p;
  p.a = rng.uniform(0.5, 1.5);
  p.b = p.a + rng.uniform(0.3, 2.0);
  p.d = p.a + rng.uniform(0.3, 2.0);
  return p;
}

// Synthetic instance for the planning oracles: up to max_edges random edges
// and a random set of non-incident pairs.
struct Synthetic {
  Graph graph;
  std::vector<CollisionPair> pairs;
};

inline Synthetic random_synthetic(Rng& rng, std::size_t max_edges) {
  const std::size_t nv = rng.index(3, 6);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < nv; ++v) {
    labels.push_back("n" + std::to_string(v));
  }
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t a = 0; a < nv; ++a) {
    for (std::size_t b = a + 1; b < nv; ++b) {
      all.emplace_back(a, b);
    }
  }
  std::shuffle(all.begin(), all.end(), rng.engine());
  const std::size_t ne = rng.index(1, std::min(max_edges, all.size()));
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < ne; ++i) {
    edges.emplace_back(labels[all[i].first], labels[all[i].second]);
  }
  Synthetic s{Graph(labels, edges), {}};
  const double density = rng.uniform(0.05, 0.5);
  for (VertexId v = 0; v < nv; ++v) {
    for (EdgeId e = 0; e < ne; ++e) {
      if (!s.graph.edge(e).contains(v) && rng.coin(density)) {
        s.pairs.push_back({v, e, 0.0, 0.0});
      }
    }
  }
  return s;
}

}  // namespace testsupport

#endif  // LMODEL_TESTS_SUPPORT_HPP
