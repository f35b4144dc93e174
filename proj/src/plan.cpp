#include "lmodel/plan.hpp"

#include <algorithm>
#include <functional>

namespace lmodel {

namespace {

std::string describe_cycle(const std::vector<EdgeId>& cycle) {
  std::string out;
  for (EdgeId e : cycle) {
    out += std::to_string(e) + " -> ";
  }
  if (!cycle.empty()) {
    out += std::to_string(cycle.front());
  }
  return out;
}

HeightAssignment layered_sweep(const CollisionGraph& c, long long start, long long step) {
  std::vector<std::size_t> indegree(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    indegree[i] = c.in(i).size();
  }
  std::vector<bool> removed(c.size(), false);
  HeightAssignment h;
  long long k = start;
  std::size_t remaining = c.size();
  while (remaining > 0) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!removed[i] && indegree[i] == 0) {
        layer.push_back(i);
      }
    }
    if (layer.empty()) {
      throw Error(ErrorKind::Precondition,
                  "collision graph has a cycle (edge ids): " + describe_cycle(check_acyclic(c).cycle));
    }
    for (std::size_t i : layer) {
      removed[i] = true;
      --remaining;
      for (std::size_t j : c.out(i)) {
        --indegree[j];
      }
      h[c.nodes()[i]] = k;
      k += step;
    }
  }
  return h;
}

void check_partition_covers(const Graph& g, const Partition& p) {
  std::vector<int> seen(g.edge_count(), 0);
  for (const auto* part : {&p.upper, &p.lower}) {
    for (EdgeId e : *part) {
      if (e >= g.edge_count()) {
        throw Error(ErrorKind::Precondition, "partition names an unknown edge");
      }
      if (seen[e]++ != 0) {
        throw Error(ErrorKind::Precondition, "edge " + g.edge_name(e) + " appears twice in the partition");
      }
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (seen[e] == 0) {
      throw Error(ErrorKind::Precondition, "edge " + g.edge_name(e) + " is missing from the partition");
    }
  }
}

// Backtracking search behind decide_partition.
class PartitionSearch {
public:
  PartitionSearch(const CollisionGraph& c, const std::vector<Bicoloring>& components, std::vector<std::size_t> free)
      : c_(c), components_(components), free_(std::move(free)), side_(c.size(), kUnplaced),
        stamp_(c.size(), 0) {}

  bool run() { return place_from(0); }

  Partition result() const {
    Partition p;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      (side_[i] == kUpper ? p.upper : p.lower).push_back(c_.nodes()[i]);
    }
    return p;
  }

private:
  static constexpr int kUnplaced = -1;
  static constexpr int kUpper = 0;
  static constexpr int kLower = 1;

  bool place_from(std::size_t decision) {
    if (decision < components_.size()) {
      const Bicoloring& comp = components_[decision];
      for (int flip = 0; flip < 2; ++flip) {
        if (place_all(comp.part0, flip) && place_all(comp.part1, 1 - flip) && place_from(decision + 1)) {
          return true;
        }
        unplace(comp.part0);
        unplace(comp.part1);
      }
      return false;
    }
    const std::size_t f = decision - components_.size();
    if (f == free_.size()) {
      return true;
    }
    for (int s : {kUpper, kLower}) {
      if (place(free_[f], s) && place_from(decision + 1)) {
        return true;
      }
      side_[free_[f]] = kUnplaced;
    }
    return false;
  }

  bool place_all(const std::vector<EdgeId>& nodes, int s) {
    for (EdgeId n : nodes) {
      if (!place(c_.local(n), s)) {
        return false;
      }
    }
    return true;
  }

  void unplace(const std::vector<EdgeId>& nodes) {
    for (EdgeId n : nodes) {
      side_[c_.local(n)] = kUnplaced;
    }
  }

  // The side was acyclic before, so a new cycle must run through `node`.
  bool place(std::size_t node, int s) {
    side_[node] = s;
    ++epoch_;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : c_.out(x)) {
        if (side_[y] != s) {
          continue;
        }
        if (y == node) {
          return false;
        }
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          stack.push_back(y);
        }
      }
    }
    return true;
  }

  const CollisionGraph& c_;
  const std::vector<Bicoloring>& components_;
  std::vector<std::size_t> free_;
  std::vector<int> side_;
  std::vector<std::size_t> stamp_;
  std::size_t epoch_ = 0;
};

// Strict order constraints over edges with multiplicities, so that arcs
// contributed by several pairs can be withdrawn independently.
class OrderConstraints {
public:
  explicit OrderConstraints(std::size_t n) : n_(n), count_(n * n, 0), stamp_(n, 0) {}

  // Adds "below < above"; false (and nothing added) if that closes a cycle.
  bool add(std::size_t below, std::size_t above) {
    if (count_[below * n_ + above] == 0 && reaches(above, below)) {
      return false;
    }
    ++count_[below * n_ + above];
    return true;
  }

  void remove(std::size_t below, std::size_t above) { --count_[below * n_ + above]; }

  // Ranks by Kahn's algorithm, smallest available index first.
  std::vector<long long> ranks() const {
    std::vector<std::size_t> indegree(n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        indegree[b] += count_[a * n_ + b] > 0 ? 1 : 0;
      }
    }
    std::vector<long long> rank(n_, -1);
    for (long long next = 0; next < static_cast<long long>(n_); ++next) {
      std::size_t pick = 0;
      while (rank[pick] != -1 || indegree[pick] != 0) {
        ++pick;
      }
      rank[pick] = next;
      for (std::size_t b = 0; b < n_; ++b) {
        if (count_[pick * n_ + b] > 0) {
          --indegree[b];
        }
      }
    }
    return rank;
  }

private:
  bool reaches(std::size_t from, std::size_t to) {
    ++epoch_;
    std::vector<std::size_t> stack{from};
    stamp_[from] = epoch_;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      if (x == to) {
        return true;
      }
      for (std::size_t y = 0; y < n_; ++y) {
        if (count_[x * n_ + y] > 0 && stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          stack.push_back(y);
        }
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<unsigned> count_;
  std::vector<std::size_t> stamp_;
  std::size_t epoch_ = 0;
};

}  // namespace

std::vector<EdgeId> minimal_nodes(const CollisionGraph& c) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.in(i).empty()) {
      out.push_back(c.nodes()[i]);
    }
  }
  return out;
}

HeightAssignment heights_up(const CollisionGraph& c) { return layered_sweep(c, 1, 1); }

HeightAssignment heights_down(const CollisionGraph& c) { return layered_sweep(c, 0, -1); }

PartitionDecision decide_partition(const CollisionGraph& c, const PartitionOptions& opts) {
  const MultiEdgedSubgraph u = multi_edged_subgraph(c);
  const BipartiteResult bip = check_bipartite(u);
  PartitionDecision decision;
  if (!bip.bipartite) {
    decision.outcome = PartitionDecision::Outcome::NotBipartite;
    decision.odd_cycle = bip.odd_cycle;
    return decision;
  }

  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!std::binary_search(u.nodes.begin(), u.nodes.end(), c.nodes()[i])) {
      free.push_back(i);
    }
  }
  if (free.size() > opts.max_free_nodes) {
    throw Error(ErrorKind::Limit, "partition search has " + std::to_string(free.size()) +
                                      " nodes outside every two-cycle (limit " +
                                      std::to_string(opts.max_free_nodes) + ")");
  }

  PartitionSearch search(c, bip.components, std::move(free));
  if (!search.run()) {
    decision.outcome = PartitionDecision::Outcome::Exhausted;
    return decision;
  }
  Partition p = search.result();
  if (!is_acyclic(induced(c, p.upper)) || !is_acyclic(induced(c, p.lower))) {
    throw Error(ErrorKind::Precondition, "internal error: partition search returned a cyclic part");
  }
  decision.outcome = PartitionDecision::Outcome::Found;
  decision.partition = std::move(p);
  return decision;
}

HeightAssignment assign_heights(const Graph& g, std::span<const CollisionPair> pairs, const Partition& p) {
  check_partition_covers(g, p);
  const CollisionGraph c = build_collision_graph(g, pairs);
  const CollisionGraph upper = induced(c, p.upper);
  const CollisionGraph lower = induced(c, p.lower);
  for (const auto* part : {&upper, &lower}) {
    const AcyclicityResult res = check_acyclic(*part);
    if (!res.acyclic) {
      std::string names;
      for (EdgeId e : res.cycle) {
        names += g.edge_name(e) + " -> ";
      }
      names += g.edge_name(res.cycle.front());
      throw Error(ErrorKind::Precondition, std::string(part == &upper ? "upper" : "lower") +
                                               " part induces a cycle: " + names);
    }
  }
  HeightAssignment h = heights_up(upper);
  h.merge(heights_down(lower));
  return h;
}

VerifyReport verify_collision_free(const Graph& g, std::span<const CollisionPair> pairs,
                                   const HeightAssignment& h) {
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!h.contains(e)) {
      throw Error(ErrorKind::Precondition, "no height for edge " + g.edge_name(e));
    }
  }
  VerifyReport report;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const CollisionPair& p = pairs[i];
    if (p.vertex >= g.vertex_count() || p.edge >= g.edge_count()) {
      throw Error(ErrorKind::Schema, "collision pair references an unknown vertex or edge");
    }
    const auto& inc = g.incident(p.vertex);
    if (inc.empty()) {
      continue;
    }
    long long lo = h.at(inc.front());
    long long hi = lo;
    for (EdgeId e : inc) {
      lo = std::min(lo, h.at(e));
      hi = std::max(hi, h.at(e));
    }
    const long long he = h.at(p.edge);
    if (lo <= he && he <= hi) {
      report.violations.push_back({i, lo, hi, he});
    }
  }
  report.collision_free = report.violations.empty();
  return report;
}

HeightAssignment split_layers(const Graph& g, std::span<const CollisionPair> pairs, const HeightAssignment& h) {
  if (!verify_collision_free(g, pairs, h).collision_free) {
    throw Error(ErrorKind::Precondition, "split_layers needs a collision-free assignment");
  }
  std::vector<EdgeId> order(g.edge_count());
  for (EdgeId e = 0; e < order.size(); ++e) {
    order[e] = e;
  }
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return h.at(a) < h.at(b); });
  HeightAssignment out;
  if (order.empty()) {
    return out;
  }
  const long long base = h.at(order.front());
  for (std::size_t r = 0; r < order.size(); ++r) {
    out[order[r]] = base + static_cast<long long>(r);
  }
  return out;
}

ExistenceResult exists_arrangement(const Graph& g, std::span<const CollisionPair> pairs) {
  // Distinct constraining pairs, most constrained vertex first.
  std::vector<std::pair<VertexId, EdgeId>> work;
  for (const CollisionPair& p : pairs) {
    if (p.vertex >= g.vertex_count() || p.edge >= g.edge_count()) {
      throw Error(ErrorKind::Schema, "collision pair references an unknown vertex or edge");
    }
    if (g.edge(p.edge).contains(p.vertex)) {
      throw Error(ErrorKind::Precondition, "collision pair vertex is an endpoint of its edge");
    }
    if (!g.incident(p.vertex).empty()) {
      work.emplace_back(p.vertex, p.edge);
    }
  }
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());
  std::stable_sort(work.begin(), work.end(), [&](const auto& a, const auto& b) {
    return g.incident(a.first).size() > g.incident(b.first).size();
  });

  OrderConstraints order(g.edge_count());
  ExistenceResult result;

  std::function<bool(std::size_t)> branch = [&](std::size_t i) -> bool {
    ++result.branches;
    if (i == work.size()) {
      return true;
    }
    const auto [v, e] = work[i];
    const auto& inc = g.incident(v);
    for (bool below : {true, false}) {
      std::size_t added = 0;
      bool ok = true;
      for (; added < inc.size(); ++added) {
        ok = below ? order.add(e, inc[added]) : order.add(inc[added], e);
        if (!ok) {
          break;
        }
      }
      if (ok && branch(i + 1)) {
        return true;
      }
      for (std::size_t k = 0; k < added; ++k) {
        below ? order.remove(e, inc[k]) : order.remove(inc[k], e);
      }
    }
    return false;
  };

  if (!branch(0)) {
    return result;
  }
  const std::vector<long long> rank = order.ranks();
  HeightAssignment witness;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    witness[e] = rank[e];
  }
  if (!verify_collision_free(g, pairs, witness).collision_free) {
    throw Error(ErrorKind::Precondition, "internal error: arrangement witness fails verification");
  }
  result.exists = true;
  result.witness = std::move(witness);
  return result;
}

HeightAssignment dixon1_heights(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) {
    throw Error(ErrorKind::Precondition, "dixon1_heights needs m, n >= 1");
  }
  HeightAssignment h;
  const auto mm = static_cast<long long>(m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto ii = static_cast<long long>(i);
      const auto jj = static_cast<long long>(j);
      h[j * m + i] = j == 0 ? ii + 1 : -(jj - 1) * (mm + 1) - ii;
    }
  }
  return h;
}

}  // namespace lmodel
