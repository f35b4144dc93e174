#ifndef LMODEL_PLAN_HPP
#define LMODEL_PLAN_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmodel/cgraph.hpp"
#include "lmodel/collide.hpp"
#include "lmodel/graph.hpp"

namespace lmodel {

/// Integer height per edge of the L-model.
using HeightAssignment = std::map<EdgeId, long long>;

struct Partition {
  std::vector<EdgeId> upper;  // ascending
  std::vector<EdgeId> lower;  // ascending

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Nodes with no incoming arc, in canonical order.
std::vector<EdgeId> minimal_nodes(const CollisionGraph& c);

/// Layered sweep: repeatedly strip the minimal nodes and number them in
/// canonical order, counting up from 1. Every arc u -> v ends with
/// h(u) < h(v). Throws on a cyclic graph.
HeightAssignment heights_up(const CollisionGraph& c);

/// Same sweep counting down from 0, so every arc u -> v ends with h(u) > h(v).
HeightAssignment heights_down(const CollisionGraph& c);

struct PartitionOptions {
  /// Abort (ErrorKind::Limit) when more nodes than this lie outside every
  /// two-cycle; each of them doubles the search space.
  std::size_t max_free_nodes = 24;
};

struct PartitionDecision {
  enum class Outcome { Found, NotBipartite, Exhausted };

  Outcome outcome = Outcome::Exhausted;
  std::optional<Partition> partition;
  std::vector<EdgeId> odd_cycle;  // NotBipartite only

  bool found() const noexcept { return outcome == Outcome::Found; }
};

/// Searches for a split of the nodes into two sets that both induce acyclic
/// subgraphs. Two-cycles must be separated, so the nodes on them are placed by
/// whole-component 2-colourings of the multi-edged subgraph (canonical
/// colouring first, colour 0 upper) and the remaining nodes upper-first,
/// depth first with cycle pruning after every placement.
PartitionDecision decide_partition(const CollisionGraph& c, const PartitionOptions& opts = {});

/// Upper edges numbered by heights_up, lower edges by heights_down. Throws
/// Precondition if either induced graph has a cycle.
HeightAssignment assign_heights(const Graph& g, std::span<const CollisionPair> pairs, const Partition& p);

struct Violation {
  std::size_t pair_index = 0;  // into the pairs span handed to the verifier
  long long lo = 0;
  long long hi = 0;
  long long offending = 0;
};

struct VerifyReport {
  bool collision_free = true;
  std::vector<Violation> violations;
};

/// A pair (v, e) is violated when h(e) lies in the closed range spanned by the
/// heights of v's edges. Vertices without edges impose nothing.
VerifyReport verify_collision_free(const Graph& g, std::span<const CollisionPair> pairs,
                                   const HeightAssignment& h);

/// Breaks ties so all heights differ, keeping every strict order relation.
/// The result is min(h) + rank, ties ranked by canonical edge order.
HeightAssignment split_layers(const Graph& g, std::span<const CollisionPair> pairs, const HeightAssignment& h);

struct ExistenceResult {
  bool exists = false;
  std::optional<HeightAssignment> witness;
  std::size_t branches = 0;  // search nodes visited
};

/// Exact decision: each pair puts its edge strictly below or strictly above
/// every edge at the colliding vertex; a choice for all pairs is feasible iff
/// the resulting order constraints are acyclic.
ExistenceResult exists_arrangement(const Graph& g, std::span<const CollisionPair> pairs);

/// Closed-form Dixon-1 heights for the canonical edge order of
/// families::dixon1: h(q0 p_i) = i + 1, h(q_j p_i) = -(j-1)(m+1) - i for j > 0.
HeightAssignment dixon1_heights(std::size_t m, std::size_t n);

}  // namespace lmodel

#endif  // LMODEL_PLAN_HPP
