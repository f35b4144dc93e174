#include <algorithm>
#include <set>

#include "doctest.h"
#include "lmodel/cgraph.hpp"
#include "lmodel/collide.hpp"
#include "lmodel/families.hpp"
#include "lmodel/plan.hpp"
#include "support.hpp"

using namespace lmodel;
using testsupport::named;

namespace {

struct Example1 {
  MovingGraph g = families::dixon1(testsupport::example1_params());
  std::vector<CollisionPair> pairs = testsupport::pairs_from(
      g.graph(), {named("p0", "q0", "p1"), named("p0", "q0", "p2"), named("p0", "q0", "p3"),
                  named("p1", "q0", "p3"), named("q0", "q1", "p0"), named("q0", "q2", "p0")});
  CollisionGraph c = build_collision_graph(g.graph(), pairs);
  Partition reference{{0, 1, 2, 3}, {4, 5, 6, 7, 8, 9, 10, 11}};
};

// Example 2's published table, indexed by canonical edge id (q-major).
HeightAssignment example2_table() {
  HeightAssignment h;
  const long long values[] = {1, 2, 3, 4, 0, -1, -2, -3, -4, -5, -6, -7};
  for (EdgeId e = 0; e < 12; ++e) {
    h[e] = values[e];
  }
  return h;
}

CollisionGraph chain(std::size_t n) {
  std::vector<EdgeId> nodes;
  std::vector<Arc> arcs;
  for (EdgeId i = 0; i < n; ++i) {
    nodes.push_back(i);
    if (i > 0) {
      arcs.emplace_back(i - 1, i);
    }
  }
  return CollisionGraph(nodes, arcs);
}

bool injective(const HeightAssignment& h) {
  std::set<long long> seen;
  for (const auto& [e, v] : h) {
    seen.insert(v);
  }
  return seen.size() == h.size();
}

}  // namespace

TEST_SUITE("plan") {
  TEST_CASE("minimal nodes") {
    Example1 e;
    CHECK(minimal_nodes(induced(e.c, e.reference.upper)) == std::vector<EdgeId>{0});
    CHECK(minimal_nodes(CollisionGraph({4, 5, 6}, {})) == std::vector<EdgeId>{4, 5, 6});
    CHECK(minimal_nodes(CollisionGraph({0, 1}, {{0, 1}, {1, 0}})).empty());
  }

  TEST_CASE("layered sweeps") {
    Example1 e;
    const auto up = heights_up(induced(e.c, e.reference.upper));
    CHECK(up == HeightAssignment{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const auto down = heights_down(induced(e.c, e.reference.lower));
    CHECK(down == HeightAssignment{{4, 0}, {5, -1}, {6, -2}, {7, -3}, {8, -4}, {9, -5}, {10, -6}, {11, -7}});
    CHECK(heights_up(chain(3)) == HeightAssignment{{0, 1}, {1, 2}, {2, 3}});
    CHECK(heights_down(chain(2)) == HeightAssignment{{0, 0}, {1, -1}});
    CHECK(heights_down(CollisionGraph({9}, {})) == HeightAssignment{{9, 0}});
    const CollisionGraph two({0, 1}, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(heights_up(two), Error);
    CHECK_THROWS_AS(heights_down(two), Error);
  }

  TEST_CASE("sweeps are monotone and injective on random DAGs") {
    testsupport::Rng rng(4);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = rng.index(1, 10);
      std::vector<EdgeId> nodes(n);
      std::iota(nodes.begin(), nodes.end(), 0);
      std::vector<EdgeId> perm = nodes;
      std::shuffle(perm.begin(), perm.end(), rng.engine());
      std::vector<Arc> arcs;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (rng.coin(0.3)) {
            arcs.emplace_back(perm[a], perm[b]);
          }
        }
      }
      const CollisionGraph c(nodes, arcs);
      const auto up = heights_up(c);
      const auto down = heights_down(c);
      CHECK(injective(up));
      CHECK(injective(down));
      for (const auto& [u, v] : c.arcs()) {
        CHECK(up.at(u) < up.at(v));
        CHECK(down.at(u) > down.at(v));
      }
      CHECK(std::min_element(up.begin(), up.end(), [](auto& a, auto& b) { return a.second < b.second; })->second == 1);
      CHECK(std::max_element(down.begin(), down.end(), [](auto& a, auto& b) { return a.second < b.second; })->second == 0);
    }
  }

  TEST_CASE("Example 2 table from the reference partition") {
    Example1 e;
    const auto h = assign_heights(e.g.graph(), e.pairs, e.reference);
    CHECK(h == example2_table());
    const auto r = verify_collision_free(e.g.graph(), e.pairs, h);
    CHECK(r.collision_free);
    CHECK(r.violations.empty());
  }

  TEST_CASE("reference partition is acyclic on both sides and a found partition verifies") {
    Example1 e;
    CHECK(is_acyclic(induced(e.c, e.reference.upper)));
    CHECK(is_acyclic(induced(e.c, e.reference.lower)));
    const auto d = decide_partition(e.c);
    REQUIRE(d.found());
    CHECK(is_acyclic(induced(e.c, d.partition->upper)));
    CHECK(is_acyclic(induced(e.c, d.partition->lower)));
    const auto h = assign_heights(e.g.graph(), e.pairs, *d.partition);
    CHECK(verify_collision_free(e.g.graph(), e.pairs, h).collision_free);
  }

  TEST_CASE("changing one height produces the expected violation") {
    Example1 e;
    auto h = example2_table();
    h[3] = 0;  // q0-p3
    const auto r = verify_collision_free(e.g.graph(), e.pairs, h);
    CHECK_FALSE(r.collision_free);
    bool found = false;
    for (const auto& v : r.violations) {
      const auto& p = e.pairs[v.pair_index];
      if (e.g.graph().label(p.vertex) == "p1" && p.edge == 3) {
        found = true;
        CHECK(v.lo == -5);
        CHECK(v.hi == 2);
        CHECK(v.offending == 0);
      }
      CHECK(v.lo <= v.offending);
      CHECK(v.offending <= v.hi);
    }
    CHECK(found);
  }

  TEST_CASE("range boundary counts as a violation") {
    Graph g({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    std::vector<CollisionPair> pairs{{0, 1, 0, 0}};
    CHECK_FALSE(verify_collision_free(g, pairs, {{0, 5}, {1, 5}}).collision_free);
    CHECK(verify_collision_free(g, pairs, {{0, 5}, {1, 6}}).collision_free);
    CHECK_THROWS_AS(verify_collision_free(g, pairs, {{0, 5}}), Error);
  }

  TEST_CASE("isolated colliding vertex imposes nothing") {
    Graph g({"a", "b", "z"}, {{"a", "b"}});
    std::vector<CollisionPair> pairs{{2, 0, 0, 0}};
    CHECK(verify_collision_free(g, pairs, {{0, 0}}).collision_free);
    CHECK(exists_arrangement(g, pairs).exists);
  }

  TEST_CASE("S2: reference table verifies, partition test says no, an arrangement exists") {
    const MovingGraph g = families::s2();
    const auto pairs = testsupport::pairs_from(g.graph(), testsupport::s2_listed_pairs());
    CHECK(verify_collision_free(g.graph(), pairs, testsupport::s2_reference_heights(g.graph())).collision_free);
    const auto d = decide_partition(build_collision_graph(g.graph(), pairs));
    CHECK(d.outcome == PartitionDecision::Outcome::NotBipartite);
    CHECK(d.odd_cycle.size() == 3);
    const auto ex = exists_arrangement(g.graph(), pairs);
    REQUIRE(ex.exists);
    CHECK(testsupport::collision_free(g.graph(), pairs, *ex.witness));
  }

  TEST_CASE("Dixon-2: partition test and exact search both say no") {
    const MovingGraph g = families::dixon2({});
    const auto pairs = testsupport::pairs_from(g.graph(), testsupport::dixon2_partner_pairs());
    CHECK_FALSE(decide_partition(build_collision_graph(g.graph(), pairs)).found());
    const auto ex = exists_arrangement(g.graph(), pairs);
    CHECK_FALSE(ex.exists);
    CHECK_FALSE(ex.witness.has_value());
  }

  TEST_CASE("empty pair set") {
    const MovingGraph g = families::s2();
    const std::vector<CollisionPair> none;
    const auto ex = exists_arrangement(g.graph(), none);
    CHECK(ex.exists);
    HeightAssignment zeros;
    for (EdgeId e = 0; e < 13; ++e) {
      zeros[e] = 0;
    }
    CHECK(verify_collision_free(g.graph(), none, zeros).collision_free);
    const auto split = split_layers(g.graph(), none, zeros);
    for (EdgeId e = 0; e < 13; ++e) {
      CHECK(split.at(e) == static_cast<long long>(e));
    }
    Partition all_upper;
    for (EdgeId e = 0; e < 13; ++e) {
      all_upper.upper.push_back(e);
    }
    CHECK(verify_collision_free(g.graph(), none, assign_heights(g.graph(), none, all_upper)).collision_free);
  }

  TEST_CASE("split_layers keeps order and verdict") {
    const MovingGraph g = families::s2();
    const auto pairs = testsupport::pairs_from(g.graph(), testsupport::s2_listed_pairs());
    auto h = testsupport::s2_reference_heights(g.graph());
    // Lifting v6-v7 onto v1-v4's height keeps every range intact.
    const EdgeId a = testsupport::edge_of(g.graph(), "v6", "v7");
    const EdgeId b = testsupport::edge_of(g.graph(), "v1", "v4");
    h[a] = h[b];
    REQUIRE(verify_collision_free(g.graph(), pairs, h).collision_free);
    const auto s = split_layers(g.graph(), pairs, h);
    CHECK(injective(s));
    CHECK(verify_collision_free(g.graph(), pairs, s).collision_free);
    for (EdgeId x = 0; x < 13; ++x) {
      for (EdgeId y = 0; y < 13; ++y) {
        if (h.at(x) < h.at(y)) {
          CHECK(s.at(x) < s.at(y));
        }
      }
    }
    // Injective input comes back as consecutive integers in the same order.
    const auto reference = testsupport::s2_reference_heights(g.graph());
    CHECK(split_layers(g.graph(), pairs, reference) == reference);
    auto broken = reference;
    broken[testsupport::edge_of(g.graph(), "v2", "v3")] = 2;
    CHECK_THROWS_AS(split_layers(g.graph(), pairs, broken), Error);
  }

  TEST_CASE("closed-form Dixon-1 heights") {
    const auto h43 = dixon1_heights(4, 3);
    CHECK(h43.at(0) == 1);
    CHECK(h43.at(3) == 4);
    CHECK(h43.at(4) == 0);
    CHECK(h43.at(7) == -3);
    CHECK(h43.at(8) == -5);
    CHECK(h43.at(11) == -8);
    CHECK(dixon1_heights(1, 1) == HeightAssignment{{0, 1}});
    CHECK(dixon1_heights(2, 2) == HeightAssignment{{0, 1}, {1, 2}, {2, 0}, {3, -1}});
  }

  TEST_CASE("closed form verifies for same-sign and mixed-sign instances") {
    testsupport::Rng rng(31);
    for (int i = 0; i < 20; ++i) {
      const std::size_t m = rng.index(1, 5);
      const std::size_t n = rng.index(1, 5);
      auto params = testsupport::random_dixon1(rng, m, n);
      if (i % 2 == 0) {
        std::fill(params.sx.begin(), params.sx.end(), 1);
        std::fill(params.sy.begin(), params.sy.end(), 1);
      }
      const MovingGraph g = families::dixon1(params);
      const auto pairs = testsupport::pairs_from(g.graph(), testsupport::dixon1_rule_pairs(params));
      CHECK(verify_collision_free(g.graph(), pairs, dixon1_heights(m, n)).collision_free);
      Partition p;
      for (EdgeId e = 0; e < g.graph().edge_count(); ++e) {
        (e < m ? p.upper : p.lower).push_back(e);
      }
      CHECK(verify_collision_free(g.graph(), pairs, assign_heights(g.graph(), pairs, p)).collision_free);
    }
  }

  TEST_CASE("partition errors") {
    Example1 e;
    CHECK_THROWS_AS(assign_heights(e.g.graph(), e.pairs, Partition{{0, 1}, {2}}), Error);
    // Lower part containing a two-cycle.
    Partition bad{{}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};
    CHECK_THROWS_AS(assign_heights(e.g.graph(), e.pairs, bad), Error);
  }

  TEST_CASE("free-node cap") {
    std::vector<EdgeId> nodes(30);
    std::iota(nodes.begin(), nodes.end(), 0);
    const CollisionGraph c(nodes, {});
    try {
      decide_partition(c);
      FAIL("expected the cap to trigger");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Limit);
    }
    CHECK(decide_partition(c, {30}).found());
  }

  TEST_CASE("exact search agrees with brute force on small synthetic instances") {
    testsupport::Rng rng(123);
    for (int i = 0; i < 150; ++i) {
      const auto s = testsupport::random_synthetic(rng, 7);
      const auto ex = exists_arrangement(s.graph, s.pairs);
      CHECK(ex.exists == testsupport::brute_force_exists(s.graph, s.pairs));
      if (ex.exists) {
        CHECK(testsupport::collision_free(s.graph, s.pairs, *ex.witness));
      }
      const auto d = decide_partition(build_collision_graph(s.graph, s.pairs));
      if (d.found()) {
        CHECK(ex.exists);
        CHECK(testsupport::collision_free(s.graph, s.pairs, assign_heights(s.graph, s.pairs, *d.partition)));
      }
    }
  }
}
