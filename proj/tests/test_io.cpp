#include "doctest.h"
#include "lmodel/families.hpp"
#include "lmodel/io.hpp"
#include "support.hpp"

using namespace lmodel;

namespace {

ErrorKind load_error(const char* text) {
  try {
    io::load_graph(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("graph loaded unexpectedly");
  return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("graph save/load round trip") {
    for (const MovingGraph& g : {families::dixon1(testsupport::example1_params()), families::dixon2({}), families::s2()}) {
      const std::string text = io::save_graph(g);
      const MovingGraph back = io::load_graph(text);
      CHECK(back.graph().labels() == g.graph().labels());
      CHECK(back.graph().edges() == g.graph().edges());
      CHECK(back.motions().size() == g.motions().size());
      for (VertexId v = 0; v < g.graph().vertex_count(); ++v) {
        CHECK(back.motion(v).x == g.motion(v).x);
        CHECK(back.motion(v).y == g.motion(v).y);
      }
      CHECK(io::save_graph(back) == text);
      CHECK(io::graph_fingerprint(back) == io::graph_fingerprint(g));
    }
  }

  TEST_CASE("Example 1 file shape") {
    const MovingGraph g = io::load_graph(io::save_graph(families::dixon1(testsupport::example1_params())));
    CHECK(g.graph().vertex_count() == 7);
    CHECK(g.graph().edge_count() == 12);
  }

  TEST_CASE("domain is optional") {
    const MovingGraph g = io::load_graph(
        R"({"vertices": [{"id": "a", "x": "0", "y": "0"}, {"id": "b", "x": "1", "y": "0"}], "edges": [["a", "b"]]})");
    CHECK(g.domain().lo == 0.0);
    CHECK(g.domain().hi == doctest::Approx(2 * 3.141592653589793));
    const MovingGraph h = io::load_graph(
        R"({"domain": [1, 2], "vertices": [{"id": "a", "x": "0", "y": "0"}], "edges": []})");
    CHECK(h.domain().lo == 1.0);
  }

  TEST_CASE("schema violations") {
    CHECK(load_error(R"({"vertices": [{"id": "p0", "x": "0", "y": "0"}], "edges": [["p0", "p0"]]})") ==
          ErrorKind::Schema);
    CHECK(load_error(R"({"vertices": [], "edges": [["a", "b"]]})") == ErrorKind::Schema);
    CHECK(load_error(R"({"vertices": [{"id": "a", "x": "0", "y": "0"}, {"id": "a", "x": "0", "y": "0"}], "edges": []})") ==
          ErrorKind::Schema);
    CHECK(load_error(R"({"vertices": [{"id": "a", "x": "sin(", "y": "0"}], "edges": []})") == ErrorKind::Schema);
    CHECK(load_error(R"({"vertices": [{"id": "a", "x": "0"}], "edges": []})") == ErrorKind::Schema);
    CHECK(load_error("[1, 2") == ErrorKind::Schema);
    CHECK(load_error(R"({"edges": []})") == ErrorKind::Schema);
  }

  TEST_CASE("pairs round trip and validation") {
    const MovingGraph g = families::dixon1(testsupport::example1_params());
    const DetectionResult r = detect_all(g);
    const std::string text = io::save_pairs(g.graph(), r, "example1.json");
    CHECK(io::pairs_graph_ref(text) == "example1.json");
    const auto back = io::load_pairs(g.graph(), text);
    CHECK(back == r.pairs);
    CHECK_THROWS_AS(io::load_pairs(g.graph(), R"({"pairs": [{"vertex": "p0", "edge": ["q0", "p0"]}]})"), Error);
    CHECK_THROWS_AS(io::load_pairs(g.graph(), R"({"pairs": [{"vertex": "zz", "edge": ["q0", "p1"]}]})"), Error);
    CHECK_THROWS_AS(io::load_pairs(g.graph(), R"({"pairs": [{"vertex": "p0", "edge": ["p1", "p2"]}]})"), Error);
    CHECK(io::load_pairs(g.graph(), R"({"pairs": [{"vertex": "p0", "edge": ["p1", "q0"]}]})").size() == 1);
  }

  TEST_CASE("heights round trip") {
    const MovingGraph g = families::dixon1(testsupport::example1_params());
    const HeightAssignment h = dixon1_heights(4, 3);
    const Partition p{{0, 1, 2, 3}, {4, 5, 6, 7, 8, 9, 10, 11}};
    const std::string text = io::save_heights(g.graph(), h, p);
    CHECK(text.find("\"q0-p0\": 1") != std::string::npos);
    CHECK(io::load_heights(g.graph(), text) == h);
    CHECK(io::load_partition(g.graph(), text) == p);
    CHECK_FALSE(io::load_partition(g.graph(), io::save_heights(g.graph(), h, std::nullopt)).has_value());
    CHECK(io::load_heights(g.graph(), R"({"heights": {"p0-q0": 4}})") == HeightAssignment{{0, 4}});
    CHECK_THROWS_AS(io::load_heights(g.graph(), R"({"heights": {"q0-p0": 1.5}})"), Error);
    CHECK_THROWS_AS(io::load_heights(g.graph(), R"({"heights": {"q0-p0": 1, "p0-q0": 2}})"), Error);
    CHECK_THROWS_AS(io::load_heights(g.graph(), R"({"heights": {"x-y": 1}})"), Error);
  }

  TEST_CASE("missing file is an io error") {
    try {
      io::read_file("/nonexistent/dir/file.json");
      FAIL("expected an io error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
    }
  }
}
