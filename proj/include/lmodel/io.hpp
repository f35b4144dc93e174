#ifndef LMODEL_IO_HPP
#define LMODEL_IO_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmodel/collide.hpp"
#include "lmodel/graph.hpp"
#include "lmodel/plan.hpp"

namespace lmodel::io {

// Graph file:
//   {"domain": [lo, hi], "vertices": [{"id", "x", "y"}, ...], "edges": [[u, v], ...]}
MovingGraph load_graph(std::string_view json_text);
std::string save_graph(const MovingGraph& g);

/// Stable identifier for a graph, used when the pairs file has no path.
std::string graph_fingerprint(const MovingGraph& g);

// Pairs file:
//   {"graph": ref, "pairs": [{"vertex", "edge": [u, v], "t", "gap"}, ...]}
// with optional "margins" and "ambiguous" lists of the same shape.
std::string save_pairs(const Graph& g, const DetectionResult& r, std::string_view graph_ref);
std::vector<CollisionPair> load_pairs(const Graph& g, std::string_view json_text);
/// The "graph" member of a pairs file.
std::string pairs_graph_ref(std::string_view json_text);

// Heights file:
//   {"heights": {"u-v": h, ...}, "partition": {"upper": [...], "lower": [...]}}
std::string save_heights(const Graph& g, const HeightAssignment& h, const std::optional<Partition>& p);
HeightAssignment load_heights(const Graph& g, std::string_view json_text);
std::optional<Partition> load_partition(const Graph& g, std::string_view json_text);

std::string length_report_json(const Graph& g, const LengthReport& r);
std::string verify_report_json(const Graph& g, std::span<const CollisionPair> pairs, const VerifyReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace lmodel::io

#endif  // LMODEL_IO_HPP
