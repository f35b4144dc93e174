#include "lmodel/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lmodel::io {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorKind::Schema, message); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& err) {
    schema(std::string("invalid JSON: ") + err.what());
  }
}

const Json& member(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    schema(std::string("missing member '") + key + "'");
  }
  return obj.at(key);
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) {
    schema(std::string(what) + " must be a string");
  }
  return j.get<std::string>();
}

double number_of(const Json& j, const char* what) {
  if (!j.is_number()) {
    schema(std::string(what) + " must be a number");
  }
  return j.get<double>();
}

Expr expression_of(const Json& j, const std::string& where) {
  const std::string text = string_of(j, where.c_str());
  try {
    return parse_expression(text);
  } catch (const SyntaxError& err) {
    schema(where + ": " + err.what());
  }
}

EdgeId edge_of(const Graph& g, const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    schema("edge must be a two-element array");
  }
  const std::string a = string_of(j[0], "edge endpoint");
  const std::string b = string_of(j[1], "edge endpoint");
  auto e = g.find_edge(a, b);
  if (!e) {
    schema("unknown edge [" + a + ", " + b + "]");
  }
  return *e;
}

Json edge_json(const Graph& g, EdgeId e) {
  return Json::array({g.label(g.edge(e).u), g.label(g.edge(e).v)});
}

Json probe_json(const Graph& g, VertexId v, EdgeId e, double t, double gap) {
  Json j;
  j["vertex"] = g.label(v);
  j["edge"] = edge_json(g, e);
  j["t"] = t;
  j["gap"] = gap;
  return j;
}

Json edge_names(const Graph& g, const std::vector<EdgeId>& edges) {
  Json out = Json::array();
  for (EdgeId e : edges) {
    out.push_back(g.edge_name(e));
  }
  return out;
}

std::vector<EdgeId> edges_from_names(const Graph& g, const Json& j) {
  if (!j.is_array()) {
    schema("partition parts must be arrays of edge names");
  }
  std::vector<EdgeId> out;
  for (const Json& name : j) {
    const std::string s = string_of(name, "edge name");
    auto e = g.find_edge_by_name(s);
    if (!e) {
      schema("unknown edge '" + s + "'");
    }
    out.push_back(*e);
  }
  return out;
}

}  // namespace

MovingGraph load_graph(std::string_view json_text) {
  const Json doc = parse_json(json_text);
  if (!doc.is_object()) {
    schema("graph file must be a JSON object");
  }
  Interval domain;
  if (doc.contains("domain")) {
    const Json& d = doc.at("domain");
    if (!d.is_array() || d.size() != 2) {
      schema("domain must be [lo, hi]");
    }
    domain = {number_of(d[0], "domain bound"), number_of(d[1], "domain bound")};
  }

  const Json& verts = member(doc, "vertices");
  if (!verts.is_array()) {
    schema("vertices must be an array");
  }
  std::vector<std::string> labels;
  std::vector<Motion> motions;
  for (const Json& v : verts) {
    const std::string id = string_of(member(v, "id"), "vertex id");
    labels.push_back(id);
    motions.push_back({expression_of(member(v, "x"), "vertex '" + id + "' x"),
                       expression_of(member(v, "y"), "vertex '" + id + "' y")});
  }

  const Json& edges = member(doc, "edges");
  if (!edges.is_array()) {
    schema("edges must be an array");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2) {
      schema("edge must be a two-element array");
    }
    pairs.emplace_back(string_of(e[0], "edge endpoint"), string_of(e[1], "edge endpoint"));
  }
  return MovingGraph(Graph(std::move(labels), pairs), std::move(motions), domain);
}

std::string save_graph(const MovingGraph& g) {
  Json doc;
  doc["domain"] = Json::array({g.domain().lo, g.domain().hi});
  doc["vertices"] = Json::array();
  for (VertexId v = 0; v < g.graph().vertex_count(); ++v) {
    Json jv;
    jv["id"] = g.graph().label(v);
    jv["x"] = print_expression(g.motion(v).x);
    jv["y"] = print_expression(g.motion(v).y);
    doc["vertices"].push_back(std::move(jv));
  }
  doc["edges"] = Json::array();
  for (EdgeId e = 0; e < g.graph().edge_count(); ++e) {
    doc["edges"].push_back(edge_json(g.graph(), e));
  }
  return doc.dump(2) + "\n";
}

std::string graph_fingerprint(const MovingGraph& g) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : save_graph(g)) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string save_pairs(const Graph& g, const DetectionResult& r, std::string_view graph_ref) {
  Json doc;
  doc["graph"] = std::string(graph_ref);
  doc["pairs"] = Json::array();
  for (const CollisionPair& p : r.pairs) {
    doc["pairs"].push_back(probe_json(g, p.vertex, p.edge, p.witness_t, p.min_gap));
  }
  if (!r.ambiguous.empty()) {
    doc["ambiguous"] = Json::array();
    for (const PairProbe& p : r.ambiguous) {
      doc["ambiguous"].push_back(probe_json(g, p.vertex, p.edge, p.witness_t, p.min_gap));
    }
  }
  if (!r.margins.empty()) {
    doc["margins"] = Json::array();
    for (const PairProbe& p : r.margins) {
      doc["margins"].push_back(probe_json(g, p.vertex, p.edge, p.witness_t, p.min_gap));
    }
  }
  return doc.dump(2) + "\n";
}

std::vector<CollisionPair> load_pairs(const Graph& g, std::string_view json_text) {
  const Json doc = parse_json(json_text);
  const Json& list = member(doc, "pairs");
  if (!list.is_array()) {
    schema("pairs must be an array");
  }
  std::vector<CollisionPair> out;
  for (const Json& j : list) {
    const std::string label = string_of(member(j, "vertex"), "pair vertex");
    auto v = g.find_vertex(label);
    if (!v) {
      schema("unknown vertex '" + label + "'");
    }
    const EdgeId e = edge_of(g, member(j, "edge"));
    if (g.edge(e).contains(*v)) {
      schema("pair vertex '" + label + "' is an endpoint of edge " + g.edge_name(e));
    }
    CollisionPair p{*v, e, 0.0, 0.0};
    if (j.contains("t")) {
      p.witness_t = number_of(j.at("t"), "pair t");
    }
    if (j.contains("gap")) {
      p.min_gap = number_of(j.at("gap"), "pair gap");
    }
    out.push_back(p);
  }
  return out;
}

std::string pairs_graph_ref(std::string_view json_text) {
  const Json doc = parse_json(json_text);
  return string_of(member(doc, "graph"), "graph reference");
}

std::string save_heights(const Graph& g, const HeightAssignment& h, const std::optional<Partition>& p) {
  Json doc;
  doc["heights"] = Json::object();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (h.contains(e)) {
      doc["heights"][g.edge_name(e)] = h.at(e);
    }
  }
  if (p) {
    doc["partition"]["upper"] = edge_names(g, p->upper);
    doc["partition"]["lower"] = edge_names(g, p->lower);
  }
  return doc.dump(2) + "\n";
}

HeightAssignment load_heights(const Graph& g, std::string_view json_text) {
  const Json doc = parse_json(json_text);
  const Json& obj = member(doc, "heights");
  if (!obj.is_object()) {
    schema("heights must be an object");
  }
  HeightAssignment h;
  for (const auto& [name, value] : obj.items()) {
    auto e = g.find_edge_by_name(name);
    if (!e) {
      schema("unknown edge '" + name + "'");
    }
    if (!value.is_number_integer()) {
      schema("height of '" + name + "' must be an integer");
    }
    if (!h.emplace(*e, value.get<long long>()).second) {
      schema("edge '" + name + "' has two heights");
    }
  }
  return h;
}

std::optional<Partition> load_partition(const Graph& g, std::string_view json_text) {
  const Json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("partition")) {
    return std::nullopt;
  }
  const Json& part = doc.at("partition");
  Partition p{edges_from_names(g, member(part, "upper")), edges_from_names(g, member(part, "lower"))};
  return p;
}

std::string length_report_json(const Graph& g, const LengthReport& r) {
  Json doc;
  doc["pass"] = r.pass;
  doc["tolerance"] = r.tolerance;
  doc["edges"] = Json::array();
  for (EdgeId e = 0; e < r.edges.size(); ++e) {
    Json je;
    je["edge"] = edge_json(g, e);
    je["mean"] = r.edges[e].mean;
    je["max_deviation"] = r.edges[e].max_deviation;
    doc["edges"].push_back(std::move(je));
  }
  doc["isolated"] = Json::array();
  for (VertexId v : r.isolated) {
    doc["isolated"].push_back(g.label(v));
  }
  return doc.dump(2) + "\n";
}

std::string verify_report_json(const Graph& g, std::span<const CollisionPair> pairs, const VerifyReport& r) {
  Json doc;
  doc["collision_free"] = r.collision_free;
  doc["violations"] = Json::array();
  for (const Violation& v : r.violations) {
    const CollisionPair& p = pairs[v.pair_index];
    Json jv;
    jv["vertex"] = g.label(p.vertex);
    jv["edge"] = edge_json(g, p.edge);
    jv["range"] = Json::array({v.lo, v.hi});
    jv["height"] = v.offending;
    doc["violations"].push_back(std::move(jv));
  }
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  }
  out << contents;
  if (!out) {
    throw Error(ErrorKind::Io, "write to '" + path + "' failed");
  }
}

}  // namespace lmodel::io
