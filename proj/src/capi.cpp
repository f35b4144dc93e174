#include "lmodel/lmodel.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "lmodel/cgraph.hpp"
#include "lmodel/collide.hpp"
#include "lmodel/families.hpp"
#include "lmodel/graph.hpp"
#include "lmodel/io.hpp"
#include "lmodel/plan.hpp"

struct lm_graph {
  std::shared_ptr<const lmodel::MovingGraph> g;
};

struct lm_pairs {
  std::shared_ptr<const lmodel::MovingGraph> g;
  lmodel::DetectionResult result;
  std::vector<std::string> edge_u;  // cached endpoint labels for lm_pairs_get
  std::vector<std::string> edge_v;
};

struct lm_heights {
  std::shared_ptr<const lmodel::MovingGraph> g;
  lmodel::HeightAssignment h;
  std::optional<lmodel::Partition> partition;
};

namespace {

using lmodel::ErrorKind;
using Json = nlohmann::ordered_json;

thread_local std::string last_error;

lm_status code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax:
      return LM_ERR_SYNTAX;
    case ErrorKind::Schema:
      return LM_ERR_SCHEMA;
    case ErrorKind::Domain:
      return LM_ERR_DOMAIN;
    case ErrorKind::Parameter:
      return LM_ERR_PARAMETER;
    case ErrorKind::Precondition:
      return LM_ERR_PRECONDITION;
    case ErrorKind::Limit:
      return LM_ERR_LIMIT;
    case ErrorKind::Io:
      return LM_ERR_IO;
  }
  return LM_ERR_INTERNAL;
}

// Runs `body`, mapping exceptions onto status codes.
template <typename F>
lm_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const lmodel::Error& err) {
    last_error = err.what();
    return code_for(err.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LM_ERR_INTERNAL;
  } catch (const std::exception& err) {
    last_error = err.what();
    return LM_ERR_INTERNAL;
  }
}

lm_status bad_argument(const char* what) {
  last_error = what;
  return LM_ERR_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out != nullptr) {
    *out = dup(s);
  }
}

lm_pairs* make_pairs(std::shared_ptr<const lmodel::MovingGraph> g, lmodel::DetectionResult r) {
  auto p = std::make_unique<lm_pairs>();
  p->g = std::move(g);
  p->result = std::move(r);
  const auto& graph = p->g->graph();
  for (const auto& pair : p->result.pairs) {
    p->edge_u.push_back(graph.label(graph.edge(pair.edge).u));
    p->edge_v.push_back(graph.label(graph.edge(pair.edge).v));
  }
  return p.release();
}

lm_graph* wrap(lmodel::MovingGraph g) {
  return new lm_graph{std::make_shared<const lmodel::MovingGraph>(std::move(g))};
}

void require_same_graph(const lm_pairs* p, const lm_heights* h) {
  if (p->g != h->g && lmodel::io::save_graph(*p->g) != lmodel::io::save_graph(*h->g)) {
    throw lmodel::Error(ErrorKind::Precondition, "pairs and heights belong to different graphs");
  }
}

Json names(const lmodel::Graph& g, const std::vector<lmodel::EdgeId>& edges) {
  Json out = Json::array();
  for (auto e : edges) {
    out.push_back(g.edge_name(e));
  }
  return out;
}

}  // namespace

extern "C" {

const char* lm_version(void) { return "1.0.0"; }

const char* lm_last_error(void) { return last_error.c_str(); }

void lm_string_free(char* s) { std::free(s); }

lm_status lm_graph_from_json(const char* text, lm_graph** out) {
  if (text == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    *out = wrap(lmodel::io::load_graph(text));
    return LM_OK;
  });
}

lm_status lm_graph_load(const char* path, lm_graph** out) {
  if (path == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    *out = wrap(lmodel::io::load_graph(lmodel::io::read_file(path)));
    return LM_OK;
  });
}

lm_status lm_graph_to_json(const lm_graph* g, char** out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    emit(out, lmodel::io::save_graph(*g->g));
    return LM_OK;
  });
}

lm_status lm_graph_fingerprint(const lm_graph* g, char** out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    emit(out, lmodel::io::graph_fingerprint(*g->g));
    return LM_OK;
  });
}

lm_status lm_graph_with_domain(const lm_graph* g, double lo, double hi, lm_graph** out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    *out = wrap(g->g->with_domain({lo, hi}));
    return LM_OK;
  });
}

void lm_graph_free(lm_graph* g) { delete g; }

size_t lm_graph_vertex_count(const lm_graph* g) { return g == nullptr ? 0 : g->g->graph().vertex_count(); }

size_t lm_graph_edge_count(const lm_graph* g) { return g == nullptr ? 0 : g->g->graph().edge_count(); }

lm_status lm_graph_position(const lm_graph* g, const char* vertex, double t, double* x, double* y) {
  if (g == nullptr || vertex == nullptr || x == nullptr || y == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const lmodel::Point p = g->g->position(vertex, t);
    *x = p.x;
    *y = p.y;
    return LM_OK;
  });
}

lm_status lm_graph_validate(const lm_graph* g, size_t samples, double tol, char** report_json) {
  if (g == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto report = lmodel::validate_edge_lengths(*g->g, samples, tol);
    emit(report_json, lmodel::io::length_report_json(g->g->graph(), report));
    return report.pass ? LM_OK : LM_NO;
  });
}

lm_status lm_graph_is_periodic(const lm_graph* g) {
  if (g == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] { return lmodel::is_periodic_on_domain(*g->g) ? LM_OK : LM_NO; });
}

lm_status lm_family_dixon1(size_t m, size_t n, const double* a, const double* b, const int* sx, const int* sy,
                           lm_graph** out) {
  if (out == nullptr || m == 0 || n == 0) {
    return bad_argument("need m, n >= 1 and an output handle");
  }
  if ((m > 1 && (a == nullptr || sx == nullptr)) || (n > 1 && (b == nullptr || sy == nullptr))) {
    return bad_argument("missing radius or sign arrays");
  }
  return guarded([&] {
    lmodel::families::Dixon1Params p;
    if (m > 1) {
      p.a.assign(a, a + (m - 1));
      p.sx.assign(sx, sx + (m - 1));
    }
    if (n > 1) {
      p.b.assign(b, b + (n - 1));
      p.sy.assign(sy, sy + (n - 1));
    }
    *out = wrap(lmodel::families::dixon1(p));
    return LM_OK;
  });
}

lm_status lm_family_dixon2(double a, double b, double d, lm_graph** out) {
  if (out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    *out = wrap(lmodel::families::dixon2({a, b, d}));
    return LM_OK;
  });
}

lm_status lm_family_s2(double a, double b, double c, lm_graph** out) {
  if (out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    *out = wrap(lmodel::families::s2({a, b, c}));
    return LM_OK;
  });
}

void lm_detect_config_default(lm_detect_config* cfg) {
  if (cfg == nullptr) {
    return;
  }
  const lmodel::DetectionConfig d;
  cfg->samples = d.samples;
  cfg->refine_tol = d.refine_tol;
  cfg->collide_eps = d.collide_eps;
  cfg->report_margin = d.report_margin ? 1 : 0;
  cfg->threads = d.threads;
}

lm_status lm_detect(const lm_graph* g, const lm_detect_config* cfg, lm_pairs** out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    lmodel::DetectionConfig c;
    if (cfg != nullptr) {
      c.samples = cfg->samples;
      c.refine_tol = cfg->refine_tol;
      c.collide_eps = cfg->collide_eps;
      c.report_margin = cfg->report_margin != 0;
      c.threads = cfg->threads;
    }
    *out = make_pairs(g->g, lmodel::detect_all(*g->g, c));
    return LM_OK;
  });
}

lm_status lm_pairs_from_json(const lm_graph* g, const char* text, lm_pairs** out) {
  if (g == nullptr || text == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    lmodel::DetectionResult r;
    r.pairs = lmodel::io::load_pairs(g->g->graph(), text);
    r.smallest_clear_gap = std::numeric_limits<double>::infinity();
    *out = make_pairs(g->g, std::move(r));
    return LM_OK;
  });
}

lm_status lm_pairs_to_json(const lm_pairs* p, const char* graph_ref, char** out) {
  if (p == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const std::string ref = graph_ref != nullptr ? graph_ref : lmodel::io::graph_fingerprint(*p->g);
    emit(out, lmodel::io::save_pairs(p->g->graph(), p->result, ref));
    return LM_OK;
  });
}

lm_status lm_pairs_graph_ref(const char* text, char** out) {
  if (text == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    emit(out, lmodel::io::pairs_graph_ref(text));
    return LM_OK;
  });
}

void lm_pairs_free(lm_pairs* p) { delete p; }

size_t lm_pairs_count(const lm_pairs* p) { return p == nullptr ? 0 : p->result.pairs.size(); }

size_t lm_pairs_ambiguous_count(const lm_pairs* p) { return p == nullptr ? 0 : p->result.ambiguous.size(); }

double lm_pairs_smallest_clear_gap(const lm_pairs* p) {
  return p == nullptr ? std::numeric_limits<double>::infinity() : p->result.smallest_clear_gap;
}

lm_status lm_pairs_get(const lm_pairs* p, size_t i, const char** vertex, const char** edge_u, const char** edge_v,
                       double* t, double* gap) {
  if (p == nullptr) {
    return bad_argument("null argument");
  }
  if (i >= p->result.pairs.size()) {
    return bad_argument("pair index out of range");
  }
  const auto& pair = p->result.pairs[i];
  if (vertex != nullptr) {
    *vertex = p->g->graph().label(pair.vertex).c_str();
  }
  if (edge_u != nullptr) {
    *edge_u = p->edge_u[i].c_str();
  }
  if (edge_v != nullptr) {
    *edge_v = p->edge_v[i].c_str();
  }
  if (t != nullptr) {
    *t = pair.witness_t;
  }
  if (gap != nullptr) {
    *gap = pair.min_gap;
  }
  return LM_OK;
}

lm_status lm_cgraph_dot(const lm_pairs* p, char** out) {
  if (p == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto& graph = p->g->graph();
    emit(out, lmodel::to_dot(graph, lmodel::build_collision_graph(graph, p->result.pairs)));
    return LM_OK;
  });
}

lm_status lm_cgraph_stats_get(const lm_pairs* p, lm_cgraph_stats* out) {
  if (p == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto c = lmodel::build_collision_graph(p->g->graph(), p->result.pairs);
    out->nodes = c.size();
    out->arcs = c.arcs().size();
    out->two_cycles = lmodel::multi_edged_subgraph(c).edges.size();
    out->acyclic = lmodel::is_acyclic(c) ? 1 : 0;
    return LM_OK;
  });
}

lm_status lm_plan(const lm_pairs* p, const char* const* upper, size_t n_upper, lm_heights** out,
                  char** report_json) {
  if (p == nullptr || out == nullptr || (upper == nullptr && n_upper != 0)) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto& graph = p->g->graph();
    Json report;
    lmodel::Partition partition;
    if (upper != nullptr) {
      std::vector<bool> is_upper(graph.edge_count(), false);
      for (size_t i = 0; i < n_upper; ++i) {
        auto e = graph.find_edge_by_name(upper[i] == nullptr ? "" : upper[i]);
        if (!e) {
          throw lmodel::Error(ErrorKind::Precondition,
                              std::string("unknown edge '") + (upper[i] ? upper[i] : "") + "' in upper part");
        }
        is_upper[*e] = true;
      }
      for (lmodel::EdgeId e = 0; e < graph.edge_count(); ++e) {
        (is_upper[e] ? partition.upper : partition.lower).push_back(e);
      }
      report["partition_source"] = "given";
    } else {
      const auto c = lmodel::build_collision_graph(graph, p->result.pairs);
      const auto decision = lmodel::decide_partition(c);
      if (!decision.found()) {
        report["outcome"] = "no";
        if (decision.outcome == lmodel::PartitionDecision::Outcome::NotBipartite) {
          report["reason"] = "multi-edged subgraph is not bipartite";
          report["odd_cycle"] = names(graph, decision.odd_cycle);
        } else {
          report["reason"] = "no bipartition with both parts acyclic";
        }
        *out = nullptr;
        emit(report_json, report.dump(2) + "\n");
        return LM_NO;
      }
      partition = *decision.partition;
      report["partition_source"] = "search";
    }
    auto h = lmodel::assign_heights(graph, p->result.pairs, partition);
    const auto verdict = lmodel::verify_collision_free(graph, p->result.pairs, h);
    report["outcome"] = "heights";
    report["collision_free"] = verdict.collision_free;
    report["partition"]["upper"] = names(graph, partition.upper);
    report["partition"]["lower"] = names(graph, partition.lower);
    *out = new lm_heights{p->g, std::move(h), partition};
    emit(report_json, report.dump(2) + "\n");
    return LM_OK;
  });
}

lm_status lm_verify(const lm_pairs* p, const lm_heights* h, char** report_json) {
  if (p == nullptr || h == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    require_same_graph(p, h);
    const auto& graph = p->g->graph();
    const auto report = lmodel::verify_collision_free(graph, p->result.pairs, h->h);
    emit(report_json, lmodel::io::verify_report_json(graph, p->result.pairs, report));
    return report.collision_free ? LM_OK : LM_NO;
  });
}

lm_status lm_exists(const lm_pairs* p, lm_heights** witness, char** report_json) {
  if (p == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto res = lmodel::exists_arrangement(p->g->graph(), p->result.pairs);
    Json report;
    report["exists"] = res.exists;
    report["search_nodes"] = res.branches;
    emit(report_json, report.dump(2) + "\n");
    if (witness != nullptr) {
      *witness = res.exists ? new lm_heights{p->g, *res.witness, std::nullopt} : nullptr;
    }
    return res.exists ? LM_OK : LM_NO;
  });
}

lm_status lm_split_layers(const lm_pairs* p, const lm_heights* h, lm_heights** out) {
  if (p == nullptr || h == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    require_same_graph(p, h);
    *out = new lm_heights{p->g, lmodel::split_layers(p->g->graph(), p->result.pairs, h->h), std::nullopt};
    return LM_OK;
  });
}

lm_status lm_heights_dixon1(const lm_graph* g, lm_heights** out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto& graph = g->g->graph();
    std::size_t m = 0;
    std::size_t n = 0;
    while (graph.find_vertex("p" + std::to_string(m))) {
      ++m;
    }
    while (graph.find_vertex("q" + std::to_string(n))) {
      ++n;
    }
    if (m == 0 || n == 0 || graph.edge_count() != m * n || graph.vertex_count() != m + n) {
      throw lmodel::Error(ErrorKind::Precondition, "graph is not a Dixon-1 graph with vertices p0.., q0..");
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        if (graph.edge_name(j * m + i) != "q" + std::to_string(j) + "-p" + std::to_string(i)) {
          throw lmodel::Error(ErrorKind::Precondition, "Dixon-1 edges are not in canonical q-major order");
        }
      }
    }
    *out = new lm_heights{g->g, lmodel::dixon1_heights(m, n), std::nullopt};
    return LM_OK;
  });
}

lm_status lm_heights_from_json(const lm_graph* g, const char* text, lm_heights** out) {
  if (g == nullptr || text == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto& graph = g->g->graph();
    *out = new lm_heights{g->g, lmodel::io::load_heights(graph, text), lmodel::io::load_partition(graph, text)};
    return LM_OK;
  });
}

lm_status lm_heights_to_json(const lm_heights* h, char** out) {
  if (h == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    emit(out, lmodel::io::save_heights(h->g->graph(), h->h, h->partition));
    return LM_OK;
  });
}

lm_status lm_heights_get(const lm_heights* h, const char* edge_name, long long* out) {
  if (h == nullptr || edge_name == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    auto e = h->g->graph().find_edge_by_name(edge_name);
    if (!e || !h->h.contains(*e)) {
      throw lmodel::Error(ErrorKind::Precondition, std::string("no height for edge '") + edge_name + "'");
    }
    *out = h->h.at(*e);
    return LM_OK;
  });
}

void lm_heights_free(lm_heights* h) { delete h; }

}  // extern "C"
