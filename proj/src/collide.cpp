#include "lmodel/collide.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace lmodel {

void DetectionConfig::validate() const {
  if (samples < 16) {
    throw Error(ErrorKind::Precondition, "detection needs at least 16 samples");
  }
  if (!(refine_tol > 0.0) || !(refine_tol < collide_eps)) {
    throw Error(ErrorKind::Precondition, "need 0 < refine-tol < collide-eps");
  }
}

namespace {

double slack(Point p, Point a, Point b) { return distance(p, a) + distance(p, b) - distance(a, b); }

double sample_time(const Interval& dom, std::size_t k, std::size_t samples) {
  if (k + 1 == samples) {
    return dom.hi;
  }
  return dom.lo + (dom.hi - dom.lo) * static_cast<double>(k) / static_cast<double>(samples - 1);
}

// Positions of every vertex at every sample time, evaluated once and shared by
// all pairs. A vertex whose motion fails anywhere keeps the error message.
struct SampleTable {
  std::vector<std::vector<Point>> at;  // [vertex][sample]
  std::vector<std::optional<std::string>> failure;

  SampleTable(const MovingGraph& g, std::size_t samples)
      : at(g.graph().vertex_count(), std::vector<Point>(samples)), failure(g.graph().vertex_count()) {
    for (VertexId v = 0; v < at.size(); ++v) {
      try {
        for (std::size_t k = 0; k < samples; ++k) {
          at[v][k] = g.position(v, sample_time(g.domain(), k, samples));
        }
      } catch (const DomainError& err) {
        failure[v] = err.what();
      }
    }
  }
};

PairProbe probe(const MovingGraph& g, VertexId v, EdgeId e, const DetectionConfig& cfg,
                const SampleTable* table) {
  const Edge edge = g.graph().edge(e);
  const std::size_t n = cfg.samples;
  const Interval dom = g.domain();

  std::vector<double> sampled(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (table != nullptr) {
      sampled[k] = slack(table->at[v][k], table->at[edge.u][k], table->at[edge.v][k]);
    } else {
      sampled[k] = gap(g, v, e, sample_time(dom, k, n));
    }
  }

  auto f = [&](double t) { return gap(g, v, e, t); };
  PairProbe out{v, e, false, std::numeric_limits<double>::infinity(), dom.lo};
  for (std::size_t k = 0; k < n; ++k) {
    const bool left_ok = k == 0 || sampled[k] < sampled[k - 1];
    const bool right_ok = k + 1 == n || sampled[k] <= sampled[k + 1];
    if (!left_ok || !right_ok) {
      continue;
    }
    if (sampled[k] < out.min_gap) {
      out.min_gap = sampled[k];
      out.witness_t = sample_time(dom, k, n);
    }
    const double lo = sample_time(dom, k == 0 ? 0 : k - 1, n);
    const double hi = sample_time(dom, k + 1 == n ? k : k + 1, n);
    const ScalarMinimum m = golden_section_minimize(f, lo, hi, cfg.refine_tol);
    if (m.fx < out.min_gap) {
      out.min_gap = m.fx;
      out.witness_t = m.x;
    }
  }
  out.collides = out.min_gap < cfg.collide_eps;
  return out;
}

}  // namespace

double gap(const MovingGraph& g, VertexId v, EdgeId e, double t) {
  const Edge edge = g.graph().edge(e);
  if (edge.contains(v)) {
    throw Error(ErrorKind::Precondition, "vertex '" + g.graph().label(v) + "' is an endpoint of edge " +
                                             g.graph().edge_name(e));
  }
  return slack(g.position(v, t), g.position(edge.u, t), g.position(edge.v, t));
}

PairProbe detect_pair(const MovingGraph& g, VertexId v, EdgeId e, const DetectionConfig& cfg) {
  cfg.validate();
  if (g.graph().edge(e).contains(v)) {
    throw Error(ErrorKind::Precondition, "vertex '" + g.graph().label(v) + "' is an endpoint of edge " +
                                             g.graph().edge_name(e));
  }
  return probe(g, v, e, cfg, nullptr);
}

UndecidableError::UndecidableError(std::vector<std::string> details)
    : Error(ErrorKind::Domain,
            std::to_string(details.size()) + " pair(s) undecidable" +
                (details.empty() ? std::string() : ": " + details.front())),
      details_(std::move(details)) {}

DetectionResult detect_all(const MovingGraph& g, const DetectionConfig& cfg) {
  cfg.validate();
  const Graph& graph = g.graph();

  std::vector<std::pair<VertexId, EdgeId>> work;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      if (!graph.edge(e).contains(v)) {
        work.emplace_back(v, e);
      }
    }
  }

  const SampleTable table(g, cfg.samples);
  std::vector<PairProbe> probes(work.size());
  std::vector<std::optional<std::string>> errors(work.size());

  auto run = [&](std::size_t i) {
    const auto [v, e] = work[i];
    const Edge edge = graph.edge(e);
    for (VertexId w : {v, edge.u, edge.v}) {
      if (table.failure[w]) {
        errors[i] = *table.failure[w];
        return;
      }
    }
    try {
      probes[i] = probe(g, v, e, cfg, &table);
    } catch (const DomainError& err) {
      errors[i] = err.what();
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, work.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) {
      run(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
          run(i);
        }
      });
    }
  }

  std::vector<std::string> undecidable;
  DetectionResult result;
  result.smallest_clear_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (errors[i]) {
      undecidable.push_back("(" + graph.label(work[i].first) + ", " + graph.edge_name(work[i].second) +
                            "): " + *errors[i]);
      continue;
    }
    const PairProbe& p = probes[i];
    if (p.collides) {
      result.pairs.push_back({p.vertex, p.edge, p.witness_t, p.min_gap});
      continue;
    }
    result.smallest_clear_gap = std::min(result.smallest_clear_gap, p.min_gap);
    if (p.min_gap <= 10.0 * cfg.collide_eps) {
      result.ambiguous.push_back(p);
    }
    if (cfg.report_margin) {
      result.margins.push_back(p);
    }
  }
  if (!undecidable.empty()) {
    throw UndecidableError(std::move(undecidable));
  }
  return result;
}

}  // namespace lmodel
