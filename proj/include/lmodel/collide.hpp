#ifndef LMODEL_COLLIDE_HPP
#define LMODEL_COLLIDE_HPP

#include <string>
#include <vector>

#include "lmodel/graph.hpp"

namespace lmodel {

struct DetectionConfig {
  std::size_t samples = 2048;
  double refine_tol = 1e-12;  // final golden-section bracket width
  double collide_eps = 1e-7;  // refined minima below this are collisions
  bool report_margin = false; // keep the minimum of every non-colliding pair
  unsigned threads = 0;       // 0 picks hardware concurrency

  void validate() const;
};

/// A vertex meeting the closed segment of a non-incident edge.
struct CollisionPair {
  VertexId vertex = 0;
  EdgeId edge = 0;
  double witness_t = 0.0;
  double min_gap = 0.0;

  friend bool operator==(const CollisionPair&, const CollisionPair&) = default;
};

/// Result of minimising the gap of one (vertex, edge) combination.
struct PairProbe {
  VertexId vertex = 0;
  EdgeId edge = 0;
  bool collides = false;
  double min_gap = 0.0;
  double witness_t = 0.0;
};

struct DetectionResult {
  std::vector<CollisionPair> pairs;
  /// Non-colliding pairs whose minimum lies in [collide_eps, 10*collide_eps].
  std::vector<PairProbe> ambiguous;
  /// Every non-colliding pair, only filled when report_margin is set.
  std::vector<PairProbe> margins;
  /// Smallest refined minimum among non-colliding pairs (+inf if none).
  double smallest_clear_gap = 0.0;
};

/// Triangle-inequality slack |v-a| + |v-b| - |a-b| for edge e = ab.
/// Zero exactly when v lies on the closed segment ab.
double gap(const MovingGraph& g, VertexId v, EdgeId e, double t);

/// Dense sampling over the domain followed by golden-section refinement of
/// every sampled local minimum. Requires v not incident to e.
PairProbe detect_pair(const MovingGraph& g, VertexId v, EdgeId e, const DetectionConfig& cfg = {});

/// Thrown by detect_all when some pairs could not be evaluated.
class UndecidableError : public Error {
public:
  explicit UndecidableError(std::vector<std::string> details);
  const std::vector<std::string>& details() const noexcept { return details_; }

private:
  std::vector<std::string> details_;
};

/// All collision pairs in (vertex order x edge order). Pairs are evaluated on
/// a worker pool; output is independent of scheduling.
DetectionResult detect_all(const MovingGraph& g, const DetectionConfig& cfg = {});

/// Minimises f over [lo, hi] until the bracket is narrower than `tol`.
/// Returns the abscissa of the best point evaluated.
struct ScalarMinimum {
  double x;
  double fx;
};
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tol);

}  // namespace lmodel

#include "lmodel/detail/golden_section.hpp"

#endif  // LMODEL_COLLIDE_HPP
