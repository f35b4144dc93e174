#ifndef LMODEL_FAMILIES_HPP
#define LMODEL_FAMILIES_HPP

#include <vector>

#include "lmodel/graph.hpp"

namespace lmodel::families {

/// Dixon-1 motion of K_{m,n}. Vertices p0..p_{m-1} slide on the x axis and
/// q0..q_{n-1} on the y axis:
///   p0 = (sin t, 0),  p_i = (sx_i * sqrt(a_i + sin^2 t), 0)
///   q0 = (0, cos t),  q_j = (0, sy_j * sqrt(b_j + cos^2 t))
/// `a`, `b`, `sx`, `sy` hold the entries for i, j >= 1 (lengths m-1, n-1).
struct Dixon1Params {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<int> sx;
  std::vector<int> sy;

  std::size_t m() const noexcept { return a.size() + 1; }
  std::size_t n() const noexcept { return b.size() + 1; }
};

/// Dixon-2 motion of K_{4,4}. `c` is implied by the other three.
struct Dixon2Params {
  double a = 1.0;
  double b = 2.0;
  double d = 3.0;

  double c() const;
};

struct S2Params {
  double a = 1.0;
  double b = 11.0 / 5.0;
  double c = 3.0 / 2.0;
};

/// Edges are (q0,p0),(q0,p1),...,(q_{n-1},p_{m-1}); edge index j*m + i.
MovingGraph dixon1(const Dixon1Params& p);

/// Vertices "1".."8"; edges (1,5),(1,6),...,(4,8).
MovingGraph dixon2(const Dixon2Params& p);

/// Vertices v1..v8 with the thirteen-edge list
/// v1v2 v1v4 v1v5 v8v2 v8v4 v8v5 v3v2 v3v4 v3v5 v1v7 v7v6 v5v6 v4v6.
MovingGraph s2(const S2Params& p = {});

}  // namespace lmodel::families

#endif  // LMODEL_FAMILIES_HPP
