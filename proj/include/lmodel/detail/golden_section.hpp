#ifndef LMODEL_DETAIL_GOLDEN_SECTION_HPP
#define LMODEL_DETAIL_GOLDEN_SECTION_HPP

#include <cmath>

namespace lmodel {

template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  ScalarMinimum best{lo, f(lo)};
  auto consider = [&best](double x, double fx) {
    if (fx < best.fx) {
      best = {x, fx};
    }
  };
  consider(hi, f(hi));

  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);

  // Each pass shrinks the bracket by 1/phi; the cap only guards against a
  // tolerance below the floating-point spacing of the bracket.
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = f(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

}  // namespace lmodel

#endif  // LMODEL_DETAIL_GOLDEN_SECTION_HPP
