#include "lmodel/families.hpp"

#include <charconv>
#include <cmath>

namespace lmodel::families {

namespace {

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Motion motion(const std::string& x, const std::string& y) {
  return {parse_expression(x), parse_expression(y)};
}

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw Error(ErrorKind::Parameter, message);
  }
}

void check_radii(const std::vector<double>& r, const char* name) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    require(std::isfinite(r[i]) && r[i] > 0.0,
            std::string(name) + " values must be positive and finite");
    require(i == 0 || r[i - 1] < r[i], std::string(name) + " values must be strictly increasing");
  }
}

void check_signs(const std::vector<int>& s, std::size_t expected, const char* name) {
  require(s.size() == expected, std::string(name) + " must have " + std::to_string(expected) + " entries");
  for (int v : s) {
    require(v == 1 || v == -1, std::string(name) + " entries must be +1 or -1");
  }
}

std::string signed_root(int sign, const std::string& radicand) {
  std::string root = "sqrt(" + radicand + ")";
  return sign < 0 ? "-" + root : root;
}

}  // namespace

MovingGraph dixon1(const Dixon1Params& p) {
  check_radii(p.a, "a");
  check_radii(p.b, "b");
  check_signs(p.sx, p.a.size(), "sx");
  check_signs(p.sy, p.b.size(), "sy");

  const std::size_t m = p.m();
  const std::size_t n = p.n();
  std::vector<std::string> labels;
  std::vector<Motion> motions;
  labels.push_back("p0");
  motions.push_back(motion("sin(t)", "0"));
  for (std::size_t i = 1; i < m; ++i) {
    labels.push_back("p" + std::to_string(i));
    motions.push_back(motion(signed_root(p.sx[i - 1], num(p.a[i - 1]) + " + sin(t)^2"), "0"));
  }
  labels.push_back("q0");
  motions.push_back(motion("0", "cos(t)"));
  for (std::size_t j = 1; j < n; ++j) {
    labels.push_back("q" + std::to_string(j));
    motions.push_back(motion("0", signed_root(p.sy[j - 1], num(p.b[j - 1]) + " + cos(t)^2")));
  }

  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      edges.emplace_back("q" + std::to_string(j), "p" + std::to_string(i));
    }
  }
  return MovingGraph(Graph(std::move(labels), edges), std::move(motions));
}

double Dixon2Params::c() const {
  const double sq = b * b + d * d - a * a;
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

MovingGraph dixon2(const Dixon2Params& p) {
  require(std::isfinite(p.a) && std::isfinite(p.b) && std::isfinite(p.d), "parameters must be finite");
  require(p.a > 0.0, "a must be positive");
  require(p.b > p.a, "b > a is required");
  require(p.d > p.a, "d > a is required");
  require(p.c() > p.d, "derived c = sqrt(b^2 + d^2 - a^2) must exceed d");

  const std::string a = num(p.a);
  const std::string root_b = "sqrt(" + num(p.b) + "^2 - " + a + "^2*sin(t)^2)";
  const std::string root_d = "sqrt(" + num(p.d) + "^2 - " + a + "^2*cos(t)^2)";
  // (x1, y1) drives vertices 1..4, (x2, y2) drives 5..8; the others flip signs.
  const std::string x1 = "(" + a + "*cos(t) + " + root_b + ")/2";
  const std::string y1 = "(" + a + "*sin(t) + " + root_d + ")/2";
  const std::string x2 = "(-" + a + "*cos(t) + " + root_b + ")/2";
  const std::string y2 = "(-" + a + "*sin(t) + " + root_d + ")/2";

  std::vector<Motion> motions{
      motion(x1, y1),
      motion("-" + x1, y1),
      motion("-" + x1, "-" + y1),
      motion(x1, "-" + y1),
      motion(x2, y2),
      motion("-" + x2, y2),
      motion("-" + x2, "-" + y2),
      motion(x2, "-" + y2),
  };
  std::vector<std::string> labels{"1", "2", "3", "4", "5", "6", "7", "8"};
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 5; j <= 8; ++j) {
      edges.emplace_back(std::to_string(i), std::to_string(j));
    }
  }
  return MovingGraph(Graph(std::move(labels), edges), std::move(motions));
}

MovingGraph s2(const S2Params& p) {
  require(std::isfinite(p.a) && std::isfinite(p.b) && std::isfinite(p.c), "parameters must be finite");
  require(p.a > 0.0 && p.b > 0.0 && p.c > 0.0, "a, b, c must be positive");
  require(p.b * p.b > p.a * p.a, "b^2 > a^2 is required");
  require(p.c * p.c > p.a * p.a, "c^2 > a^2 is required");

  const std::string a = num(p.a);
  const std::string rb = "sqrt(" + num(p.b) + "^2 - " + a + "^2*sin(t)^2)";
  const std::string rc = "sqrt(" + num(p.c) + "^2 - " + a + "^2*cos(t)^2)";
  const std::string ac = a + "*cos(t)";
  const std::string as = a + "*sin(t)";

  std::vector<Motion> motions{
      motion("-" + ac + " - " + rb, "-" + as + " - " + rc),
      motion(ac + " - " + rb, "-" + as + " + " + rc),
      motion(ac + " + " + rb, as + " + " + rc),
      motion("-" + ac + " + " + rb, "-" + as + " + " + rc),
      motion("-" + ac + " + " + rb, as + " - " + rc),
      motion("-3*" + ac + " + " + rb, "-" + as + " - " + rc),
      motion("-3*" + ac + " - " + rb, "-" + as + " - 3*" + rc),
      motion("-" + ac + " - " + rb, as + " + " + rc),
  };
  std::vector<std::string> labels{"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"};
  const std::vector<std::pair<std::string, std::string>> edges{
      {"v1", "v2"}, {"v1", "v4"}, {"v1", "v5"}, {"v8", "v2"}, {"v8", "v4"}, {"v8", "v5"}, {"v3", "v2"},
      {"v3", "v4"}, {"v3", "v5"}, {"v1", "v7"}, {"v7", "v6"}, {"v5", "v6"}, {"v4", "v6"},
  };
  return MovingGraph(Graph(std::move(labels), edges), std::move(motions));
}

}  // namespace lmodel::families
