#include "afxy/quadrature.hpp"

#include <cmath>
#include <utility>

#include "afxy/error.hpp"
#include "afxy/summation.hpp"

namespace afxy {

namespace {

// Legendre polynomial P_n and its derivative at x.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss rule order must be >= 1");
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const auto idx = static_cast<std::size_t>(n - 1 - i);
    r.nodes[idx] = 0.5 * (x + 1.0);
    r.weights[idx] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

TriangleRule dunavant5() {
  TriangleRule r;
  const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
  const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
  r.points = {{1.0 / 3, 1.0 / 3, 1.0 / 3},
              {a1, b1, b1}, {b1, a1, b1}, {b1, b1, a1},
              {a2, b2, b2}, {b2, a2, b2}, {b2, b2, a2}};
  r.weights = {0.225, w1, w1, w1, w2, w2, w2};
  return r;
}

namespace {

double tensor(const ScalarFn& f, Vec2 lo, Vec2 hi, const GaussRule& g) {
  KahanSum s;
  const Vec2 d = hi - lo;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      s += g.weights[i] * g.weights[j] * f({lo.x + d.x * g.nodes[i], lo.y + d.y * g.nodes[j]});
    }
  }
  return s.value() * d.x * d.y;
}

double adapt(const ScalarFn& f, Vec2 lo, Vec2 hi, const GaussRule& g, double whole,
             double tol, int depth) {
  const Vec2 mid = (lo + hi) * 0.5;
  const std::array<std::array<Vec2, 2>, 4> q{{{lo, mid},
                                              {Vec2{mid.x, lo.y}, Vec2{hi.x, mid.y}},
                                              {Vec2{lo.x, mid.y}, Vec2{mid.x, hi.y}},
                                              {mid, hi}}};
  std::array<double, 4> parts{};
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    parts[k] = tensor(f, q[k][0], q[k][1], g);
    sum += parts[k];
  }
  if (depth <= 0 || std::fabs(sum - whole) <= tol) return sum;
  double out = 0.0;
  for (int k = 0; k < 4; ++k) out += adapt(f, q[k][0], q[k][1], g, parts[k], 0.25 * tol, depth - 1);
  return out;
}

}  // namespace

double integrate_box(const ScalarFn& f, Vec2 lo, Vec2 hi, double rel_tol, int max_depth) {
  const GaussRule g = gauss_legendre(8);
  const double whole = tensor(f, lo, hi, g);
  // Absolute floor keeps identically-zero integrands from refining forever.
  const double tol = std::max(rel_tol * std::fabs(whole), 1e-15 * (hi.x - lo.x) * (hi.y - lo.y));
  return adapt(f, lo, hi, g, whole, tol, max_depth);
}

double integrate_region(const ScalarFn& f, const Region& region, double rel_tol) {
  switch (region.kind()) {
    case Region::Kind::Rectangle:
      return integrate_box(f, region.lo(), region.hi(), rel_tol);
    case Region::Kind::Disk:
    case Region::Kind::Annulus: {
      const Vec2 c = region.center();
      auto polar = [&](Vec2 rt) {
        return rt.x * f({c.x + rt.x * std::cos(rt.y), c.y + rt.x * std::sin(rt.y)});
      };
      const double r0 = region.kind() == Region::Kind::Disk ? 0.0 : region.inner_radius();
      return integrate_box(polar, {r0, 0.0}, {region.outer_radius(), kTwoPi}, rel_tol);
    }
  }
  return 0.0;
}

}  // namespace afxy
