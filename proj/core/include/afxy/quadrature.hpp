#pragma once

#include <array>
#include <functional>
#include <vector>

#include "afxy/lattice.hpp"

namespace afxy {

// Gauss-Legendre rule on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// Rule on a triangle in barycentric coordinates; weights sum to 1.
struct TriangleRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

// 7-point rule exact for polynomials of degree 5.
TriangleRule dunavant5();

using ScalarFn = std::function<double(Vec2)>;

// Adaptive tensor Gauss integration over the axis-aligned box [lo, hi].
double integrate_box(const ScalarFn& f, Vec2 lo, Vec2 hi, double rel_tol = 1e-8,
                     int max_depth = 14);

// Adaptive integration over a region; disks and annuli use polar coordinates.
double integrate_region(const ScalarFn& f, const Region& region, double rel_tol = 1e-8);

}  // namespace afxy
