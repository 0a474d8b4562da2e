#pragma once

#include <functional>

#include "afxy/lattice.hpp"
#include "afxy/spinfield.hpp"

namespace afxy {

class Interpolant {
 public:
  enum class Kind { Affine, Geodesic };

  Interpolant(SpinField base, Kind kind);

  Kind kind() const { return kind_; }
  const SpinField& base() const { return base_; }

  Vec2 eval(Vec2 x) const;

  // j = (v1 grad v2 - v2 grad v1) / 2.
  Vec2 pre_jacobian(Vec2 x) const;

  // Integral of |grad|^2 over one triangle.  The geodesic variant rejects
  // charged triangles.
  double dirichlet_energy(const TriangleId& t) const;

 private:
  struct Local;
  Local local(Vec2 x) const;

  SpinField base_;
  Kind kind_;
};

// Sum of Interpolant::dirichlet_energy over the triangles in the region.
double dirichlet_energy(const Interpolant& interp, const Region& region);

using GradientFn = std::function<Vec2(Vec2)>;

struct PairingOptions {
  int sectors = 48;   // radial sectors per charged triangle
  int gauss_order = 4;  // tensor Gauss-Legendre order per sector
};

// -sum over triangles in the region of the integral of j(v) . grad_perp(psi)
// for the geodesic interpolant.  grad_psi must vanish near the region boundary.
double jacobian_pairing(const Interpolant& interp, const Region& region,
                        const GradientFn& grad_psi, const PairingOptions& opts = {});

// Single-valued phase on every site of every triangle meeting the open
// annulus, built by breadth-first accumulation of angle_diff.  The result has
// the same index box as v; uncovered sites are undefined.
SpinField lift_annulus(const SpinField& v, const Region& annulus, double monodromy_tol = 1e-9);

// Integral of (1 - |v_hat|^2)^2 over the triangles in the region.
double potential_diagnostic(const SpinField& v, const Region& region);

}  // namespace afxy
