#pragma once

#include <vector>

#include "afxy/lattice.hpp"
#include "afxy/spinfield.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

struct VortexPhase {
  PhaseFn phase;                   // sum of d_h atan2(x - x_h)
  std::vector<Vec2> singularities;
};

VortexPhase vortex_phase(const AtomicMeasure& mu);

struct Recovery {
  SpinField u;              // AFXY field
  SpinField v;              // its auxiliary field
  AtomicMeasure snapped;    // atoms moved to their nearest lattice sites
  double separation = 0.0;  // min pairwise atom distance / 4 (infinite for one atom)
};

// Recovery field for mu on the region.  Atoms are snapped to the nearest
// lattice site; singular sites get phase 0.
Recovery build_recovery(const AtomicMeasure& mu, double eps, const Region& region);

// Replaces each atom of charge d, |d| > 1, by |d| unit atoms on a regular
// polygon of radius 1/(2n).
AtomicMeasure split_multiplicity(const AtomicMeasure& mu, int n);

struct VortexBound {
  double measured = 0.0;  // XY((x/|x|)^d, A_{r,R})
  double leading = 0.0;   // 2 sqrt(3) pi d^2 eps^2 log(R/r)
  double excess = 0.0;    // (measured - leading) / eps^2
};

VortexBound vortex_xy_bound_check(int d, double r, double R, double eps);

}  // namespace afxy
