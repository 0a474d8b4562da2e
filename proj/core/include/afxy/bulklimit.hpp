#pragma once

#include <vector>

#include "afxy/lattice.hpp"
#include "afxy/spinfield.hpp"

namespace afxy {

struct BulkRow {
  double eps = 0.0;
  double energy = 0.0;     // E(u_eps, region) / eps^2
  double reference = 0.0;  // sqrt(3) * integral of |grad phase|^2
  double rel_gap = 0.0;    // |energy - reference| / reference (0 when both vanish)
};

// Reference integral uses a central-difference gradient of phase_fn.
std::vector<BulkRow> bulk_scaling(const PhaseFn& phase_fn, const Region& region,
                                  const std::vector<double>& eps_list, double rel_tol = 1e-8);

struct MinimizationResult {
  double initial = 0.0;  // E / eps^2 of the starting field on the annulus
  double final = 0.0;    // E / eps^2 after relaxation
  int sweeps = 0;
  long accepted = 0;
  long rejected = 0;
};

// Coordinate descent on the AFXY energy over sites strictly inside the
// annulus A_{r,R}(0), starting from the recovery field of d at the origin and
// rejecting moves that charge a triangle.
MinimizationResult degree_constrained_minimization(int d, double r, double R, double eps,
                                                   int iters);

}  // namespace afxy
