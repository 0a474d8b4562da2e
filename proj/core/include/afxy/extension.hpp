#pragma once

#include <functional>
#include <string>
#include <vector>

#include "afxy/ballconstruct.hpp"
#include "afxy/lattice.hpp"
#include "afxy/spinfield.hpp"

namespace afxy {

// Shift x in T0 = conv{0, eps e1, eps e2} minimizing the XY energy of
// i -> field_eval(eps i + x) over the triangles of `inner`, searched on the
// cell centers of a grid x grid subdivision of T0.
Vec2 sampling_shift(const std::function<Vec2(Vec2)>& field_eval, double eps, const Region& inner,
                    const Region& outer, int grid = 16);

struct ExtensionOptions {
  double c0 = 10.0;            // constant in the smallness condition
  double c1 = 0.0;             // energy budget XY <= c1 eps^2; <= 0 selects max(1, XY/eps^2)
  double monodromy_tol = 1e-9;
  int shift_grid = 16;
};

struct ExtensionResult {
  SpinField field;
  std::vector<LatticeIndex> modified;
  int layers = 0;
  int layer = 0;
  double rho = 0.0;
  double phase_average = 0.0;
  Vec2 shift{};
  double energy_annulus = 0.0;  // XY(v, A_{r,R})
  double energy_ball = 0.0;     // XY(v_bar, B_R)
  double max_jump = 0.0;        // largest lifted phase jump on edges meeting B_R
};

// Replaces v inside a good radius of the annulus by a vortex-free field that
// agrees with v outside B_{(r+R)/2}.  Throws ExtensionError, MonodromyError
// or PreconditionError when the hypotheses fail.
ExtensionResult extend_zero_degree(const SpinField& v, const Region& annulus,
                                   const ExtensionOptions& opts = {});

struct AnnihilationOptions {
  double sigma = 0.0;           // <= 0 selects 3 eps
  double expansion_time = 3.0;
  double beta = 2.0;            // outer/inner radius of the extension annulus
  ExtensionOptions extension;
};

struct BallOutcome {
  Ball ball;
  int charge = 0;
  int atoms = 0;
  bool extended = false;
  std::string status;
  double ratio = 0.0;  // XY(v_bar, B_R) / XY(v, annulus) when extended
};

struct AnnihilationResult {
  SpinField field;
  std::vector<BallOutcome> balls;
  int mass_before = 0;
  int mass_after = 0;
};

AnnihilationResult annihilate_dipoles(const SpinField& u, const Region& region,
                                      const AnnihilationOptions& opts = {});

}  // namespace afxy
