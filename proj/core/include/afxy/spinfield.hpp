#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "afxy/lattice.hpp"

namespace afxy {

// S^1-valued field on a finite box of lattice sites, stored as phases.
// Sites in the box may be undefined (NaN phase).
class SpinField {
 public:
  SpinField() = default;
  SpinField(double eps, IndexBox box);

  // Empty field whose box covers the region plus a two-site margin.
  static SpinField for_region(double eps, const Region& region);

  double eps() const { return eps_; }
  const IndexBox& box() const { return box_; }

  bool has(LatticeIndex i) const {
    return box_.contains(i) && !std::isnan(phase_[offset(i)]);
  }
  double phase(LatticeIndex i) const;
  Vec2 spin(LatticeIndex i) const { return unit_vector(phase(i)); }
  void set_phase(LatticeIndex i, double theta);
  void clear(LatticeIndex i);

  std::size_t defined_count() const;

  // Calls fn(index, phase) for every defined site in (z2, z1) order.
  template <class Fn>
  void for_each_site(Fn&& fn) const {
    for (int z2 = box_.z2_min; z2 <= box_.z2_max; ++z2) {
      for (int z1 = box_.z1_min; z1 <= box_.z1_max; ++z1) {
        const double p = phase_[offset({z1, z2})];
        if (!std::isnan(p)) fn(LatticeIndex{z1, z2}, p);
      }
    }
  }

  // Phases of the three vertices of t in vertices(t) order.
  std::array<double, 3> triangle_phases(const TriangleId& t) const;

 private:
  std::size_t offset(LatticeIndex i) const {
    return static_cast<std::size_t>(i.z2 - box_.z2_min) * static_cast<std::size_t>(box_.width()) +
           static_cast<std::size_t>(i.z1 - box_.z1_min);
  }

  double eps_ = 1.0;
  IndexBox box_{};
  std::vector<double> phase_;
};

// Per-triangle energies.
double energy_afxy(const SpinField& u, const TriangleId& t);
double energy_xy(const SpinField& v, const TriangleId& t);

// Sums over the triangles contained in the region.
double energy_afxy(const SpinField& u, const Region& region);
double energy_xy(const SpinField& v, const Region& region);

double chirality(const SpinField& u, const TriangleId& t);

// Rotates sublattice-2 phases by -2pi/3 and sublattice-3 phases by +2pi/3.
SpinField to_auxiliary(const SpinField& u);
SpinField from_auxiliary(const SpinField& v);

// Phase of the auxiliary field at i for a field with phase theta.
double auxiliary_phase(LatticeIndex i, double theta);
double original_phase(LatticeIndex i, double psi);

// E(u,T) - 4 XY(v,T) + 9 eps^2 (1 - chi(u,T)) with v the auxiliary field.
double energy_identity_residual(const SpinField& u, const TriangleId& t);

enum class BoundsCheck { Holds, NotApplicable };

// When chi(u,T) > 1 - eta checks (1-lambda) XY <= E <= (1+lambda) XY and
// throws InvariantViolation on failure.
BoundsCheck comparable_bounds_check(const SpinField& u, const TriangleId& t, double lambda,
                                    double eta);

// XY energy at spacing sqrt(3) eps of u restricted to sublattice 1, summed
// over the sublattice triangles contained in the region.
double sublattice_xy_energy(const SpinField& u, const Region& region);

using PhaseFn = std::function<double(Vec2)>;

// Samples phase_fn on every site of SpinField::for_region(eps, region).
// Sites within 1e-9 eps of a singularity get phase 0.
SpinField sample_from_continuum(const PhaseFn& phase_fn, double eps, const Region& region,
                                const std::vector<Vec2>& singularities = {});

}  // namespace afxy
