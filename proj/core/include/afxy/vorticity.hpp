#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "afxy/lattice.hpp"
#include "afxy/spinfield.hpp"

namespace afxy {

struct Atom {
  Vec2 position;
  int charge = 0;
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);

  // Charges at identical positions are combined; atoms that cancel are dropped.
  void add(Vec2 position, int charge);
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  int mass() const;
  int total() const;
  // Charge carried by atoms in the closed ball.
  int charge_in(Vec2 center, double radius) const;

  AtomicMeasure operator-(const AtomicMeasure& other) const;
  AtomicMeasure operator+(const AtomicMeasure& other) const;
  AtomicMeasure scaled(int k) const;

 private:
  std::vector<Atom> atoms_;
  std::map<std::pair<double, double>, std::size_t> index_;
};

struct VorticityMeasure {
  AtomicMeasure measure;
  std::vector<TriangleId> triangles;  // one per atom
};

// (to - from) minus its nearest multiple of 2pi; ties go to the multiple of
// smaller modulus, so the result lies in [-pi, pi].
double angle_diff(double phi_from, double phi_to);

int vorticity(const SpinField& v, const TriangleId& t);

// Charged triangles contained in the region.
VorticityMeasure vorticity_measure(const SpinField& v, const Region& region);

// Flat norm of mu relative to the region, computed as the exact minimum-cost
// assignment of unit charges to opposite charges or to the boundary/mass sink.
double flat_norm(const AtomicMeasure& mu, const Region& region);

using FieldEval = std::function<Vec2(Vec2)>;

// Degree of field_eval along the closed polyline `loop`.
int winding_number(const std::vector<Vec2>& loop, const FieldEval& field_eval);

struct ImplicationReport {
  std::size_t triangles = 0;
  std::size_t charged = 0;
  std::size_t high_chirality_charged = 0;  // chi > 1 - eta but charged
  std::size_t neutral_low_chirality = 0;   // uncharged but chi < -1 + eta'
  std::vector<TriangleId> violations;
  double min_chirality_neutral = 1.0;
  double max_chirality_charged = -1.0;

  bool ok() const { return violations.empty(); }
};

ImplicationReport chirality_vorticity_implications(const SpinField& u, const Region& region,
                                                   double eta, double eta_prime);

// XY(v,T) / E(u,T) on an uncharged triangle; 1 when both vanish.
double rough_xy_bound_check(const SpinField& u, const TriangleId& t);

}  // namespace afxy
