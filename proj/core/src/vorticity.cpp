#include "afxy/vorticity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "afxy/error.hpp"

namespace afxy {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) add(a.position, a.charge);
}

void AtomicMeasure::add(Vec2 position, int charge) {
  if (charge == 0) throw InvalidArgument("atom charge must be nonzero");
  if (!std::isfinite(position.x) || !std::isfinite(position.y)) {
    throw InvalidArgument("atom position must be finite");
  }
  const auto key = std::make_pair(position.x, position.y);
  const auto it = index_.find(key);
  if (it == index_.end()) {
    index_.emplace(key, atoms_.size());
    atoms_.push_back({position, charge});
    return;
  }
  atoms_[it->second].charge += charge;
  if (atoms_[it->second].charge != 0) return;
  atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(it->second));
  index_.clear();
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    index_.emplace(std::make_pair(atoms_[k].position.x, atoms_[k].position.y), k);
  }
}

int AtomicMeasure::mass() const {
  int m = 0;
  for (const Atom& a : atoms_) m += std::abs(a.charge);
  return m;
}

int AtomicMeasure::total() const {
  int m = 0;
  for (const Atom& a : atoms_) m += a.charge;
  return m;
}

int AtomicMeasure::charge_in(Vec2 center, double radius) const {
  int m = 0;
  for (const Atom& a : atoms_) {
    if (norm(a.position - center) <= radius) m += a.charge;
  }
  return m;
}

AtomicMeasure AtomicMeasure::operator+(const AtomicMeasure& other) const {
  AtomicMeasure out = *this;
  for (const Atom& a : other.atoms_) out.add(a.position, a.charge);
  return out;
}

AtomicMeasure AtomicMeasure::operator-(const AtomicMeasure& other) const {
  return *this + other.scaled(-1);
}

AtomicMeasure AtomicMeasure::scaled(int k) const {
  AtomicMeasure out;
  if (k == 0) return out;
  for (const Atom& a : atoms_) out.add(a.position, a.charge * k);
  return out;
}

double angle_diff(double phi_from, double phi_to) {
  const double d = phi_to - phi_from;
  const double k = d / kTwoPi;
  double m = std::round(k);
  const double t = std::trunc(k);
  if (std::fabs(k - t) == 0.5) m = t;
  return d - kTwoPi * m;
}

int vorticity(const SpinField& v, const TriangleId& t) {
  const auto p = v.triangle_phases(t);
  const double s = angle_diff(p[0], p[1]) + angle_diff(p[1], p[2]) + angle_diff(p[2], p[0]);
  return static_cast<int>(std::lround(s / kTwoPi));
}

VorticityMeasure vorticity_measure(const SpinField& v, const Region& region) {
  VorticityMeasure out;
  for_each_triangle_in(region, v.eps(), [&](const TriangleId& t) {
    const int q = vorticity(v, t);
    if (q != 0) {
      out.measure.add(barycenter(t, v.eps()), q);
      out.triangles.push_back(t);
    }
  });
  return out;
}

int winding_number(const std::vector<Vec2>& loop, const FieldEval& field_eval) {
  if (loop.size() < 3) throw InvalidArgument("loop needs at least three points");
  std::vector<double> angles;
  angles.reserve(loop.size());
  for (const Vec2& x : loop) {
    const Vec2 w = field_eval(x);
    if (!(norm(w) > 0.0)) throw PreconditionError("field vanishes on the loop");
    angles.push_back(std::atan2(w.y, w.x));
  }
  double total = 0.0;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double d = angle_diff(angles[k], angles[(k + 1) % angles.size()]);
    if (std::fabs(d) >= kPi * (1.0 - 1e-9)) {
      std::ostringstream os;
      os << "angular gap of " << d << " between loop samples " << k << " and "
         << (k + 1) % angles.size();
      throw UnderSamplingError(os.str());
    }
    total += d;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

ImplicationReport chirality_vorticity_implications(const SpinField& u, const Region& region,
                                                   double eta, double eta_prime) {
  const SpinField v = to_auxiliary(u);
  ImplicationReport rep;
  for_each_triangle_in(region, u.eps(), [&](const TriangleId& t) {
    ++rep.triangles;
    const double chi = chirality(u, t);
    const int q = vorticity(v, t);
    if (q != 0) {
      ++rep.charged;
      rep.max_chirality_charged = std::max(rep.max_chirality_charged, chi);
      if (chi > 1.0 - eta) {
        ++rep.high_chirality_charged;
        rep.violations.push_back(t);
      }
    } else {
      rep.min_chirality_neutral = std::min(rep.min_chirality_neutral, chi);
      if (chi < -1.0 + eta_prime) {
        ++rep.neutral_low_chirality;
        rep.violations.push_back(t);
      }
    }
  });
  return rep;
}

double rough_xy_bound_check(const SpinField& u, const TriangleId& t) {
  SpinField v(u.eps(), IndexBox{t.base.z1, t.base.z1 + 1, t.base.z2, t.base.z2 + 1});
  for (const LatticeIndex& i : vertices(t)) v.set_phase(i, auxiliary_phase(i, u.phase(i)));
  if (vorticity(v, t) != 0) throw PreconditionError("triangle carries vorticity");
  const double xy = energy_xy(v, t);
  const double e = energy_afxy(u, t);
  // Energies below round-off level count as zero.
  const double zero = 1e-20 * u.eps() * u.eps();
  if (e <= zero) return xy <= zero ? 1.0 : std::numeric_limits<double>::infinity();
  return xy / e;
}

}  // namespace afxy
