#include "afxy/recovery.hpp"

#include <cmath>
#include <limits>

#include "afxy/error.hpp"
#include "afxy/summation.hpp"

namespace afxy {

VortexPhase vortex_phase(const AtomicMeasure& mu) {
  const std::vector<Atom> atoms = mu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (atoms[i].position == atoms[j].position) {
        throw InvalidArgument("vortex atoms must have distinct positions");
      }
    }
  }
  VortexPhase out;
  for (const Atom& a : atoms) out.singularities.push_back(a.position);
  out.phase = [atoms](Vec2 x) {
    double s = 0.0;
    for (const Atom& a : atoms) s += a.charge * std::atan2(x.y - a.position.y, x.x - a.position.x);
    return s;
  };
  return out;
}

Recovery build_recovery(const AtomicMeasure& mu, double eps, const Region& region) {
  Recovery rec;
  rec.separation = std::numeric_limits<double>::infinity();
  const auto& atoms = mu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(region.distance_to_boundary(atoms[i].position) > 0.0)) {
      throw PreconditionError("recovery atoms must lie strictly inside the region");
    }
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double d = norm(atoms[i].position - atoms[j].position);
      if (d < 4.0 * eps) throw PreconditionError("atoms closer than 4 eps: snapped atoms overlap");
      rec.separation = std::min(rec.separation, d / 4.0);
    }
  }
  for (const Atom& a : atoms) {
    rec.snapped.add(to_cartesian(nearest_site(a.position, eps), eps), a.charge);
  }
  const VortexPhase vp = vortex_phase(rec.snapped);
  rec.v = sample_from_continuum(vp.phase, eps, region, vp.singularities);
  rec.u = from_auxiliary(rec.v);
  return rec;
}

AtomicMeasure split_multiplicity(const AtomicMeasure& mu, int n) {
  if (n < 1) throw InvalidArgument("split_multiplicity needs n >= 1");
  AtomicMeasure out;
  const double rad = 1.0 / (2.0 * n);
  for (const Atom& a : mu.atoms()) {
    const int m = std::abs(a.charge);
    const int sgn = a.charge > 0 ? 1 : -1;
    if (m == 1) {
      out.add(a.position, a.charge);
      continue;
    }
    for (int k = 0; k < m; ++k) {
      out.add(a.position + unit_vector(kTwoPi * k / m) * rad, sgn);
    }
  }
  return out;
}

VortexBound vortex_xy_bound_check(int d, double r, double R, double eps) {
  if (!(eps > 0.0 && 2.0 * eps <= r && r <= R)) {
    throw PreconditionError("vortex bound needs 2 eps <= r <= R");
  }
  VortexBound out;
  out.leading = 2.0 * kSqrt3 * kPi * d * d * eps * eps * std::log(R / r);
  if (r < R) {
    KahanSum s;
    for_each_triangle_in(Region::annulus({0.0, 0.0}, r, R), eps, [&](const TriangleId& t) {
      const auto vs = vertices(t);
      std::array<double, 3> p;
      for (int k = 0; k < 3; ++k) {
        const Vec2 x = to_cartesian(vs[k], eps);
        p[k] = d * std::atan2(x.y, x.x);
      }
      s += eps * eps * (3.0 - std::cos(p[0] - p[1]) - std::cos(p[1] - p[2]) - std::cos(p[2] - p[0]));
    });
    out.measured = s.value();
  }
  out.excess = (out.measured - out.leading) / (eps * eps);
  return out;
}

}  // namespace afxy
