#include "afxy/bulklimit.hpp"

#include <cmath>

#include "afxy/error.hpp"
#include "afxy/quadrature.hpp"
#include "afxy/summation.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

std::vector<BulkRow> bulk_scaling(const PhaseFn& phase_fn, const Region& region,
                                  const std::vector<double>& eps_list, double rel_tol) {
  const double h = 1e-5;
  auto grad2 = [&](Vec2 x) {
    const double gx = (phase_fn({x.x + h, x.y}) - phase_fn({x.x - h, x.y})) / (2.0 * h);
    const double gy = (phase_fn({x.x, x.y + h}) - phase_fn({x.x, x.y - h})) / (2.0 * h);
    return gx * gx + gy * gy;
  };
  const double reference = kSqrt3 * integrate_region(grad2, region, rel_tol);
  std::vector<BulkRow> rows;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    const SpinField u = from_auxiliary(sample_from_continuum(phase_fn, eps, region));
    BulkRow row;
    row.eps = eps;
    row.energy = energy_afxy(u, region) / (eps * eps);
    row.reference = reference;
    if (reference != 0.0) {
      row.rel_gap = std::fabs(row.energy - reference) / std::fabs(reference);
    } else {
      row.rel_gap = std::fabs(row.energy);
    }
    rows.push_back(row);
  }
  return rows;
}

MinimizationResult degree_constrained_minimization(int d, double r, double R, double eps,
                                                   int iters) {
  if (!(eps > 0.0 && r > 0.0 && r < R)) throw InvalidArgument("need 0 < r < R and eps > 0");
  if (iters < 0) throw InvalidArgument("iters must be nonnegative");
  const Vec2 origin{0.0, 0.0};
  const Region annulus = Region::annulus(origin, r, R);
  const Region disk = Region::disk(origin, R);
  const SpinField v0 = sample_from_continuum(
      [d](Vec2 x) { return d * std::atan2(x.y, x.x); }, eps, disk, {origin});
  SpinField u = from_auxiliary(v0);

  // Triangles contained in the annulus, flagged on the field box.
  const IndexBox& box = u.box();
  const IndexBox tbox{box.z1_min - 1, box.z1_max, box.z2_min - 1, box.z2_max};
  std::vector<std::uint8_t> in_ann(static_cast<std::size_t>(tbox.size()) * 2, 0);
  auto slot = [&](const TriangleId& t) -> std::int64_t {
    if (!tbox.contains(t.base)) return -1;
    return (static_cast<std::int64_t>(t.base.z2 - tbox.z2_min) * tbox.width() +
            (t.base.z1 - tbox.z1_min)) * 2 + (t.orientation == Orientation::Up ? 0 : 1);
  };
  for_each_triangle_in(annulus, eps, [&](const TriangleId& t) {
    in_ann[static_cast<std::size_t>(slot(t))] = 1;
  });
  auto counted = [&](const TriangleId& t) {
    const std::int64_t s = slot(t);
    return s >= 0 && in_ann[static_cast<std::size_t>(s)] != 0;
  };

  // Admissibility of the starting field.
  {
    const SpinField v = to_auxiliary(u);
    for_each_triangle_meeting(annulus, eps, [&](const TriangleId& t) {
      if (vorticity(v, t) != 0) throw PreconditionError("starting field charges the annulus");
    });
    int deg = 0;
    for_each_triangle_in(Region::disk(origin, r), eps,
                         [&](const TriangleId& t) { deg += vorticity(v, t); });
    if (deg != d) throw PreconditionError("starting field has the wrong degree in the hole");
  }

  // Movable sites, grouped by sublattice colour.
  std::array<std::vector<LatticeIndex>, 3> colour;
  u.for_each_site([&](LatticeIndex i, double) {
    const double rho = norm(to_cartesian(i, eps));
    if (rho > r && rho < R) colour[sublattice(i) - 1].push_back(i);
  });

  MinimizationResult res;
  res.initial = energy_afxy(u, annulus) / (eps * eps);
  auto star_energy = [&](LatticeIndex s) {
    double e = 0.0;
    for (const TriangleId& t : triangles_at(s)) {
      if (counted(t)) e += energy_afxy(u, t);
    }
    return e;
  };
  auto star_neutral = [&](LatticeIndex s) {
    for (const TriangleId& t : triangles_at(s)) {
      const auto vs = vertices(t);
      std::array<double, 3> p;
      for (int k = 0; k < 3; ++k) p[k] = auxiliary_phase(vs[k], u.phase(vs[k]));
      const double q = angle_diff(p[0], p[1]) + angle_diff(p[1], p[2]) + angle_diff(p[2], p[0]);
      if (std::lround(q / kTwoPi) != 0) return false;
    }
    return true;
  };
  for (int it = 0; it < iters; ++it) {
    long moved = 0;
    for (const auto& group : colour) {
      for (const LatticeIndex& s : group) {
        Vec2 w{};
        for (const TriangleId& t : triangles_at(s)) {
          if (!counted(t)) continue;
          for (const LatticeIndex& j : vertices(t)) {
            if (j != s) w += u.spin(j);
          }
        }
        const double wn = norm(w);
        if (wn < 1e-14) continue;
        const double old = u.phase(s);
        const double target = std::atan2(-w.y, -w.x);
        if (std::fabs(angle_diff(old, target)) < 1e-15) continue;
        const double before = star_energy(s);
        u.set_phase(s, target);
        if (!star_neutral(s) || star_energy(s) > before) {
          u.set_phase(s, old);
          ++res.rejected;
        } else {
          ++res.accepted;
          ++moved;
        }
      }
    }
    ++res.sweeps;
    if (moved == 0) break;
  }
  res.final = energy_afxy(u, annulus) / (eps * eps);
  return res;
}

}  // namespace afxy
