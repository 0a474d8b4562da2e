#include "afxy/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "afxy/error.hpp"
#include "afxy/interpolation.hpp"
#include "afxy/summation.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

namespace {

constexpr double kCertificate = kTwoPi / 3.0;

// Boundary points of a region used for the margin precondition.
std::vector<Vec2> boundary_samples(const Region& g) {
  std::vector<Vec2> pts;
  const int n = 256;
  if (g.kind() == Region::Kind::Rectangle) {
    const Vec2 lo = g.lo(), hi = g.hi();
    for (int k = 0; k <= n; ++k) {
      const double s = static_cast<double>(k) / n;
      pts.push_back({lo.x + s * (hi.x - lo.x), lo.y});
      pts.push_back({lo.x + s * (hi.x - lo.x), hi.y});
      pts.push_back({lo.x, lo.y + s * (hi.y - lo.y)});
      pts.push_back({hi.x, lo.y + s * (hi.y - lo.y)});
    }
    return pts;
  }
  for (int k = 0; k < n; ++k) {
    const double th = kTwoPi * k / n;
    pts.push_back(g.center() + unit_vector(th) * g.outer_radius());
  }
  return pts;
}

// Affine interpolation of a lifted phase map.
double lifted_phase_at(const SpinField& phi, Vec2 x) {
  const Location loc = locate(x, phi.eps());
  const auto p = phi.triangle_phases(loc.triangle);
  return loc.weights[0] * p[0] + loc.weights[1] * p[1] + loc.weights[2] * p[2];
}

}  // namespace

Vec2 sampling_shift(const std::function<Vec2(Vec2)>& field_eval, double eps, const Region& inner,
                    const Region& outer, int grid) {
  if (grid < 1) throw InvalidArgument("shift grid must be positive");
  for (const Vec2& p : boundary_samples(inner)) {
    if (!(outer.distance_to_boundary(p) > eps)) {
      throw PreconditionError("inner region must stay eps away from the outer boundary");
    }
  }
  const std::vector<TriangleId> tris = triangles_in(inner, eps);
  std::map<LatticeIndex, int> slot;
  std::vector<Vec2> sites;
  std::vector<std::array<int, 3>> corners;
  corners.reserve(tris.size());
  for (const TriangleId& tri : tris) {
    std::array<int, 3> c{};
    const auto vs = vertices(tri);
    for (int k = 0; k < 3; ++k) {
      auto [it, fresh] = slot.try_emplace(vs[k], static_cast<int>(sites.size()));
      if (fresh) sites.push_back(to_cartesian(vs[k], eps));
      c[k] = it->second;
    }
    corners.push_back(c);
  }
  const Vec2 e1{eps, 0.0};
  const Vec2 e2{0.5 * eps, 0.5 * kSqrt3 * eps};
  Vec2 best{};
  double best_energy = std::numeric_limits<double>::infinity();
  std::vector<Vec2> w(sites.size());
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; a + b < grid; ++b) {
      const double s = (a + 0.5) / grid;
      const double t = (b + 0.5) / grid;
      if (s + t >= 1.0) continue;
      const Vec2 shift = e1 * s + e2 * t;
      for (std::size_t k = 0; k < sites.size(); ++k) w[k] = field_eval(sites[k] + shift);
      KahanSum energy;
      for (const auto& c : corners) {
        energy += 0.5 * eps * eps *
                  (norm2(w[c[0]] - w[c[1]]) + norm2(w[c[1]] - w[c[2]]) + norm2(w[c[2]] - w[c[0]]));
      }
      if (energy.value() < best_energy) {
        best_energy = energy.value();
        best = shift;
      }
    }
  }
  return best;
}

ExtensionResult extend_zero_degree(const SpinField& v, const Region& annulus,
                                   const ExtensionOptions& opts) {
  if (annulus.kind() != Region::Kind::Annulus) throw InvalidArgument("extension needs an annulus");
  const double eps = v.eps();
  const Vec2 x0 = annulus.center();
  const double r = annulus.inner_radius();
  const double R = annulus.outer_radius();
  if (!(r > 0.0)) throw InvalidArgument("extension annulus needs r > 0");

  int inner_degree = 0;
  for_each_triangle_in(Region::disk(x0, r), eps,
                       [&](const TriangleId& t) { inner_degree += vorticity(v, t); });
  if (inner_degree != 0) throw MonodromyError("nonzero degree inside the annulus hole");

  ExtensionResult res;
  res.energy_annulus = energy_xy(v, annulus);
  const double c1 = opts.c1 > 0.0 ? opts.c1 : std::max(1.0, res.energy_annulus / (eps * eps));
  if (res.energy_annulus > c1 * eps * eps * (1.0 + 1e-12)) {
    throw ExtensionError("annulus energy exceeds the budget c1 eps^2");
  }
  if (!(eps < (R - r) * kCertificate * kCertificate / (opts.c0 * c1))) {
    throw ExtensionError("eps too large for the annulus width");
  }

  const SpinField phi = lift_annulus(v, annulus, opts.monodromy_tol);

  // Layer selection inside [r', R'].
  const double r_in = r + (R - r) / 8.0;
  const double r_out = r + 3.0 * (R - r) / 8.0;
  res.layers = std::max(1, static_cast<int>(std::floor((r_out - r_in) / (9.0 * eps))));
  const double width = (r_out - r_in) / res.layers;
  double best_layer_energy = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= res.layers; ++k) {
    const double lo = r_in + (k - 1) * width;
    const double e = energy_xy(v, Region::annulus(x0, lo, lo + width));
    if (e < best_layer_energy) {
      best_layer_energy = e;
      res.layer = k;
    }
  }
  const double layer_lo = r_in + (res.layer - 1) * width;
  const double layer_hi = layer_lo + width;

  // Good radius: minimal discrete tangential energy on the circle.
  auto circle_points = [&](double rho) {
    return 4 * static_cast<int>(std::ceil(kTwoPi * rho / eps));
  };
  auto tangential = [&](double rho) {
    const int m = circle_points(rho);
    const double ds = kTwoPi * rho / m;
    KahanSum s;
    double prev = lifted_phase_at(phi, x0 + unit_vector(0.0) * rho);
    const double first = prev;
    for (int k = 1; k <= m; ++k) {
      const double cur = k == m ? first : lifted_phase_at(phi, x0 + unit_vector(kTwoPi * k / m) * rho);
      s += (cur - prev) * (cur - prev) / ds;
      prev = cur;
    }
    return s.value();
  };
  const double margin = std::min(4.0 * eps, width / 4.0);
  const double step = eps / 4.0;
  double best_t = std::numeric_limits<double>::infinity();
  res.rho = 0.5 * (layer_lo + layer_hi);
  for (double rho = layer_lo + margin + step; rho < layer_hi - margin; rho += step) {
    const double e = tangential(rho);
    if (e < best_t) {
      best_t = e;
      res.rho = rho;
    }
  }
  const double rho = res.rho;
  {
    const int m = circle_points(rho);
    KahanSum s;
    for (int k = 0; k < m; ++k) s += lifted_phase_at(phi, x0 + unit_vector(kTwoPi * k / m) * rho);
    res.phase_average = s.value() / m;
  }
  const double a = res.phase_average;

  // 1-homogeneous extension about the average inside B_rho, lift outside.
  auto extended = [&](Vec2 x) {
    const Vec2 y = x - x0;
    const double d = norm(y);
    if (d > rho) return lifted_phase_at(phi, x);
    if (d == 0.0) return a;
    return a + (d / rho) * (lifted_phase_at(phi, x0 + y * (rho / d)) - a);
  };
  res.shift = sampling_shift([&](Vec2 x) { return unit_vector(extended(x)); }, eps,
                             Region::disk(x0, rho), Region::disk(x0, R), opts.shift_grid);

  res.field = v;
  SpinField lifted_out = phi;  // unwrapped phases of the output where known
  const IndexBox& box = v.box();
  for (int z2 = box.z2_min; z2 <= box.z2_max; ++z2) {
    for (int z1 = box.z1_min; z1 <= box.z1_max; ++z1) {
      const LatticeIndex i{z1, z2};
      const Vec2 x = to_cartesian(i, eps);
      if (norm(x - x0) > rho) continue;
      const double p = extended(x + res.shift);
      res.field.set_phase(i, p);
      lifted_out.set_phase(i, p);
      res.modified.push_back(i);
    }
  }

  // Certificate: small lifted jumps on every triangle meeting B_R.
  const Region ball = Region::disk(x0, R);
  for_each_triangle_meeting(ball, eps, [&](const TriangleId& t) {
    const auto vs = vertices(t);
    for (int k = 0; k < 3; ++k) {
      const double jump = std::fabs(lifted_out.phase(vs[(k + 1) % 3]) - lifted_out.phase(vs[k]));
      res.max_jump = std::max(res.max_jump, jump);
    }
  });
  if (!(res.max_jump < kCertificate)) {
    throw ExtensionError("phase jump certificate failed (max jump " +
                         std::to_string(res.max_jump) + ")");
  }
  for_each_triangle_meeting(ball, eps, [&](const TriangleId& t) {
    if (vorticity(res.field, t) != 0) {
      throw InvariantViolation("extension left a charged triangle in B_R");
    }
  });
  res.energy_ball = energy_xy(res.field, ball);
  return res;
}

AnnihilationResult annihilate_dipoles(const SpinField& u, const Region& region,
                                      const AnnihilationOptions& opts) {
  const double eps = u.eps();
  const double sigma = opts.sigma > 0.0 ? opts.sigma : 3.0 * eps;
  if (!(opts.beta > 1.0)) throw InvalidArgument("beta must exceed 1");
  AnnihilationResult out;
  SpinField v = to_auxiliary(u);
  const VorticityMeasure vm = vorticity_measure(v, region);
  out.mass_before = vm.measure.mass();
  out.field = u;
  if (vm.measure.empty()) return out;

  std::vector<Ball> seeds;
  const double r0 = eps / (2.0 * kSqrt3);
  for (const Atom& at : vm.measure.atoms()) seeds.push_back({at.position, r0});
  const BallTrace trace = ball_construct(seeds, vm.measure, sigma, {opts.expansion_time});
  const BallFamily& fam = trace.families.front();

  std::set<LatticeIndex> changed;
  for (std::size_t b = 0; b < fam.balls.size(); ++b) {
    BallOutcome oc;
    oc.ball = fam.balls[b];
    oc.charge = fam.charges[b];
    for (const Atom& at : vm.measure.atoms()) {
      if (norm(at.position - oc.ball.center) < oc.ball.radius) ++oc.atoms;
    }
    if (oc.charge != 0) {
      oc.status = "nonzero net charge";
    } else if (!(region.distance_to_boundary(oc.ball.center) >= oc.ball.radius + eps)) {
      oc.status = "ball leaves the region";
    } else {
      try {
        const Region ann =
            Region::annulus(oc.ball.center, oc.ball.radius / opts.beta, oc.ball.radius);
        ExtensionResult ext = extend_zero_degree(v, ann, opts.extension);
        oc.ratio = ext.energy_annulus > 0.0 ? ext.energy_ball / ext.energy_annulus : 0.0;
        changed.insert(ext.modified.begin(), ext.modified.end());
        v = std::move(ext.field);
        oc.extended = true;
        oc.status = "extended";
      } catch (const Error& e) {
        oc.status = e.kind() + ": " + e.what();
      }
    }
    out.balls.push_back(oc);
  }
  for (const LatticeIndex& i : changed) out.field.set_phase(i, original_phase(i, v.phase(i)));
  out.mass_after = vorticity_measure(to_auxiliary(out.field), region).measure.mass();
  return out;
}

}  // namespace afxy
