#include "afxy/interpolation.hpp"

#include <algorithm>
#include <deque>

#include "afxy/error.hpp"
#include "afxy/quadrature.hpp"
#include "afxy/summation.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

namespace {

struct TriangleGeometry {
  std::array<Vec2, 3> p;
  std::array<Vec2, 3> grad_w;  // gradients of the barycentric weights
  double area = 0.0;
};

TriangleGeometry geometry(const TriangleId& t, double eps) {
  TriangleGeometry g;
  const auto v = vertices(t);
  for (int k = 0; k < 3; ++k) g.p[k] = to_cartesian(v[k], eps);
  const double a2 = cross(g.p[1] - g.p[0], g.p[2] - g.p[0]);
  g.area = 0.5 * a2;
  g.grad_w[0] = perp(g.p[2] - g.p[1]) / a2;
  g.grad_w[1] = perp(g.p[0] - g.p[2]) / a2;
  g.grad_w[2] = perp(g.p[1] - g.p[0]) / a2;
  return g;
}

// Lifted vertex phases along counterclockwise edges, and the edge jumps.
struct GeodesicData {
  std::array<double, 3> phi;
  std::array<double, 3> jump;  // phi1-phi0, phi2-phi1, phi0-phi2 (principal)
  int charge = 0;
};

GeodesicData geodesic_data(const std::array<double, 3>& raw) {
  GeodesicData g;
  g.jump = {angle_diff(raw[0], raw[1]), angle_diff(raw[1], raw[2]), angle_diff(raw[2], raw[0])};
  g.phi = {raw[0], raw[0] + g.jump[0], raw[0] + g.jump[0] + g.jump[1]};
  g.charge = static_cast<int>(std::lround((g.jump[0] + g.jump[1] + g.jump[2]) / kTwoPi));
  return g;
}

// Phase and gradient of the 0-homogeneous extension on a charged triangle,
// using the edge hit by the ray from the barycenter through x.
struct ConeValue {
  double phase;
  Vec2 grad;
};

ConeValue cone_value(const TriangleGeometry& g, const GeodesicData& gd, Vec2 x,
                     const std::array<double, 3>& w) {
  // Ray parameter to the boundary and the vertex whose weight reaches zero.
  int opp = -1;
  double lam = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const double dk = 1.0 / 3.0 - w[k];
    if (dk > 0.0) {
      const double l = (1.0 / 3.0) / dk;
      if (l < lam) {
        lam = l;
        opp = k;
      }
    }
  }
  if (opp < 0) throw SingularPointError("query at a charged barycenter");
  // Edge start vertex a (counterclockwise) for the edge opposite `opp`.
  const int a = (opp + 1) % 3;
  const int b = (opp + 2) % 3;
  const Vec2 bc = (g.p[0] + g.p[1] + g.p[2]) / 3.0;
  const Vec2 c0 = g.p[a] - bc;
  const Vec2 c1 = g.p[b] - g.p[a];
  const double det = cross(c0, c1);
  const Vec2 r0{c1.y / det, -c1.x / det};
  const Vec2 r1{-c0.y / det, c0.x / det};
  const Vec2 d = x - bc;
  const double lp = dot(r0, d);
  const double mu = dot(r1, d);
  const double s = std::clamp(mu / lp, 0.0, 1.0);
  const double slope = gd.jump[a];
  ConeValue out;
  out.phase = gd.phi[a] + s * slope;
  out.grad = (r1 * lp - r0 * mu) * (slope / (lp * lp));
  return out;
}

}  // namespace

struct Interpolant::Local {
  TriangleId t;
  TriangleGeometry g;
  std::array<double, 3> raw;
  std::array<double, 3> w;
};

Interpolant::Interpolant(SpinField base, Kind kind) : base_(std::move(base)), kind_(kind) {}

Interpolant::Local Interpolant::local(Vec2 x) const {
  const Location loc = locate(x, base_.eps());
  Local l;
  l.t = loc.triangle;
  l.w = loc.weights;
  l.g = geometry(loc.triangle, base_.eps());
  try {
    l.raw = base_.triangle_phases(loc.triangle);
  } catch (const UndefinedSite&) {
    throw OutOfDomainError("point outside the interpolant's covered triangles");
  }
  return l;
}

Vec2 Interpolant::eval(Vec2 x) const {
  const Local l = local(x);
  if (kind_ == Kind::Affine) {
    Vec2 out{};
    for (int k = 0; k < 3; ++k) out += unit_vector(l.raw[k]) * l.w[k];
    return out;
  }
  const GeodesicData gd = geodesic_data(l.raw);
  if (gd.charge == 0) {
    return unit_vector(l.w[0] * gd.phi[0] + l.w[1] * gd.phi[1] + l.w[2] * gd.phi[2]);
  }
  return unit_vector(cone_value(l.g, gd, x, l.w).phase);
}

Vec2 Interpolant::pre_jacobian(Vec2 x) const {
  const Local l = local(x);
  if (kind_ == Kind::Affine) {
    Vec2 val{}, gx{}, gy{};  // gx = grad of first component, gy = grad of second
    for (int k = 0; k < 3; ++k) {
      const Vec2 s = unit_vector(l.raw[k]);
      val += s * l.w[k];
      gx += l.g.grad_w[k] * s.x;
      gy += l.g.grad_w[k] * s.y;
    }
    return (gy * val.x - gx * val.y) * 0.5;
  }
  const GeodesicData gd = geodesic_data(l.raw);
  if (gd.charge == 0) {
    Vec2 grad{};
    for (int k = 0; k < 3; ++k) grad += l.g.grad_w[k] * gd.phi[k];
    return grad * 0.5;
  }
  return cone_value(l.g, gd, x, l.w).grad * 0.5;
}

double Interpolant::dirichlet_energy(const TriangleId& t) const {
  const TriangleGeometry g = geometry(t, base_.eps());
  const auto raw = base_.triangle_phases(t);
  if (kind_ == Kind::Affine) {
    Vec2 gx{}, gy{};
    for (int k = 0; k < 3; ++k) {
      const Vec2 s = unit_vector(raw[k]);
      gx += g.grad_w[k] * s.x;
      gy += g.grad_w[k] * s.y;
    }
    return g.area * (norm2(gx) + norm2(gy));
  }
  const GeodesicData gd = geodesic_data(raw);
  if (gd.charge != 0) {
    throw PreconditionError("geodesic Dirichlet energy is infinite on charged " + to_string(t));
  }
  Vec2 grad{};
  for (int k = 0; k < 3; ++k) grad += g.grad_w[k] * gd.phi[k];
  return g.area * norm2(grad);
}

double dirichlet_energy(const Interpolant& interp, const Region& region) {
  KahanSum s;
  for_each_triangle_in(region, interp.base().eps(),
                       [&](const TriangleId& t) { s += interp.dirichlet_energy(t); });
  return s.value();
}

double jacobian_pairing(const Interpolant& interp, const Region& region,
                        const GradientFn& grad_psi, const PairingOptions& opts) {
  if (opts.sectors < 3 || opts.sectors % 3 != 0) {
    throw InvalidArgument("sector count must be a positive multiple of 3");
  }
  const GaussRule rule = gauss_legendre(opts.gauss_order);
  const TriangleRule smooth = dunavant5();
  const double eps = interp.base().eps();
  KahanSum total;
  for_each_triangle_in(region, eps, [&](const TriangleId& t) {
    const TriangleGeometry g = geometry(t, eps);
    const auto raw = interp.base().triangle_phases(t);
    const GeodesicData gd = geodesic_data(raw);
    if (interp.kind() == Interpolant::Kind::Affine || gd.charge == 0) {
      KahanSum tri;
      for (std::size_t k = 0; k < smooth.points.size(); ++k) {
        const auto& w = smooth.points[k];
        const Vec2 m = g.p[0] * w[0] + g.p[1] * w[1] + g.p[2] * w[2];
        tri += smooth.weights[k] * dot(interp.pre_jacobian(m), perp(grad_psi(m)));
      }
      total += -tri.value() * g.area;
      return;
    }
    // Charged: ray coordinates x = b + t (p(s) - b) on each sector, in which
    // j * |Jacobian| is smooth.
    const Vec2 bc = (g.p[0] + g.p[1] + g.p[2]) / 3.0;
    const int per_edge = opts.sectors / 3;
    KahanSum tri;
    for (int e = 0; e < 3; ++e) {
      const Vec2 A = g.p[e];
      const Vec2 B = g.p[(e + 1) % 3];
      const Vec2 AB = B - A;
      const double slope = gd.jump[e];
      for (int sct = 0; sct < per_edge; ++sct) {
        const double s0 = static_cast<double>(sct) / per_edge;
        const double s1 = static_cast<double>(sct + 1) / per_edge;
        for (std::size_t qs = 0; qs < rule.nodes.size(); ++qs) {
          const double s = s0 + (s1 - s0) * rule.nodes[qs];
          const double ws = (s1 - s0) * rule.weights[qs];
          const Vec2 p = A + AB * s;
          const Vec2 c0 = p - bc;
          // grad of the boundary-extended phase at p (ray parameter 1).
          const double det = cross(A - bc, AB);
          const Vec2 r0{AB.y / det, -AB.x / det};
          const Vec2 r1{-(A - bc).y / det, (A - bc).x / det};
          const double lp = dot(r0, c0);
          const double mu = dot(r1, c0);
          const Vec2 jb = (r1 * lp - r0 * mu) * (0.5 * slope / (lp * lp));
          const double jac = std::fabs(cross(c0, AB));
          for (std::size_t qt = 0; qt < rule.nodes.size(); ++qt) {
            const double tt = rule.nodes[qt];
            const Vec2 x = bc + c0 * tt;
            tri += ws * rule.weights[qt] * jac * dot(jb, perp(grad_psi(x)));
          }
        }
      }
    }
    total += -tri.value();
  });
  return total.value();
}

SpinField lift_annulus(const SpinField& v, const Region& annulus, double monodromy_tol) {
  if (annulus.kind() != Region::Kind::Annulus) throw InvalidArgument("lift needs an annulus");
  const double eps = v.eps();
  const IndexBox& box = v.box();
  // Triangle membership flags on the box grown by one site on each side.
  const IndexBox tbox{box.z1_min - 1, box.z1_max, box.z2_min - 1, box.z2_max};
  std::vector<std::uint8_t> tflag(static_cast<std::size_t>(tbox.size()) * 2, 0);
  auto tslot = [&](const TriangleId& t) -> std::int64_t {
    if (!tbox.contains(t.base)) return -1;
    const std::int64_t off = static_cast<std::int64_t>(t.base.z2 - tbox.z2_min) * tbox.width() +
                             (t.base.z1 - tbox.z1_min);
    return off * 2 + (t.orientation == Orientation::Up ? 0 : 1);
  };
  std::vector<TriangleId> tris;
  for_each_triangle_meeting(annulus, eps, [&](const TriangleId& t) {
    if (vorticity(v, t) != 0) {
      throw PreconditionError("charged triangle " + to_string(t) + " meets the annulus");
    }
    tris.push_back(t);
    tflag[static_cast<std::size_t>(tslot(t))] = 1;
  });
  SpinField phi(eps, box);
  if (tris.empty()) return phi;
  auto has_tri = [&](const TriangleId& t) {
    const std::int64_t s = tslot(t);
    return s >= 0 && tflag[static_cast<std::size_t>(s)] != 0;
  };
  // An edge (s, s + d) is in the graph when one of its two triangles is.
  auto edge_in_graph = [&](LatticeIndex s, LatticeIndex d) {
    if (d.z1 < 0 || (d.z1 == 0 && d.z2 < 0)) {
      s = s + d;
      d = LatticeIndex{-d.z1, -d.z2};
    }
    if (d == LatticeIndex{1, 0}) {
      return has_tri({s, Orientation::Up}) || has_tri({s + LatticeIndex{0, -1}, Orientation::Down});
    }
    if (d == LatticeIndex{0, 1}) {
      return has_tri({s, Orientation::Up}) || has_tri({s + LatticeIndex{-1, 0}, Orientation::Down});
    }
    // d = (1, -1): edge between j + e2 and j + e1 with j = s - (0, 1).
    const LatticeIndex j = s + LatticeIndex{0, -1};
    return has_tri({j, Orientation::Up}) || has_tri({j, Orientation::Down});
  };
  const std::array<LatticeIndex, 6> dirs{LatticeIndex{1, 0},  LatticeIndex{0, 1},
                                         LatticeIndex{-1, 1}, LatticeIndex{-1, 0},
                                         LatticeIndex{0, -1}, LatticeIndex{1, -1}};
  std::vector<LatticeIndex> sites;
  for (const TriangleId& t : tris) {
    for (const LatticeIndex& i : vertices(t)) sites.push_back(i);
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  std::deque<LatticeIndex> queue;
  for (const LatticeIndex& root : sites) {
    if (phi.has(root)) continue;
    double p0 = std::remainder(v.phase(root), kTwoPi);
    if (p0 <= -kPi) p0 += kTwoPi;
    phi.set_phase(root, p0);
    queue.push_back(root);
    while (!queue.empty()) {
      const LatticeIndex s = queue.front();
      queue.pop_front();
      const double ps = phi.phase(s);
      const double vs = v.phase(s);
      for (const LatticeIndex& d : dirs) {
        const LatticeIndex n = s + d;
        if (phi.has(n) || !edge_in_graph(s, d)) continue;
        phi.set_phase(n, ps + angle_diff(vs, v.phase(n)));
        queue.push_back(n);
      }
    }
  }
  for (const TriangleId& t : tris) {
    const auto vs = vertices(t);
    for (int k = 0; k < 3; ++k) {
      const LatticeIndex a = vs[k], b = vs[(k + 1) % 3];
      const double mismatch =
          phi.phase(b) - phi.phase(a) - angle_diff(v.phase(a), v.phase(b));
      if (std::fabs(mismatch) > monodromy_tol) {
        throw MonodromyError("lift is multivalued around the annulus (nonzero enclosed degree)");
      }
    }
  }
  return phi;
}

double potential_diagnostic(const SpinField& v, const Region& region) {
  const TriangleRule rule = dunavant5();
  KahanSum s;
  for_each_triangle_in(region, v.eps(), [&](const TriangleId& t) {
    const TriangleGeometry g = geometry(t, v.eps());
    const auto raw = v.triangle_phases(t);
    std::array<Vec2, 3> sv{unit_vector(raw[0]), unit_vector(raw[1]), unit_vector(raw[2])};
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const auto& b = rule.points[q];
      const Vec2 val = sv[0] * b[0] + sv[1] * b[1] + sv[2] * b[2];
      const double defect = 1.0 - norm2(val);
      acc += rule.weights[q] * defect * defect;
    }
    s += acc * g.area;
  });
  return s.value();
}

}  // namespace afxy
