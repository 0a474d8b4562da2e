#include "afxy/spinfield.hpp"

#include "afxy/error.hpp"
#include "afxy/summation.hpp"

namespace afxy {

namespace {

constexpr double kThird = kTwoPi / 3.0;

double sq_chord(double a, double b) { return 2.0 - 2.0 * std::cos(a - b); }

}  // namespace

SpinField::SpinField(double eps, IndexBox box) : eps_(eps), box_(box) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  phase_.assign(static_cast<std::size_t>(box.size()), std::numeric_limits<double>::quiet_NaN());
}

SpinField SpinField::for_region(double eps, const Region& region) {
  return SpinField(eps, index_box(region, eps, 2.0 * eps));
}

double SpinField::phase(LatticeIndex i) const {
  if (!box_.contains(i)) throw UndefinedSite("site " + to_string(i) + " outside field support");
  const double p = phase_[offset(i)];
  if (std::isnan(p)) throw UndefinedSite("site " + to_string(i) + " has no phase");
  return p;
}

void SpinField::set_phase(LatticeIndex i, double theta) {
  if (!box_.contains(i)) throw UndefinedSite("site " + to_string(i) + " outside field support");
  if (!std::isfinite(theta)) throw InvalidArgument("phase must be finite");
  phase_[offset(i)] = theta;
}

void SpinField::clear(LatticeIndex i) {
  if (box_.contains(i)) phase_[offset(i)] = std::numeric_limits<double>::quiet_NaN();
}

std::size_t SpinField::defined_count() const {
  std::size_t n = 0;
  for (double p : phase_) n += std::isnan(p) ? 0 : 1;
  return n;
}

std::array<double, 3> SpinField::triangle_phases(const TriangleId& t) const {
  const auto v = vertices(t);
  return {phase(v[0]), phase(v[1]), phase(v[2])};
}

double energy_afxy(const SpinField& u, const TriangleId& t) {
  const auto p = u.triangle_phases(t);
  const double sx = std::cos(p[0]) + std::cos(p[1]) + std::cos(p[2]);
  const double sy = std::sin(p[0]) + std::sin(p[1]) + std::sin(p[2]);
  return u.eps() * u.eps() * (sx * sx + sy * sy);
}

double energy_xy(const SpinField& v, const TriangleId& t) {
  const auto p = v.triangle_phases(t);
  return 0.5 * v.eps() * v.eps() *
         (sq_chord(p[0], p[1]) + sq_chord(p[1], p[2]) + sq_chord(p[2], p[0]));
}

double energy_afxy(const SpinField& u, const Region& region) {
  KahanSum s;
  for_each_triangle_in(region, u.eps(), [&](const TriangleId& t) { s += energy_afxy(u, t); });
  return s.value();
}

double energy_xy(const SpinField& v, const Region& region) {
  KahanSum s;
  for_each_triangle_in(region, v.eps(), [&](const TriangleId& t) { s += energy_xy(v, t); });
  return s.value();
}

double chirality(const SpinField& u, const TriangleId& t) {
  const auto v = vertices_by_sublattice(t);
  const double ti = u.phase(v[0]);
  const double tj = u.phase(v[1]);
  const double tk = u.phase(v[2]);
  return 2.0 / (3.0 * kSqrt3) * (std::sin(tj - ti) + std::sin(tk - tj) + std::sin(ti - tk));
}

double auxiliary_phase(LatticeIndex i, double theta) {
  switch (sublattice(i)) {
    case 2:
      return theta - kThird;
    case 3:
      return theta + kThird;
    default:
      return theta;
  }
}

double original_phase(LatticeIndex i, double psi) {
  switch (sublattice(i)) {
    case 2:
      return psi + kThird;
    case 3:
      return psi - kThird;
    default:
      return psi;
  }
}

SpinField to_auxiliary(const SpinField& u) {
  SpinField v(u.eps(), u.box());
  u.for_each_site([&](LatticeIndex i, double p) { v.set_phase(i, auxiliary_phase(i, p)); });
  return v;
}

SpinField from_auxiliary(const SpinField& v) {
  SpinField u(v.eps(), v.box());
  v.for_each_site([&](LatticeIndex i, double p) { u.set_phase(i, original_phase(i, p)); });
  return u;
}

double energy_identity_residual(const SpinField& u, const TriangleId& t) {
  const auto vs = vertices(t);
  SpinField v(u.eps(), IndexBox{t.base.z1, t.base.z1 + 1, t.base.z2, t.base.z2 + 1});
  for (const LatticeIndex& i : vs) v.set_phase(i, auxiliary_phase(i, u.phase(i)));
  const double e2 = u.eps() * u.eps();
  return energy_afxy(u, t) - 4.0 * energy_xy(v, t) + 9.0 * e2 * (1.0 - chirality(u, t));
}

BoundsCheck comparable_bounds_check(const SpinField& u, const TriangleId& t, double lambda,
                                    double eta) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidArgument("lambda must lie in (0,1)");
  if (chirality(u, t) <= 1.0 - eta) return BoundsCheck::NotApplicable;
  const auto vs = vertices(t);
  SpinField v(u.eps(), IndexBox{t.base.z1, t.base.z1 + 1, t.base.z2, t.base.z2 + 1});
  for (const LatticeIndex& i : vs) v.set_phase(i, auxiliary_phase(i, u.phase(i)));
  const double e = energy_afxy(u, t);
  const double xy = energy_xy(v, t);
  const double slack = 1e-14 * u.eps() * u.eps();
  if (e < (1.0 - lambda) * xy - slack || e > (1.0 + lambda) * xy + slack) {
    throw InvariantViolation("comparable bounds fail on " + to_string(t) +
                             " for the configured eta");
  }
  return BoundsCheck::Holds;
}

double sublattice_xy_energy(const SpinField& u, const Region& region) {
  const double eps = u.eps();
  const LatticeIndex a{1, 1};
  const LatticeIndex b{-1, 2};
  const double w = 1.5 * eps * eps;
  KahanSum s;
  auto add = [&](LatticeIndex p, LatticeIndex q, LatticeIndex r) {
    if (!region.contains_triangle(to_cartesian(p, eps), to_cartesian(q, eps),
                                  to_cartesian(r, eps))) {
      return;
    }
    const double tp = u.phase(p), tq = u.phase(q), tr = u.phase(r);
    s += w * (sq_chord(tp, tq) + sq_chord(tq, tr) + sq_chord(tr, tp));
  };
  const IndexBox box = index_box(region, eps, 2.0 * eps);
  for (int z2 = box.z2_min - 2; z2 <= box.z2_max; ++z2) {
    for (int z1 = box.z1_min - 2; z1 <= box.z1_max + 2; ++z1) {
      const LatticeIndex p{z1, z2};
      if (sublattice(p) != 1) continue;
      add(p, p + a, p + b);
      add(p + a, p + a + b, p + b);
    }
  }
  return s.value();
}

SpinField sample_from_continuum(const PhaseFn& phase_fn, double eps, const Region& region,
                                const std::vector<Vec2>& singularities) {
  SpinField f = SpinField::for_region(eps, region);
  const IndexBox& box = f.box();
  const double tol = 1e-9 * eps;
  for (int z2 = box.z2_min; z2 <= box.z2_max; ++z2) {
    for (int z1 = box.z1_min; z1 <= box.z1_max; ++z1) {
      const LatticeIndex i{z1, z2};
      const Vec2 x = to_cartesian(i, eps);
      bool singular = false;
      for (const Vec2& s : singularities) {
        if (norm(x - s) <= tol) {
          singular = true;
          break;
        }
      }
      f.set_phase(i, singular ? 0.0 : phase_fn(x));
    }
  }
  return f;
}

}  // namespace afxy
