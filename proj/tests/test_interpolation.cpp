#include <gtest/gtest.h>

#include <random>

#include "afxy/error.hpp"
#include "afxy/interpolation.hpp"
#include "afxy/recovery.hpp"
#include "afxy/spinfield.hpp"
#include "afxy/vorticity.hpp"
#include "oracles.hpp"

using namespace afxy;

namespace {

constexpr double kThird = 2.0 * oracle::kPi / 3.0;

SpinField filled(double eps, const Region& dom, const std::function<double(Vec2)>& f) {
  return sample_from_continuum(f, eps, dom);
}

double wrap(double x) { return std::remainder(x, 2.0 * oracle::kPi); }

}  // namespace

TEST(Interpolation, LatticePointsReturnSpins) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(-3, 3);
  const double eps = 0.2;
  SpinField v(eps, IndexBox{-3, 3, -3, 3});
  for (int z1 = -3; z1 <= 3; ++z1) {
    for (int z2 = -3; z2 <= 3; ++z2) v.set_phase({z1, z2}, ang(rng));
  }
  for (auto kind : {Interpolant::Kind::Affine, Interpolant::Kind::Geodesic}) {
    const Interpolant g(v, kind);
    for (int z1 = -1; z1 <= 1; ++z1) {
      for (int z2 = -1; z2 <= 1; ++z2) {
        const Vec2 s = g.eval(to_cartesian({z1, z2}, eps));
        const Vec2 w = v.spin({z1, z2});
        EXPECT_NEAR(s.x, w.x, 1e-12);
        EXPECT_NEAR(s.y, w.y, 1e-12);
      }
    }
  }
}

TEST(Interpolation, EdgeMidpoints) {
  SpinField v(1.0, IndexBox{0, 1, 0, 1});
  v.set_phase({0, 0}, 0.0);
  v.set_phase({1, 0}, kThird);
  v.set_phase({0, 1}, 0.1);
  v.set_phase({1, 1}, 0.2);
  const Vec2 mid{0.5, 0.0};
  const Vec2 a = Interpolant(v, Interpolant::Kind::Affine).eval(mid);
  EXPECT_NEAR(a.x, (1 + std::cos(kThird)) / 2, 1e-14);
  EXPECT_NEAR(a.y, std::sin(kThird) / 2, 1e-14);
  EXPECT_LT(norm(a), 1.0);
  const Vec2 g = Interpolant(v, Interpolant::Kind::Geodesic).eval(mid);
  EXPECT_NEAR(norm(g), 1.0, 1e-14);
  EXPECT_NEAR(std::atan2(g.y, g.x), kThird / 2, 1e-14);
  // The short arc wraps through the branch cut.
  v.set_phase({0, 0}, 3.0);
  v.set_phase({1, 0}, -3.0);
  const Vec2 w = Interpolant(v, Interpolant::Kind::Geodesic).eval(mid);
  EXPECT_NEAR(std::fabs(wrap(std::atan2(w.y, w.x) - oracle::kPi)), 0.0, 1e-13);
}

TEST(Interpolation, AffineDirichletIsScaledXy) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ang(-3, 3);
  const double eps = 0.05;
  SpinField v(eps, IndexBox{0, 1, 0, 1});
  const Interpolant::Kind kind = Interpolant::Kind::Affine;
  for (int k = 0; k < 100; ++k) {
    for (int z1 = 0; z1 <= 1; ++z1) {
      for (int z2 = 0; z2 <= 1; ++z2) v.set_phase({z1, z2}, ang(rng));
    }
    const Interpolant g(v, kind);
    for (Orientation o : {Orientation::Up, Orientation::Down}) {
      const TriangleId t{{0, 0}, o};
      EXPECT_NEAR(energy_xy(v, t), std::sqrt(3.0) * eps * eps * g.dirichlet_energy(t), 1e-14);
    }
  }
}

TEST(Interpolation, GeodesicDirichletSandwich) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ang(-3, 3);
  const double eps = 0.05;
  SpinField v(eps, IndexBox{0, 1, 0, 1});
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    for (int z1 = 0; z1 <= 1; ++z1) {
      for (int z2 = 0; z2 <= 1; ++z2) v.set_phase({z1, z2}, ang(rng));
    }
    const Interpolant g(v, Interpolant::Kind::Geodesic);
    for (Orientation o : {Orientation::Up, Orientation::Down}) {
      const TriangleId t{{0, 0}, o};
      if (vorticity(v, t) != 0) {
        EXPECT_THROW(g.dirichlet_energy(t), PreconditionError);
        continue;
      }
      const double xy = energy_xy(v, t);
      const double d = std::sqrt(3.0) * eps * eps * g.dirichlet_energy(t);
      EXPECT_LE(xy, d * (1 + 1e-12) + 1e-18);
      EXPECT_LE(d, oracle::kPi * oracle::kPi / 4 * xy * (1 + 1e-12) + 1e-18);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Interpolation, ConstantFieldHasNoEnergyOrCurrent) {
  const Region dom = Region::disk({0, 0}, 1.0);
  const SpinField v = filled(0.1, dom, [](Vec2) { return 0.9; });
  for (auto kind : {Interpolant::Kind::Affine, Interpolant::Kind::Geodesic}) {
    const Interpolant g(v, kind);
    EXPECT_NEAR(dirichlet_energy(g, Region::disk({0, 0}, 0.8)), 0.0, 1e-14);
    const Vec2 j = g.pre_jacobian({0.13, -0.21});
    EXPECT_NEAR(norm(j), 0.0, 1e-14);
  }
  EXPECT_NEAR(potential_diagnostic(v, Region::disk({0, 0}, 0.8)), 0.0, 1e-14);
}

TEST(Interpolation, LinearPhaseCurrent) {
  const Vec2 a{0.7, -0.4};
  const SpinField v = filled(0.05, Region::disk({0, 0}, 1.0), [&](Vec2 x) { return dot(a, x); });
  const Interpolant g(v, Interpolant::Kind::Geodesic);
  for (const Vec2 x : {Vec2{0.1, 0.2}, Vec2{-0.33, 0.05}, Vec2{0.4, -0.41}}) {
    const Vec2 j = g.pre_jacobian(x);
    EXPECT_NEAR(j.x, a.x / 2, 1e-12);
    EXPECT_NEAR(j.y, a.y / 2, 1e-12);
  }
}

TEST(Interpolation, VortexCurrentFarFromCore) {
  AtomicMeasure mu;
  mu.add({0, 0}, 1);
  const double eps = 1.0 / 64;
  const Recovery rec = build_recovery(mu, eps, Region::disk({0, 0}, 1.0));
  const Interpolant g(rec.v, Interpolant::Kind::Geodesic);
  for (const Vec2 x : {Vec2{0.5, 0.1}, Vec2{-0.3, 0.4}, Vec2{0.05, -0.6}}) {
    const Vec2 j = g.pre_jacobian(x);
    const Vec2 want = perp(x) * (0.5 / norm2(x));
    EXPECT_LT(norm(j - want), 2 * eps / norm(x) * norm(want));
  }
}

TEST(Interpolation, LiftOfConstantIsConstant) {
  const Region an = Region::annulus({0, 0}, 0.3, 0.6);
  const SpinField v = filled(0.05, Region::disk({0, 0}, 1.0), [](Vec2) { return -2.5; });
  const SpinField phi = lift_annulus(v, an);
  std::size_t n = 0;
  phi.for_each_site([&](LatticeIndex, double p) {
    EXPECT_NEAR(p, -2.5, 1e-15);
    ++n;
  });
  EXPECT_GT(n, 100u);
}

TEST(Interpolation, LiftAroundVortexFails) {
  AtomicMeasure mu;
  mu.add({0, 0}, 1);
  const Recovery rec = build_recovery(mu, 1.0 / 32, Region::disk({0, 0}, 1.0));
  EXPECT_THROW(lift_annulus(rec.v, Region::annulus({0, 0}, 0.3, 0.6)), MonodromyError);
}

TEST(Interpolation, LiftEdgeIdentity) {
  const Region an = Region::annulus({0.1, 0}, 0.25, 0.7);
  const SpinField v = filled(1.0 / 32, Region::disk({0, 0}, 1.0), [](Vec2 x) {
    return 3.0 * std::sin(2 * x.x) + 2.0 * x.y * x.y + 40.0;
  });
  const SpinField phi = lift_annulus(v, an);
  for_each_triangle_meeting(an, v.eps(), [&](const TriangleId& t) {
    const auto vs = vertices(t);
    for (int k = 0; k < 3; ++k) {
      const LatticeIndex i = vs[k], j = vs[(k + 1) % 3];
      EXPECT_NEAR(phi.phase(j) - phi.phase(i), angle_diff(v.phase(i), v.phase(j)), 1e-12);
      EXPECT_NEAR(wrap(phi.phase(i) - v.phase(i)), 0.0, 1e-9);
    }
  });
}

TEST(Interpolation, PotentialPositiveOnFrustratedAuxiliary) {
  const Region dom = Region::disk({0, 0}, 1.0);
  const double eps = 0.1;
  const IndexBox box = index_box(dom, eps, 2 * eps);
  SpinField u(eps, box);
  for (int z1 = box.z1_min; z1 <= box.z1_max; ++z1) {
    for (int z2 = box.z2_min; z2 <= box.z2_max; ++z2) {
      u.set_phase({z1, z2}, -(sublattice({z1, z2}) - 1) * kThird);
    }
  }
  EXPECT_GT(potential_diagnostic(to_auxiliary(u), Region::disk({0, 0}, 0.5)), 0.0);
}

TEST(Interpolation, PairingOfSingleVortexIsPiPsi) {
  AtomicMeasure mu;
  mu.add({0.013, -0.021}, 1);
  const double eps = 1.0 / 32;
  const Region dom = Region::disk({0, 0}, 1.0);
  const Recovery rec = build_recovery(mu, eps, dom);
  const Interpolant g(rec.v, Interpolant::Kind::Geodesic);
  // psi = (1 - |x - c|^2 / s^2)^3 on B_s(c).
  const Vec2 c{0.05, 0.02};
  const double s = 0.5;
  const auto psi = [&](Vec2 x) {
    const double q = 1 - norm2(x - c) / (s * s);
    return q > 0 ? q * q * q : 0.0;
  };
  const auto grad = [&](Vec2 x) {
    const double q = 1 - norm2(x - c) / (s * s);
    return q > 0 ? (x - c) * (-6.0 * q * q / (s * s)) : Vec2{};
  };
  const VorticityMeasure vm = vorticity_measure(rec.v, dom);
  double want = 0.0;
  for (const Atom& a : vm.measure.atoms()) want += oracle::kPi * a.charge * psi(a.position);
  EXPECT_NEAR(jacobian_pairing(g, dom, grad), want, 1e-6);
}
