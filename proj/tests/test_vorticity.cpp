#include <gtest/gtest.h>

#include <random>

#include "afxy/error.hpp"
#include "afxy/recovery.hpp"
#include "afxy/spinfield.hpp"
#include "afxy/vorticity.hpp"
#include "oracles.hpp"

using namespace afxy;

namespace {

constexpr double kThird = 2.0 * oracle::kPi / 3.0;

SpinField filled(double eps, IndexBox box, const std::function<double(LatticeIndex)>& f) {
  SpinField u(eps, box);
  for (int z1 = box.z1_min; z1 <= box.z1_max; ++z1) {
    for (int z2 = box.z2_min; z2 <= box.z2_max; ++z2) u.set_phase({z1, z2}, f({z1, z2}));
  }
  return u;
}

// Up@(0,0) visits (0,0), (1,0), (0,1) counterclockwise.
SpinField one_triangle(double a, double b, double c) {
  SpinField u(1.0, IndexBox{0, 1, 0, 1});
  u.set_phase({0, 0}, a);
  u.set_phase({1, 0}, b);
  u.set_phase({0, 1}, c);
  return u;
}

const TriangleId kUp{{0, 0}, Orientation::Up};

}  // namespace

TEST(Vorticity, AngleDiffExamples) {
  EXPECT_DOUBLE_EQ(angle_diff(0, oracle::kPi / 2), oracle::kPi / 2);
  EXPECT_NEAR(angle_diff(0, 3 * oracle::kPi / 2), -oracle::kPi / 2, 1e-15);
  EXPECT_DOUBLE_EQ(angle_diff(0, oracle::kPi), oracle::kPi);
  EXPECT_NEAR(angle_diff(1.0, 1.0 + 7 * oracle::kPi / 3), oracle::kPi / 3, 1e-14);
}

TEST(Vorticity, TriangleExamples) {
  EXPECT_EQ(vorticity(one_triangle(0, kThird, 2 * kThird), kUp), 1);
  EXPECT_EQ(vorticity(one_triangle(0.3, 0.3, 0.3), kUp), 0);
  EXPECT_EQ(vorticity(one_triangle(0, -kThird, -2 * kThird), kUp), -1);
}

TEST(Vorticity, TriangleChargeMatchesWindingOfSpins) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-10, 10);
  for (int k = 0; k < 1000; ++k) {
    const double a = ang(rng), b = ang(rng), c = ang(rng);
    const int w =
        oracle::winding({{std::cos(a), std::sin(a)}, {std::cos(b), std::sin(b)}, {std::cos(c), std::sin(c)}});
    EXPECT_EQ(vorticity(one_triangle(a, b, c), kUp), w);
  }
}

TEST(Vorticity, ConstantFieldHasEmptyMeasure) {
  const Region dom = Region::rectangle({0, 0}, {1, 1});
  const SpinField v = filled(0.1, index_box(dom, 0.1, 0.2), [](LatticeIndex) { return 2.0; });
  EXPECT_TRUE(vorticity_measure(v, dom).measure.empty());
}

TEST(Vorticity, RecoveryOfPointVortexHasUnitCharge) {
  AtomicMeasure mu;
  mu.add({0.5, 0.5}, 1);
  const Region dom = Region::rectangle({0, 0}, {1, 1});
  const double eps = 1.0 / 64;
  const Recovery rec = build_recovery(mu, eps, dom);
  const VorticityMeasure vm = vorticity_measure(rec.v, dom);
  EXPECT_EQ(vm.measure.total(), 1);
  EXPECT_EQ(vm.measure.mass(), 1);
  for (const Atom& a : vm.measure.atoms()) EXPECT_LT(norm(a.position - Vec2{0.5, 0.5}), 2 * eps);
}

TEST(Vorticity, MassControlledByXyEnergy) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(-oracle::kPi, oracle::kPi);
  const Region dom = Region::rectangle({0, 0}, {1, 1});
  const double eps = 1.0 / 16;
  for (int trial = 0; trial < 10; ++trial) {
    const SpinField v = filled(eps, index_box(dom, eps, 2 * eps), [&](LatticeIndex) { return ang(rng); });
    const double mass = vorticity_measure(v, dom).measure.mass();
    EXPECT_LE(mass, 9.0 / 8.0 * energy_xy(v, dom) / (eps * eps) + 1e-9);
  }
}

TEST(Vorticity, AtomicMeasureAlgebra) {
  AtomicMeasure a;
  a.add({0, 0}, 1);
  a.add({1, 0}, -2);
  EXPECT_EQ(a.mass(), 3);
  EXPECT_EQ(a.total(), -1);
  EXPECT_EQ(a.charge_in({1, 0}, 0.5), -2);
  EXPECT_EQ((a - a).mass(), 0);
  EXPECT_EQ(a.scaled(2).total(), -2);
  EXPECT_THROW(a.add({0, 0}, 0), InvalidArgument);
}

TEST(Vorticity, WindingNumberExamples) {
  std::vector<Vec2> loop;
  for (int k = 0; k < 64; ++k) loop.push_back(unit_vector(2 * oracle::kPi * k / 64) * 0.7);
  EXPECT_EQ(winding_number(loop, [](Vec2 x) { return x * (1.0 / norm(x)); }), 1);
  EXPECT_EQ(winding_number(loop, [](Vec2) { return Vec2{1, 0}; }), 0);
  EXPECT_EQ(winding_number(loop, [](Vec2 x) { return unit_vector(-2 * std::atan2(x.y, x.x)); }), -2);
  // Consecutive samples half a turn apart leave the degree undetermined.
  std::vector<Vec2> coarse;
  for (int k = 0; k < 4; ++k) coarse.push_back(unit_vector(2 * oracle::kPi * k / 4));
  EXPECT_THROW(winding_number(coarse, [](Vec2 x) { return unit_vector(2 * std::atan2(x.y, x.x)); }),
               UnderSamplingError);
}

TEST(Vorticity, ChiralityImplicationsOnGroundStates) {
  const Region dom = Region::rectangle({0, 0}, {1, 1});
  const double eps = 0.1;
  const IndexBox box = index_box(dom, eps, 2 * eps);
  const SpinField plus = filled(eps, box, [](LatticeIndex i) { return (sublattice(i) - 1) * kThird; });
  const ImplicationReport p = chirality_vorticity_implications(plus, dom, 0.2, 0.06);
  EXPECT_TRUE(p.ok());
  EXPECT_EQ(p.charged, 0u);
  const SpinField minus = filled(eps, box, [](LatticeIndex i) { return -(sublattice(i) - 1) * kThird; });
  const ImplicationReport m = chirality_vorticity_implications(minus, dom, 0.2, 0.06);
  EXPECT_TRUE(m.ok());
  EXPECT_EQ(m.charged, m.triangles);
  const VorticityMeasure vm = vorticity_measure(to_auxiliary(minus), dom);
  EXPECT_EQ(vm.measure.size(), m.triangles);
  for (const Atom& a : vm.measure.atoms()) {
    EXPECT_EQ(std::abs(a.charge), 1);
  }
}

TEST(Vorticity, RecoveryFieldFarFromCenterIsNeutral) {
  AtomicMeasure mu;
  mu.add({0, 0}, 1);
  const Region dom = Region::disk({0, 0}, 1.0);
  const Recovery rec = build_recovery(mu, 1.0 / 32, dom);
  const Region far = Region::annulus({0, 0}, 0.3, 0.9);
  EXPECT_TRUE(vorticity_measure(rec.v, far).measure.empty());
  EXPECT_TRUE(chirality_vorticity_implications(rec.u, far, 0.2, 0.06).ok());
}

TEST(Vorticity, RoughXyBound) {
  SpinField g(1.0, IndexBox{0, 1, 0, 1});
  g.set_phase({0, 0}, 0);
  g.set_phase({1, 0}, kThird);
  g.set_phase({0, 1}, -kThird);
  EXPECT_DOUBLE_EQ(rough_xy_bound_check(g, kUp), 1.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> small(-0.05, 0.05);
  for (int k = 0; k < 100; ++k) {
    g.set_phase({0, 0}, small(rng));
    g.set_phase({1, 0}, kThird + small(rng));
    g.set_phase({0, 1}, -kThird + small(rng));
    const double r = rough_xy_bound_check(g, kUp);
    EXPECT_GT(r, 0.0);
    EXPECT_LE(r, 2.0);
  }
}
