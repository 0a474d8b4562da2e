#include <gtest/gtest.h>

#include <random>

#include "afxy/assignment.hpp"
#include "afxy/error.hpp"
#include "afxy/vorticity.hpp"
#include "oracles.hpp"

using namespace afxy;

TEST(Assignment, MatchesPermutationSearch) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(0, 10);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (auto& row : m) {
      for (double& x : row) x = c(rng);
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double s = 0;
      for (int i = 0; i < n; ++i) s += m[i][perm[i]];
      best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Assignment a = solve_assignment(m);
    EXPECT_NEAR(a.cost, best, 1e-9);
    double s = 0;
    for (int i = 0; i < n; ++i) s += m[i][a.row_to_col[i]];
    EXPECT_NEAR(s, a.cost, 1e-9);
  }
}

TEST(FlatNorm, SingleAtom) {
  const Region big = Region::rectangle({-5, -5}, {5, 5});
  AtomicMeasure mu;
  mu.add({0, 0}, 1);
  EXPECT_DOUBLE_EQ(flat_norm(mu, big), 1.0);
  AtomicMeasure near;
  near.add({4.7, 0}, -1);
  EXPECT_NEAR(flat_norm(near, big), 0.3, 1e-12);
}

TEST(FlatNorm, Dipole) {
  AtomicMeasure mu;
  mu.add({0.35, 0.5}, 1);
  mu.add({0.65, 0.5}, -1);
  EXPECT_NEAR(flat_norm(mu, Region::rectangle({0, 0}, {1, 1})), 0.3, 1e-12);
}

TEST(FlatNorm, EmptyIsZero) { EXPECT_EQ(flat_norm(AtomicMeasure{}, Region::disk({0, 0}, 1)), 0.0); }

TEST(FlatNorm, AtomOutsideRegionRejected) {
  AtomicMeasure mu;
  mu.add({2, 0}, 1);
  EXPECT_THROW(flat_norm(mu, Region::disk({0, 0}, 1)), PreconditionError);
}

TEST(FlatNorm, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> pos(0.02, 0.98);
  std::uniform_int_distribution<int> count(1, 6), charge(-2, 2);
  const Region sq = Region::rectangle({0, 0}, {1, 1});
  for (int trial = 0; trial < 100; ++trial) {
    AtomicMeasure mu;
    std::vector<oracle::Charge> ref;
    const int n = count(rng);
    while (static_cast<int>(ref.size()) < n) {
      const int q = charge(rng);
      if (q == 0) continue;
      const Vec2 x{pos(rng), pos(rng)};
      mu.add(x, q);
      ref.push_back({{x.x, x.y}, q});
    }
    const double want = oracle::flat_norm_bruteforce(ref, [](oracle::P p) {
      return std::min({p.x, p.y, 1 - p.x, 1 - p.y});
    });
    EXPECT_NEAR(flat_norm(mu, sq), want, 1e-9);
  }
}

TEST(FlatNorm, DiskAndAnnulusBoundaryDistances) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> ang(-3.14, 3.14), rad(1.05, 1.95);
  const Region an = Region::annulus({0, 0}, 1.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    AtomicMeasure mu;
    std::vector<oracle::Charge> ref;
    for (int k = 0; k < 4; ++k) {
      const Vec2 x = unit_vector(ang(rng)) * rad(rng);
      const int q = k % 2 ? 1 : -1;
      mu.add(x, q);
      ref.push_back({{x.x, x.y}, q});
    }
    const double want = oracle::flat_norm_bruteforce(ref, [](oracle::P p) {
      const double d = std::hypot(p.x, p.y);
      return std::min(d - 1.0, 2.0 - d);
    });
    EXPECT_NEAR(flat_norm(mu, an), want, 1e-9);
  }
}
