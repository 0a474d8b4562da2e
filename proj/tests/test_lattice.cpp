#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "afxy/error.hpp"
#include "afxy/lattice.hpp"
#include "oracles.hpp"

using namespace afxy;

TEST(Lattice, ToCartesianExamples) {
  const Vec2 a = to_cartesian({1, 0}, 1.0);
  EXPECT_DOUBLE_EQ(a.x, 1.0);
  EXPECT_DOUBLE_EQ(a.y, 0.0);
  const Vec2 b = to_cartesian({0, 1}, 1.0);
  EXPECT_DOUBLE_EQ(b.x, 0.5);
  EXPECT_NEAR(b.y, std::sqrt(3.0) / 2, 1e-15);
  const Vec2 c = to_cartesian({2, 2}, 0.5);
  EXPECT_DOUBLE_EQ(c.x, 1.5);
  EXPECT_NEAR(c.y, std::sqrt(3.0) / 2, 1e-15);
}

TEST(Lattice, SublatticeExamples) {
  EXPECT_EQ(sublattice({0, 0}), 1);
  EXPECT_EQ(sublattice({1, 0}), 2);
  EXPECT_EQ(sublattice({-1, 2}), 1);
}

TEST(Lattice, SublatticeMatchesBruteForce) {
  for (int z1 = -12; z1 <= 12; ++z1) {
    for (int z2 = -12; z2 <= 12; ++z2) {
      EXPECT_EQ(sublattice({z1, z2}), oracle::sublattice_by_search(z1, z2)) << z1 << "," << z2;
    }
  }
}

TEST(Lattice, TrianglesCarryOneVertexOfEachSublattice) {
  for (int z1 = -5; z1 <= 5; ++z1) {
    for (int z2 = -5; z2 <= 5; ++z2) {
      for (Orientation o : {Orientation::Up, Orientation::Down}) {
        const auto vs = vertices_by_sublattice({{z1, z2}, o});
        for (int k = 0; k < 3; ++k) EXPECT_EQ(sublattice(vs[k]), k + 1);
      }
    }
  }
}

TEST(Lattice, VerticesAreUnitEquilateralCounterclockwise) {
  const double eps = 0.3;
  for (Orientation o : {Orientation::Up, Orientation::Down}) {
    const auto vs = vertices({{2, -3}, o});
    const oracle::P p0 = oracle::site(vs[0].z1, vs[0].z2, eps);
    const oracle::P p1 = oracle::site(vs[1].z1, vs[1].z2, eps);
    const oracle::P p2 = oracle::site(vs[2].z1, vs[2].z2, eps);
    EXPECT_NEAR(oracle::dist(p0, p1), eps, 1e-14);
    EXPECT_NEAR(oracle::dist(p1, p2), eps, 1e-14);
    EXPECT_NEAR(oracle::dist(p2, p0), eps, 1e-14);
    const double area2 = (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x);
    EXPECT_GT(area2, 0.0);
  }
}

namespace {

std::set<LatticeIndex> vertex_set(const TriangleId& t) {
  const auto vs = vertices(t);
  return {vs.begin(), vs.end()};
}

int shared_vertices(const TriangleId& a, const TriangleId& b) {
  const auto sa = vertex_set(a), sb = vertex_set(b);
  int n = 0;
  for (const auto& v : sa) n += static_cast<int>(sb.count(v));
  return n;
}

}  // namespace

TEST(Lattice, NeighborsShareAnEdgeByGeometricMatching) {
  for (Orientation o : {Orientation::Up, Orientation::Down}) {
    const TriangleId t{{1, -2}, o};
    std::set<TriangleId> expected;
    for (int z1 = -4; z1 <= 5; ++z1) {
      for (int z2 = -6; z2 <= 2; ++z2) {
        for (Orientation p : {Orientation::Up, Orientation::Down}) {
          const TriangleId c{{z1, z2}, p};
          if (c != t && shared_vertices(c, t) == 2) expected.insert(c);
        }
      }
    }
    const auto nb = neighbors(t);
    EXPECT_EQ(std::set<TriangleId>(nb.begin(), nb.end()), expected);
    for (const TriangleId& n : nb) {
      EXPECT_NE(n.orientation, t.orientation);
      const auto back = neighbors(n);
      EXPECT_NE(std::find(back.begin(), back.end(), t), back.end());
    }
  }
}

TEST(Lattice, UpAtOriginNeighbors) {
  const auto nb = neighbors({{0, 0}, Orientation::Up});
  const std::set<TriangleId> got(nb.begin(), nb.end());
  const std::set<TriangleId> want{{{0, 0}, Orientation::Down},
                                  {{-1, 0}, Orientation::Down},
                                  {{0, -1}, Orientation::Down}};
  EXPECT_EQ(got, want);
}

TEST(Lattice, TrianglesAtSiteContainIt) {
  const LatticeIndex i{3, -1};
  const auto ts = triangles_at(i);
  EXPECT_EQ(std::set<TriangleId>(ts.begin(), ts.end()).size(), 6u);
  for (const TriangleId& t : ts) EXPECT_EQ(vertex_set(t).count(i), 1u);
}

TEST(Lattice, LocateReturnsContainingTriangleAndWeights) {
  const double eps = 0.1;
  for (int k = 0; k < 200; ++k) {
    const Vec2 p{0.0137 * k - 1.3, 0.0291 * ((k * 7) % 50) - 0.6};
    const Location loc = locate(p, eps);
    const auto vs = vertices(loc.triangle);
    Vec2 q{};
    double wsum = 0.0;
    for (int j = 0; j < 3; ++j) {
      EXPECT_GE(loc.weights[j], -1e-12);
      q = q + to_cartesian(vs[j], eps) * loc.weights[j];
      wsum += loc.weights[j];
    }
    EXPECT_NEAR(wsum, 1.0, 1e-12);
    EXPECT_NEAR(q.x, p.x, 1e-12);
    EXPECT_NEAR(q.y, p.y, 1e-12);
  }
}

TEST(Lattice, NearestSiteIsNearest) {
  const double eps = 0.25;
  for (int k = 0; k < 100; ++k) {
    const Vec2 p{0.071 * k - 3.0, 0.113 * ((k * 13) % 40) - 2.0};
    const LatticeIndex n = nearest_site(p, eps);
    const double dn = norm(to_cartesian(n, eps) - p);
    for (int z1 = n.z1 - 3; z1 <= n.z1 + 3; ++z1) {
      for (int z2 = n.z2 - 3; z2 <= n.z2 + 3; ++z2) {
        EXPECT_LE(dn, norm(to_cartesian({z1, z2}, eps) - p) + 1e-15);
      }
    }
  }
}

namespace {

// Exhaustive enumeration over a large index window with an independent
// vertex-containment check.
std::set<TriangleId> brute_triangles(const std::function<bool(oracle::P, oracle::P, oracle::P)>& in,
                                     double eps, int n) {
  std::set<TriangleId> out;
  for (int z1 = -n; z1 <= n; ++z1) {
    for (int z2 = -n; z2 <= n; ++z2) {
      for (Orientation o : {Orientation::Up, Orientation::Down}) {
        const TriangleId t{{z1, z2}, o};
        const auto vs = vertices(t);
        const auto p = [&](int k) { return oracle::site(vs[k].z1, vs[k].z2, eps); };
        if (in(p(0), p(1), p(2))) out.insert(t);
      }
    }
  }
  return out;
}

std::set<TriangleId> as_set(const std::vector<TriangleId>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Lattice, TrianglesInUnitSquare) {
  const auto got = triangles_in(Region::rectangle({0, 0}, {1, 1}), 1.0);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0], (TriangleId{{0, 0}, Orientation::Up}));
}

TEST(Lattice, TinyDiskHasNoTriangles) {
  EXPECT_TRUE(triangles_in(Region::disk({0, 0}, 0.1), 1.0).empty());
}

TEST(Lattice, TrianglesInRectangleMatchBruteForce) {
  const double eps = 0.13;
  const auto in = [](oracle::P a, oracle::P b, oracle::P c) {
    for (oracle::P p : {a, b, c}) {
      if (p.x < -0.7 || p.x > 1.1 || p.y < -0.3 || p.y > 0.9) return false;
    }
    return true;
  };
  EXPECT_EQ(as_set(triangles_in(Region::rectangle({-0.7, -0.3}, {1.1, 0.9}), eps)),
            brute_triangles(in, eps, 30));
}

TEST(Lattice, TrianglesInDiskMatchBruteForce) {
  const double eps = 0.11;
  const oracle::P c{0.2, -0.1};
  const auto in = [&](oracle::P a, oracle::P b, oracle::P d) {
    return oracle::dist(a, c) <= 0.9 && oracle::dist(b, c) <= 0.9 && oracle::dist(d, c) <= 0.9;
  };
  EXPECT_EQ(as_set(triangles_in(Region::disk({0.2, -0.1}, 0.9), eps)), brute_triangles(in, eps, 30));
}

TEST(Lattice, TrianglesInAnnulusMatchBruteForce) {
  const double eps = 0.25;
  const oracle::P o{0, 0};
  const auto in = [&](oracle::P a, oracle::P b, oracle::P c) {
    for (oracle::P p : {a, b, c}) {
      if (!(oracle::dist(p, o) > 1.0 && oracle::dist(p, o) <= 3.0)) return false;
    }
    return oracle::triangle_distance(o, a, b, c) > 1.0;
  };
  const auto got = as_set(triangles_in(Region::annulus({0, 0}, 1.0, 3.0), eps));
  EXPECT_EQ(got, brute_triangles(in, eps, 30));
  EXPECT_FALSE(got.empty());
}

TEST(Lattice, RegionValidation) {
  EXPECT_THROW(Region::rectangle({1, 0}, {0, 1}), InvalidArgument);
  EXPECT_THROW(Region::disk({0, 0}, -1.0), InvalidArgument);
  EXPECT_THROW(Region::annulus({0, 0}, 2.0, 1.0), InvalidArgument);
}

TEST(Lattice, DistanceToBoundary) {
  const Region sq = Region::rectangle({0, 0}, {1, 1});
  EXPECT_NEAR(sq.distance_to_boundary({0.5, 0.5}), 0.5, 1e-15);
  EXPECT_NEAR(sq.distance_to_boundary({0.1, 0.7}), 0.1, 1e-15);
  EXPECT_LT(sq.distance_to_boundary({1.5, 0.5}), 0.0);
  const Region an = Region::annulus({0, 0}, 1.0, 2.0);
  EXPECT_NEAR(an.distance_to_boundary({1.2, 0.0}), 0.2, 1e-15);
  EXPECT_NEAR(an.distance_to_boundary({0.0, 1.9}), 0.1, 1e-15);
}
