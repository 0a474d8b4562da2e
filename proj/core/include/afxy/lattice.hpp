#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace afxy {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSqrt3 = 1.73205080756887729353;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Distance from p to the closed segment [a, b].
double segment_distance(Vec2 p, Vec2 a, Vec2 b);

struct LatticeIndex {
  int z1 = 0;
  int z2 = 0;

  LatticeIndex operator+(LatticeIndex o) const { return {z1 + o.z1, z2 + o.z2}; }
  LatticeIndex operator-(LatticeIndex o) const { return {z1 - o.z1, z2 - o.z2}; }
  auto operator<=>(const LatticeIndex&) const = default;
};

enum class Orientation : std::uint8_t { Up, Down };

struct TriangleId {
  LatticeIndex base;
  Orientation orientation = Orientation::Up;

  auto operator<=>(const TriangleId&) const = default;
};

std::string to_string(LatticeIndex i);
std::string to_string(const TriangleId& t);

// Physical position eps * (z1 e1 + z2 e2).
Vec2 to_cartesian(LatticeIndex i, double eps);

// Real-valued index coordinates (a, b) with p = eps * (a e1 + b e2).
Vec2 to_index_coords(Vec2 p, double eps);

// Sublattice label in {1, 2, 3}.
int sublattice(LatticeIndex i);

// Vertices in counterclockwise geometric order.
std::array<LatticeIndex, 3> vertices(const TriangleId& t);

// Vertices ordered by sublattice label 1, 2, 3.
std::array<LatticeIndex, 3> vertices_by_sublattice(const TriangleId& t);

Vec2 barycenter(const TriangleId& t, double eps);

// The three triangles sharing an edge with t.
std::array<TriangleId, 3> neighbors(const TriangleId& t);

// The six triangles having i as a vertex.
std::array<TriangleId, 6> triangles_at(LatticeIndex i);

struct Location {
  TriangleId triangle;
  std::array<double, 3> weights;  // barycentric, matching vertices(triangle)
};

// Triangle containing p.  Points on shared edges resolve to the Up triangle
// of the enclosing rhombus cell.
Location locate(Vec2 p, double eps);

// Nearest lattice site to p; ties are broken by the lexicographically
// smallest index.
LatticeIndex nearest_site(Vec2 p, double eps);

struct IndexBox {
  int z1_min = 0, z1_max = -1;
  int z2_min = 0, z2_max = -1;

  bool contains(LatticeIndex i) const {
    return i.z1 >= z1_min && i.z1 <= z1_max && i.z2 >= z2_min && i.z2 <= z2_max;
  }
  std::int64_t width() const { return z1_max - z1_min + 1; }
  std::int64_t height() const { return z2_max - z2_min + 1; }
  std::int64_t size() const { return width() > 0 && height() > 0 ? width() * height() : 0; }
};

class Region {
 public:
  enum class Kind { Rectangle, Disk, Annulus };

  static Region rectangle(Vec2 lo, Vec2 hi);
  static Region disk(Vec2 center, double radius);
  static Region annulus(Vec2 center, double r, double R);

  Kind kind() const { return kind_; }
  Vec2 lo() const { return lo_; }
  Vec2 hi() const { return hi_; }
  Vec2 center() const { return center_; }
  double inner_radius() const { return r_; }
  double outer_radius() const { return R_; }

  // Closed axis-aligned bounding box.
  Vec2 bbox_lo() const;
  Vec2 bbox_hi() const;

  // Signed distance to the boundary: positive inside, 0 on the boundary,
  // negative outside.
  double distance_to_boundary(Vec2 p) const;
  bool contains(Vec2 p) const { return distance_to_boundary(p) >= 0.0; }

  // Closed containment of the triangle with the given vertices.  For annuli
  // the triangle must also avoid the closed inner disk.
  bool contains_triangle(Vec2 a, Vec2 b, Vec2 c) const;

  // True when the triangle meets the open region.
  bool intersects_triangle(Vec2 a, Vec2 b, Vec2 c) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Rectangle;
  Vec2 lo_{}, hi_{};
  Vec2 center_{};
  double r_ = 0.0, R_ = 0.0;
};

// Sites whose physical position lies in the region's bounding box grown by
// `margin` (physical units).
IndexBox index_box(const Region& region, double eps, double margin);

bool triangle_in(const Region& region, const TriangleId& t, double eps);

// Rows of triangle base indices whose triangles can touch the box [lo, hi].
struct TriangleScan {
  int z2_min = 0, z2_max = -1;
  double a_lo = 0.0, a_hi = 0.0;  // x range in units of eps

  TriangleScan(Vec2 lo, Vec2 hi, double eps);
  int z1_min(int z2) const { return static_cast<int>(std::floor(a_lo - 0.5 * z2)) - 2; }
  int z1_max(int z2) const { return static_cast<int>(std::ceil(a_hi - 0.5 * z2)) + 1; }
};

// Visits the triangles contained in the region in (z2, z1, orientation) order.
template <class Fn>
void for_each_triangle_in(const Region& region, double eps, Fn&& fn) {
  const TriangleScan scan(region.bbox_lo(), region.bbox_hi(), eps);
  for (int z2 = scan.z2_min; z2 <= scan.z2_max; ++z2) {
    const int hi = scan.z1_max(z2);
    for (int z1 = scan.z1_min(z2); z1 <= hi; ++z1) {
      for (Orientation o : {Orientation::Up, Orientation::Down}) {
        const TriangleId t{{z1, z2}, o};
        if (triangle_in(region, t, eps)) fn(t);
      }
    }
  }
}

// Visits every triangle meeting the open region, same order.
template <class Fn>
void for_each_triangle_meeting(const Region& region, double eps, Fn&& fn) {
  const TriangleScan scan(region.bbox_lo(), region.bbox_hi(), eps);
  for (int z2 = scan.z2_min; z2 <= scan.z2_max; ++z2) {
    const int hi = scan.z1_max(z2);
    for (int z1 = scan.z1_min(z2); z1 <= hi; ++z1) {
      for (Orientation o : {Orientation::Up, Orientation::Down}) {
        const TriangleId t{{z1, z2}, o};
        const auto v = vertices(t);
        if (region.intersects_triangle(to_cartesian(v[0], eps), to_cartesian(v[1], eps),
                                       to_cartesian(v[2], eps))) {
          fn(t);
        }
      }
    }
  }
}

std::vector<TriangleId> triangles_in(const Region& region, double eps);

}  // namespace afxy
