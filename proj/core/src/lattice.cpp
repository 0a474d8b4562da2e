#include "afxy/lattice.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "afxy/error.hpp"

namespace afxy {

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = norm2(ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + ab * t));
}

namespace {

double triangle_distance(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
  const double s1 = cross(b - a, p - a);
  const double s2 = cross(c - b, p - b);
  const double s3 = cross(a - c, p - c);
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  if (!(has_neg && has_pos)) return 0.0;
  return std::min({segment_distance(p, a, b), segment_distance(p, b, c),
                   segment_distance(p, c, a)});
}

int mod3(int v) {
  const int m = v % 3;
  return m < 0 ? m + 3 : m;
}

}  // namespace

std::string to_string(LatticeIndex i) {
  std::ostringstream os;
  os << '(' << i.z1 << ',' << i.z2 << ')';
  return os.str();
}

std::string to_string(const TriangleId& t) {
  return (t.orientation == Orientation::Up ? "Up@" : "Down@") + to_string(t.base);
}

Vec2 to_cartesian(LatticeIndex i, double eps) {
  return {eps * (i.z1 + 0.5 * i.z2), eps * (0.5 * kSqrt3 * i.z2)};
}

Vec2 to_index_coords(Vec2 p, double eps) {
  const double b = p.y / (0.5 * kSqrt3 * eps);
  return {p.x / eps - 0.5 * b, b};
}

int sublattice(LatticeIndex i) { return mod3(i.z1 - i.z2) + 1; }

std::array<LatticeIndex, 3> vertices(const TriangleId& t) {
  const LatticeIndex i = t.base;
  if (t.orientation == Orientation::Up) {
    return {i, i + LatticeIndex{1, 0}, i + LatticeIndex{0, 1}};
  }
  return {i + LatticeIndex{1, 0}, i + LatticeIndex{1, 1}, i + LatticeIndex{0, 1}};
}

std::array<LatticeIndex, 3> vertices_by_sublattice(const TriangleId& t) {
  std::array<LatticeIndex, 3> out{};
  for (const LatticeIndex& v : vertices(t)) out[sublattice(v) - 1] = v;
  return out;
}

Vec2 barycenter(const TriangleId& t, double eps) {
  const auto v = vertices(t);
  return (to_cartesian(v[0], eps) + to_cartesian(v[1], eps) + to_cartesian(v[2], eps)) / 3.0;
}

std::array<TriangleId, 3> neighbors(const TriangleId& t) {
  const LatticeIndex i = t.base;
  if (t.orientation == Orientation::Up) {
    return {TriangleId{i + LatticeIndex{0, -1}, Orientation::Down},
            TriangleId{i, Orientation::Down},
            TriangleId{i + LatticeIndex{-1, 0}, Orientation::Down}};
  }
  return {TriangleId{i + LatticeIndex{1, 0}, Orientation::Up},
          TriangleId{i + LatticeIndex{0, 1}, Orientation::Up},
          TriangleId{i, Orientation::Up}};
}

std::array<TriangleId, 6> triangles_at(LatticeIndex i) {
  return {TriangleId{i, Orientation::Up},
          TriangleId{i + LatticeIndex{-1, 0}, Orientation::Up},
          TriangleId{i + LatticeIndex{0, -1}, Orientation::Up},
          TriangleId{i + LatticeIndex{-1, 0}, Orientation::Down},
          TriangleId{i + LatticeIndex{-1, -1}, Orientation::Down},
          TriangleId{i + LatticeIndex{0, -1}, Orientation::Down}};
}

Location locate(Vec2 p, double eps) {
  const Vec2 q = to_index_coords(p, eps);
  const double fa0 = std::floor(q.x);
  const double fb0 = std::floor(q.y);
  const double fa = q.x - fa0;
  const double fb = q.y - fb0;
  const LatticeIndex base{static_cast<int>(fa0), static_cast<int>(fb0)};
  if (fa + fb <= 1.0) {
    return {{base, Orientation::Up}, {1.0 - fa - fb, fa, fb}};
  }
  return {{base, Orientation::Down}, {1.0 - fb, fa + fb - 1.0, 1.0 - fa}};
}

LatticeIndex nearest_site(Vec2 p, double eps) {
  const Vec2 q = to_index_coords(p, eps);
  const int a0 = static_cast<int>(std::floor(q.x));
  const int b0 = static_cast<int>(std::floor(q.y));
  LatticeIndex best{};
  double best_d = std::numeric_limits<double>::infinity();
  for (int da = -1; da <= 2; ++da) {
    for (int db = -1; db <= 2; ++db) {
      const LatticeIndex c{a0 + da, b0 + db};
      const double d = norm2(to_cartesian(c, eps) - p);
      if (d < best_d || (d == best_d && c < best)) {
        best = c;
        best_d = d;
      }
    }
  }
  return best;
}

Region Region::rectangle(Vec2 lo, Vec2 hi) {
  if (!(lo.x < hi.x && lo.y < hi.y)) {
    throw InvalidArgument("rectangle requires lo < hi componentwise");
  }
  Region g;
  g.kind_ = Kind::Rectangle;
  g.lo_ = lo;
  g.hi_ = hi;
  return g;
}

Region Region::disk(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("disk requires radius > 0");
  Region g;
  g.kind_ = Kind::Disk;
  g.center_ = center;
  g.R_ = radius;
  return g;
}

Region Region::annulus(Vec2 center, double r, double R) {
  if (!(r >= 0.0 && r < R)) throw InvalidArgument("annulus requires 0 <= r < R");
  Region g;
  g.kind_ = Kind::Annulus;
  g.center_ = center;
  g.r_ = r;
  g.R_ = R;
  return g;
}

Vec2 Region::bbox_lo() const {
  if (kind_ == Kind::Rectangle) return lo_;
  return center_ - Vec2{R_, R_};
}

Vec2 Region::bbox_hi() const {
  if (kind_ == Kind::Rectangle) return hi_;
  return center_ + Vec2{R_, R_};
}

double Region::distance_to_boundary(Vec2 p) const {
  switch (kind_) {
    case Kind::Rectangle: {
      const double dx = std::min(p.x - lo_.x, hi_.x - p.x);
      const double dy = std::min(p.y - lo_.y, hi_.y - p.y);
      if (dx >= 0.0 && dy >= 0.0) return std::min(dx, dy);
      return -std::hypot(std::min(dx, 0.0), std::min(dy, 0.0));
    }
    case Kind::Disk:
      return R_ - norm(p - center_);
    case Kind::Annulus: {
      const double d = norm(p - center_);
      return std::min(R_ - d, d - r_);
    }
  }
  return 0.0;
}

bool Region::contains_triangle(Vec2 a, Vec2 b, Vec2 c) const {
  switch (kind_) {
    case Kind::Rectangle:
      for (Vec2 v : {a, b, c}) {
        if (v.x < lo_.x || v.x > hi_.x || v.y < lo_.y || v.y > hi_.y) return false;
      }
      return true;
    case Kind::Disk:
      for (Vec2 v : {a, b, c}) {
        if (norm(v - center_) > R_) return false;
      }
      return true;
    case Kind::Annulus:
      for (Vec2 v : {a, b, c}) {
        if (norm(v - center_) > R_) return false;
      }
      return triangle_distance(center_, a, b, c) > r_;
  }
  return false;
}

bool Region::intersects_triangle(Vec2 a, Vec2 b, Vec2 c) const {
  switch (kind_) {
    case Kind::Rectangle: {
      // Separating axis test against the open rectangle.
      const std::array<Vec2, 3> tri{a, b, c};
      const std::array<Vec2, 4> rect{lo_, Vec2{hi_.x, lo_.y}, hi_, Vec2{lo_.x, hi_.y}};
      std::array<Vec2, 5> axes{Vec2{1, 0}, Vec2{0, 1}, perp(b - a), perp(c - b), perp(a - c)};
      for (Vec2 ax : axes) {
        double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
        double rmin = tmin, rmax = -tmin;
        for (Vec2 v : tri) {
          tmin = std::min(tmin, dot(v, ax));
          tmax = std::max(tmax, dot(v, ax));
        }
        for (Vec2 v : rect) {
          rmin = std::min(rmin, dot(v, ax));
          rmax = std::max(rmax, dot(v, ax));
        }
        if (tmax <= rmin || rmax <= tmin) return false;
      }
      return true;
    }
    case Kind::Disk:
      return triangle_distance(center_, a, b, c) < R_;
    case Kind::Annulus: {
      const double dmax = std::max({norm(a - center_), norm(b - center_), norm(c - center_)});
      return triangle_distance(center_, a, b, c) < R_ && dmax > r_;
    }
  }
  return false;
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Rectangle:
      os << "rectangle[(" << lo_.x << ',' << lo_.y << "),(" << hi_.x << ',' << hi_.y << ")]";
      break;
    case Kind::Disk:
      os << "disk[(" << center_.x << ',' << center_.y << ")," << R_ << ']';
      break;
    case Kind::Annulus:
      os << "annulus[(" << center_.x << ',' << center_.y << ")," << r_ << ',' << R_ << ']';
      break;
  }
  return os.str();
}

IndexBox index_box(const Region& region, double eps, double margin) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const Vec2 lo = region.bbox_lo() - Vec2{margin, margin};
  const Vec2 hi = region.bbox_hi() + Vec2{margin, margin};
  const double h = 0.5 * kSqrt3 * eps;
  IndexBox box;
  box.z2_min = static_cast<int>(std::floor(lo.y / h));
  box.z2_max = static_cast<int>(std::ceil(hi.y / h));
  box.z1_min = static_cast<int>(std::floor(lo.x / eps - 0.5 * box.z2_max));
  box.z1_max = static_cast<int>(std::ceil(hi.x / eps - 0.5 * box.z2_min));
  return box;
}

TriangleScan::TriangleScan(Vec2 lo, Vec2 hi, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const double h = 0.5 * kSqrt3 * eps;
  z2_min = static_cast<int>(std::floor(lo.y / h)) - 1;
  z2_max = static_cast<int>(std::ceil(hi.y / h));
  a_lo = lo.x / eps;
  a_hi = hi.x / eps;
}

bool triangle_in(const Region& region, const TriangleId& t, double eps) {
  const auto v = vertices(t);
  return region.contains_triangle(to_cartesian(v[0], eps), to_cartesian(v[1], eps),
                                  to_cartesian(v[2], eps));
}

std::vector<TriangleId> triangles_in(const Region& region, double eps) {
  std::vector<TriangleId> out;
  for_each_triangle_in(region, eps, [&](const TriangleId& t) { out.push_back(t); });
  return out;
}

}  // namespace afxy
