#include <algorithm>
#include <limits>

#include "afxy/assignment.hpp"
#include "afxy/error.hpp"
#include "afxy/summation.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

Assignment solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  Assignment out;
  out.row_to_col.assign(static_cast<std::size_t>(n), -1);
  if (n == 0) return out;
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) throw InvalidArgument("cost matrix must be square");
  }
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is a virtual root.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  KahanSum total;
  for (int j = 1; j <= n; ++j) {
    out.row_to_col[p[j] - 1] = j - 1;
    total += cost[p[j] - 1][j - 1];
  }
  out.cost = total.value();
  return out;
}

double flat_norm(const AtomicMeasure& mu, const Region& region) {
  std::vector<Vec2> pos, neg;
  for (const Atom& a : mu.atoms()) {
    if (!(region.distance_to_boundary(a.position) > 0.0)) {
      throw PreconditionError("atom on or outside the region boundary");
    }
    auto& dst = a.charge > 0 ? pos : neg;
    for (int k = 0; k < std::abs(a.charge); ++k) dst.push_back(a.position);
  }
  const std::size_t np = pos.size(), nn = neg.size();
  if (np + nn == 0) return 0.0;
  auto sink = [&](Vec2 x) { return std::min(1.0, region.distance_to_boundary(x)); };
  // Rows: positives then one sink slot per negative.  Columns: negatives then
  // one sink slot per positive.
  const std::size_t n = np + nn;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < np; ++i) {
    const double si = sink(pos[i]);
    for (std::size_t j = 0; j < nn; ++j) {
      cost[i][j] = std::min(norm(pos[i] - neg[j]), si + sink(neg[j]));
    }
    for (std::size_t j = nn; j < n; ++j) cost[i][j] = si;
  }
  for (std::size_t i = np; i < n; ++i) {
    for (std::size_t j = 0; j < nn; ++j) cost[i][j] = sink(neg[j]);
  }
  return solve_assignment(cost).cost;
}

}  // namespace afxy
