#include "afxy/ballconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "afxy/error.hpp"

namespace afxy {

namespace {

constexpr double kRelTol = 1e-12;

bool closed_touch(const Ball& a, const Ball& b) {
  return norm(a.center - b.center) <= (a.radius + b.radius) * (1.0 + kRelTol);
}

struct Active {
  Ball ball;      // radius at epoch start
  double born = 0.0;
};

// Repeatedly merges connected components of the closed-intersection graph
// until the family is pairwise disjoint.  Returns true if anything merged.
bool merge_phase(std::vector<Active>& act, double time) {
  bool merged_any = false;
  for (;;) {
    const std::size_t n = act.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (closed_touch(act[i].ball, act[j].ball)) {
          parent[find(i)] = find(j);
          any = true;
        }
      }
    }
    if (!any) return merged_any;
    merged_any = true;
    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<Active> next;
    for (const auto& g : groups) {
      if (g.empty()) continue;
      if (g.size() == 1) {
        next.push_back(act[g[0]]);
        continue;
      }
      std::vector<Ball> members;
      for (std::size_t i : g) members.push_back(act[i].ball);
      next.push_back({merge_cluster(members), time});
    }
    // Preserve a deterministic order: by center x, then y.
    std::sort(next.begin(), next.end(), [](const Active& a, const Active& b) {
      return a.ball.center.x != b.ball.center.x ? a.ball.center.x < b.ball.center.x
                                                : a.ball.center.y < b.ball.center.y;
    });
    act = std::move(next);
  }
}

}  // namespace

Ball enclosing_ball(const Ball& a, const Ball& b) {
  const double d = norm(b.center - a.center);
  const Ball& big = a.radius >= b.radius ? a : b;
  const Ball& small = a.radius >= b.radius ? b : a;
  if (d + small.radius <= big.radius) return big;
  const double R = 0.5 * (a.radius + b.radius + d);
  const Vec2 dir = (b.center - a.center) / d;
  return {a.center + dir * (R - a.radius), R};
}

Ball merge_cluster(const std::vector<Ball>& balls) {
  if (balls.empty()) throw InvalidArgument("merge_cluster needs at least one ball");
  std::vector<Ball> rest = balls;
  std::stable_sort(rest.begin(), rest.end(),
                   [](const Ball& a, const Ball& b) { return a.radius > b.radius; });
  Ball acc = rest.front();
  rest.erase(rest.begin());
  while (!rest.empty()) {
    // rest stays sorted by decreasing radius; take the first that touches.
    auto it = std::find_if(rest.begin(), rest.end(),
                           [&](const Ball& b) { return closed_touch(acc, b); });
    if (it == rest.end()) it = rest.begin();
    acc = enclosing_ball(acc, *it);
    rest.erase(it);
  }
  return acc;
}

BallTrace ball_construct(const std::vector<Ball>& initial, const AtomicMeasure& mu, double sigma,
                         const std::vector<double>& query_times) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be nonnegative");
  for (std::size_t k = 0; k < query_times.size(); ++k) {
    if (!(query_times[k] >= 0.0) || (k > 0 && query_times[k] < query_times[k - 1])) {
      throw InvalidArgument("query times must be nondecreasing and nonnegative");
    }
  }
  for (const Ball& b : initial) {
    if (!(b.radius > 0.0)) throw InvalidArgument("initial radii must be positive");
  }
  for (std::size_t i = 0; i < initial.size(); ++i) {
    for (std::size_t j = i + 1; j < initial.size(); ++j) {
      const double reach = initial[i].radius + initial[j].radius;
      if (norm(initial[i].center - initial[j].center) < reach * (1.0 - kRelTol)) {
        throw InvalidArgument("initial balls overlap");
      }
    }
  }
  for (const Atom& a : mu.atoms()) {
    const bool inside = std::any_of(initial.begin(), initial.end(), [&](const Ball& b) {
      return norm(a.position - b.center) < b.radius;
    });
    if (!inside) throw PreconditionError("measure not supported in the initial balls");
  }

  BallTrace trace;
  trace.initial = initial;
  trace.sigma = sigma;

  std::vector<Active> act;
  for (const Ball& b : initial) act.push_back({{b.center, b.radius + sigma}, 0.0});
  std::vector<double> merges;
  double epoch = 0.0;
  if (merge_phase(act, 0.0)) merges.push_back(0.0);

  auto snapshot = [&](double t) {
    BallFamily f;
    f.time = t;
    const double scale = (1.0 + t) / (1.0 + epoch);
    for (const Active& a : act) {
      const Ball b{a.ball.center, a.ball.radius * scale};
      f.balls.push_back(b);
      f.born.push_back(a.born);
      int q = 0;
      for (const Atom& at : mu.atoms()) {
        if (norm(at.position - b.center) < b.radius) q += at.charge;
      }
      f.charges.push_back(q);
    }
    f.merging_times = merges;
    return f;
  };

  for (double tq : query_times) {
    for (;;) {
      // Next touching time among the current balls.
      double next = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < act.size(); ++i) {
        for (std::size_t j = i + 1; j < act.size(); ++j) {
          const double d = norm(act[i].ball.center - act[j].ball.center);
          const double t = (1.0 + epoch) * d / (act[i].ball.radius + act[j].ball.radius) - 1.0;
          next = std::min(next, t);
        }
      }
      if (next > tq) break;
      const double scale = (1.0 + next) / (1.0 + epoch);
      for (Active& a : act) a.ball.radius *= scale;
      epoch = next;
      merge_phase(act, next);
      merges.push_back(next);
    }
    trace.families.push_back(snapshot(tq));
  }
  return trace;
}

PropertyReport verify_properties(const BallTrace& trace, const AtomicMeasure& mu) {
  PropertyReport rep;
  const double sigma = trace.sigma;
  auto flag = [&](const std::string& prop, const std::string& msg) {
    rep.violations.push_back("(" + prop + ") " + msg);
  };
  auto contained = [](const Ball& in, const Ball& out) {
    return norm(in.center - out.center) + in.radius <= out.radius * (1.0 + kRelTol) + 1e-300;
  };
  double initial_sum = 0.0;
  for (const Ball& b : trace.initial) initial_sum += b.radius;
  const double n = static_cast<double>(trace.initial.size());
  const int total_charge = mu.total();
  std::size_t max_merges = 0;

  const BallFamily* prev = nullptr;
  for (const BallFamily& f : trace.families) {
    std::ostringstream at;
    at << "t=" << f.time << ": ";
    // (1) inclusions.
    const std::vector<Ball>& earlier = prev ? prev->balls : trace.initial;
    for (const Ball& b : earlier) {
      const bool ok = std::any_of(f.balls.begin(), f.balls.end(),
                                  [&](const Ball& o) { return contained(b, o); });
      if (!ok) flag("1", at.str() + "earlier ball not contained in any current ball");
    }
    if (prev) {
      for (const Ball& b : trace.initial) {
        const bool ok = std::any_of(f.balls.begin(), f.balls.end(),
                                    [&](const Ball& o) { return contained(b, o); });
        if (!ok) flag("1", at.str() + "initial ball not contained");
      }
    }
    // (2) disjoint closures.
    for (std::size_t i = 0; i < f.balls.size(); ++i) {
      for (std::size_t j = i + 1; j < f.balls.size(); ++j) {
        if (norm(f.balls[i].center - f.balls[j].center) <=
            f.balls[i].radius + f.balls[j].radius) {
          flag("2", at.str() + "closed balls intersect");
        }
      }
    }
    // (4) no charge in the sigma-collar of any ball.
    for (const Ball& b : f.balls) {
      const double tol = kRelTol * std::max(1.0, b.radius);
      for (const Atom& a : mu.atoms()) {
        const double d = norm(a.position - b.center);
        if (d >= b.radius - sigma + tol && d < b.radius + sigma - tol) {
          flag("4", at.str() + "charge inside the sigma-collar");
        }
      }
    }
    // (5) total radius.
    double sum = 0.0;
    for (const Ball& b : f.balls) sum += b.radius;
    if (sum > (1.0 + f.time) * (initial_sum + n * sigma) * (1.0 + kRelTol)) {
      flag("5", at.str() + "total radius exceeds (1+t)(R(B)+N sigma)");
    }
    // (6) radius growth over initial balls.
    for (const Ball& b : trace.initial) {
      for (const Ball& o : f.balls) {
        if (contained(b, o) && o.radius < (1.0 + f.time) * b.radius * (1.0 - kRelTol)) {
          flag("6", at.str() + "container radius below (1+t) r(B)");
        }
      }
    }
    // Charge conservation.
    const int s = std::accumulate(f.charges.begin(), f.charges.end(), 0);
    if (s != total_charge) flag("charge", at.str() + "charge not conserved");
    max_merges = std::max(max_merges, f.merging_times.size());

    if (prev) {
      LedgerEntry e;
      e.t1 = prev->time;
      e.t2 = f.time;
      double abs_sum = 0.0;
      for (int q : f.charges) abs_sum += std::abs(q);
      e.value = abs_sum * std::log((1.0 + e.t2) / (1.0 + e.t1));
      e.merge_free = f.merging_times.size() == prev->merging_times.size();
      if (e.value < 0.0) flag("3", at.str() + "negative ledger entry");
      rep.ledger.push_back(e);
    }
    prev = &f;
  }
  if (max_merges > trace.initial.size()) flag("merges", "more merging times than balls");
  rep.merges = static_cast<int>(max_merges);
  return rep;
}

}  // namespace afxy
