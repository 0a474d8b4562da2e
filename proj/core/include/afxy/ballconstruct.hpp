#pragma once

#include <string>
#include <vector>

#include "afxy/lattice.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

struct Ball {
  Vec2 center;
  double radius = 0.0;
};

struct BallFamily {
  double time = 0.0;
  std::vector<Ball> balls;
  std::vector<int> charges;            // mu(B) per ball
  std::vector<double> born;            // time each ball last took part in a merge
  std::vector<double> merging_times;   // merging times <= time
};

struct BallTrace {
  std::vector<Ball> initial;
  double sigma = 0.0;
  std::vector<BallFamily> families;    // one per query time, in query order
};

// Smallest ball containing both inputs.
Ball enclosing_ball(const Ball& a, const Ball& b);

// Ball containing all inputs with radius at most the sum of input radii when
// the inputs form a touching cluster.  Merges pairwise, largest first.
Ball merge_cluster(const std::vector<Ball>& balls);

// Expansion/merging construction.  query_times must be nondecreasing and >= 0.
BallTrace ball_construct(const std::vector<Ball>& initial, const AtomicMeasure& mu, double sigma,
                         const std::vector<double>& query_times);

struct LedgerEntry {
  double t1 = 0.0, t2 = 0.0;
  double value = 0.0;   // sum over B in B(t2) of |mu(B)| log((1+t2)/(1+t1))
  bool merge_free = true;
};

struct PropertyReport {
  std::vector<std::string> violations;
  std::vector<LedgerEntry> ledger;  // consecutive query times
  int merges = 0;

  bool ok() const { return violations.empty(); }
};

// Checks properties (1), (2), (4), (5), (6), charge conservation, the merge
// count bound, and the log-growth ledger.
PropertyReport verify_properties(const BallTrace& trace, const AtomicMeasure& mu);

}  // namespace afxy
