#pragma once

#include <vector>

namespace afxy {

struct Assignment {
  std::vector<int> row_to_col;
  double cost = 0.0;
};

// Minimum-cost perfect matching on a square cost matrix (Kuhn-Munkres with
// potentials, O(n^3)).
Assignment solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace afxy
