#pragma once

#include <string>
#include <utility>
#include <vector>

#include "afxy/config.hpp"
#include "afxy/lattice.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least-squares fit of energy/eps^2 against log(1/eps) over rows (eps, energy).
SlopeFit fit_log_slope(const std::vector<std::pair<double, double>>& rows);

struct VortexScalingRow {
  double eps = 0.0;
  double energy = 0.0;          // E(u_eps, domain)
  double energy_scaled = 0.0;   // E / eps^2
  double energy_log = 0.0;      // E / (eps^2 |log eps|)
  double flat = 0.0;            // flat norm of (mu_v - mu) on the domain
  int total_charge = 0;
  int mass = 0;
};

// Recovery-sequence energies and flat distances for each eps.  Cells run on
// `workers` threads; row order follows eps_list.
std::vector<VortexScalingRow> vortex_scaling(const AtomicMeasure& mu, const Region& domain,
                                             const std::vector<double>& eps_list,
                                             int workers = 1);

std::string vortex_scaling_csv(const std::vector<VortexScalingRow>& rows);

struct SelfTestItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast invariant suite over every module.
std::vector<SelfTestItem> run_selftest(const Config& cfg);

}  // namespace afxy
