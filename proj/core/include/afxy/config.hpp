#pragma once

#include <string>
#include <utility>
#include <vector>

namespace afxy {

// Tunable defaults.  Serialized as config/defaults.json; `version` guards
// against silently reading an incompatible file.
struct Config {
  static constexpr int kVersion = 1;

  int version = kVersion;
  // (lambda, eta) pairs for the comparable-bounds check.
  std::vector<std::pair<double, double>> eta_table{{0.5, 0.05}, {0.1, 0.005}};
  double chirality_eta = 0.2;
  double chirality_eta_prime = 0.06;
  double extension_c0 = 10.0;
  double extension_c1 = 0.0;
  int shift_grid = 16;
  double monodromy_tol = 1e-9;
  double quadrature_rel_tol = 1e-8;
  int pairing_sectors = 48;
  int pairing_gauss_order = 4;
  double annihilate_sigma_factor = 3.0;
  double annihilate_time = 3.0;
  double annihilate_beta = 2.0;
  int workers = 1;

  static Config defaults() { return Config{}; }
  static Config from_json(const std::string& text);
  static Config load(const std::string& path);
  std::string to_json() const;

  // eta for the largest tabulated lambda not exceeding `lambda`.
  double eta_for_lambda(double lambda) const;
};

// Worker count from AFXY_WORKERS, falling back to `fallback`.
int workers_from_env(int fallback);

}  // namespace afxy
