#include "afxy/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "afxy/error.hpp"
#include "json.hpp"

namespace afxy {

using nlohmann::json;

Config Config::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  Config c;
  try {
    c.version = j.at("version").get<int>();
    if (c.version != kVersion) {
      throw InvalidArgument("unsupported config version " + std::to_string(c.version));
    }
    if (j.contains("eta_table")) {
      c.eta_table.clear();
      for (const auto& row : j["eta_table"]) {
        c.eta_table.emplace_back(row.at("lambda").get<double>(), row.at("eta").get<double>());
      }
    }
    auto opt = [&](const char* section, const char* key, auto& field) {
      if (j.contains(section) && j[section].contains(key)) {
        field = j[section][key].get<std::decay_t<decltype(field)>>();
      }
    };
    opt("chirality", "eta", c.chirality_eta);
    opt("chirality", "eta_prime", c.chirality_eta_prime);
    opt("extension", "c0", c.extension_c0);
    opt("extension", "c1", c.extension_c1);
    opt("extension", "shift_grid", c.shift_grid);
    opt("lifting", "monodromy_tol", c.monodromy_tol);
    opt("quadrature", "rel_tol", c.quadrature_rel_tol);
    opt("quadrature", "pairing_sectors", c.pairing_sectors);
    opt("quadrature", "pairing_gauss_order", c.pairing_gauss_order);
    opt("annihilate", "sigma_factor", c.annihilate_sigma_factor);
    opt("annihilate", "expansion_time", c.annihilate_time);
    opt("annihilate", "beta", c.annihilate_beta);
    opt("runner", "workers", c.workers);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string Config::to_json() const {
  json j;
  j["version"] = version;
  j["eta_table"] = json::array();
  for (const auto& [l, e] : eta_table) j["eta_table"].push_back({{"lambda", l}, {"eta", e}});
  j["chirality"] = {{"eta", chirality_eta}, {"eta_prime", chirality_eta_prime}};
  j["extension"] = {{"c0", extension_c0}, {"c1", extension_c1}, {"shift_grid", shift_grid}};
  j["lifting"] = {{"monodromy_tol", monodromy_tol}};
  j["quadrature"] = {{"rel_tol", quadrature_rel_tol},
                     {"pairing_sectors", pairing_sectors},
                     {"pairing_gauss_order", pairing_gauss_order}};
  j["annihilate"] = {{"sigma_factor", annihilate_sigma_factor},
                     {"expansion_time", annihilate_time},
                     {"beta", annihilate_beta}};
  j["runner"] = {{"workers", workers}};
  return j.dump(2);
}

double Config::eta_for_lambda(double lambda) const {
  double best_l = -1.0, best_eta = 0.0;
  for (const auto& [l, e] : eta_table) {
    if (l <= lambda && l > best_l) {
      best_l = l;
      best_eta = e;
    }
  }
  if (best_l < 0.0) throw InvalidArgument("no eta tabulated for lambda this small");
  return best_eta;
}

int workers_from_env(int fallback) {
  const char* s = std::getenv("AFXY_WORKERS");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  const long n = std::strtol(s, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) throw InvalidArgument("AFXY_WORKERS must be in 1..1024");
  return static_cast<int>(n);
}

}  // namespace afxy
