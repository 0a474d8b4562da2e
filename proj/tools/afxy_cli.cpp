#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "afxy/ballconstruct.hpp"
#include "afxy/bulklimit.hpp"
#include "afxy/config.hpp"
#include "afxy/error.hpp"
#include "afxy/experiments.hpp"
#include "afxy/extension.hpp"
#include "afxy/io.hpp"
#include "afxy/recovery.hpp"
#include "afxy/spinfield.hpp"
#include "afxy/vorticity.hpp"
#include "json.hpp"

using namespace afxy;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitBadInput = 2;

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

PhaseFn builtin_phase(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "linear") {
    const double a = j.at("a").at(0).get<double>(), b = j.at("a").at(1).get<double>();
    const double c = j.value("c", 0.0);
    return [a, b, c](Vec2 x) { return a * x.x + b * x.y + c; };
  }
  if (kind == "sine") {
    const double amp = j.value("amplitude", 1.0);
    return [amp](Vec2 x) { return amp * std::sin(kTwoPi * x.x); };
  }
  if (kind == "constant") {
    const double c = j.value("c", 0.0);
    return [c](Vec2) { return c; };
  }
  throw InvalidArgument("unknown phase kind '" + kind + "'");
}

PhaseFn parse_phase(const std::string& spec) {
  if (spec == "linear") return builtin_phase({{"kind", "linear"}, {"a", {1.0, 2.0}}});
  if (spec == "sine") return builtin_phase({{"kind", "sine"}});
  if (spec == "constant") return builtin_phase({{"kind", "constant"}});
  try {
    return builtin_phase(json::parse(read_json_arg(spec)));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed phase description: ") + e.what());
  }
}

std::vector<double> parse_times(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse time list '" + spec + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty time list");
  return out;
}

// Largest axis-aligned rectangle whose lattice sites are all defined, built
// from the rows of the field.
Region covered_rectangle(const SpinField& u) {
  std::map<int, std::pair<double, double>> rows;
  u.for_each_site([&](LatticeIndex i, double) {
    const Vec2 x = to_cartesian(i, u.eps());
    auto [it, fresh] = rows.try_emplace(i.z2, x.x, x.x);
    if (!fresh) {
      it->second.first = std::min(it->second.first, x.x);
      it->second.second = std::max(it->second.second, x.x);
    }
  });
  if (rows.size() < 2) throw InvalidArgument("field too small to infer a region; pass --region");
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (const auto& [z2, r] : rows) {
    lo = std::max(lo, r.first);
    hi = std::min(hi, r.second);
  }
  const double h = 0.5 * kSqrt3 * u.eps();
  const Vec2 a{lo, rows.begin()->first * h}, b{hi, rows.rbegin()->first * h};
  if (!(a.x < b.x)) throw InvalidArgument("field too narrow to infer a region; pass --region");
  return Region::rectangle(a, b);
}

Region region_or_default(const std::string& spec, const SpinField& u) {
  return spec.empty() ? covered_rectangle(u) : region_from_json(read_json_arg(spec));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antiferromagnetic XY model on the triangular lattice"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file overriding the defaults");

  std::string field_path, region_spec, out_path, measure_spec, eps_spec = "2^-5..2^-9";
  std::string phase_spec = "linear", times_spec = "0,1,3,7";
  double sigma = 0.0, time = -1.0;
  int split = 0;

  auto* energy = app.add_subcommand("energy", "Energies, chirality and vorticity of a field");
  energy->add_option("--field", field_path, "SpinField JSON file")->required();
  energy->add_option("--region", region_spec, "Region JSON (inline or file)")->required();

  auto* vscale = app.add_subcommand("vortex-scaling", "Recovery-sequence energy scaling");
  vscale->add_option("--measure", measure_spec, "AtomicMeasure JSON (inline or file)")->required();
  vscale->add_option("--domain", region_spec, "Region JSON (inline or file)")->required();
  vscale->add_option("--eps", eps_spec, "eps list, e.g. 2^-5..2^-9");
  vscale->add_option("--split", split, "split multiplicities with polygon radius 1/(2n)");
  vscale->add_option("--out", out_path, "CSV output path")->required();

  auto* bscale = app.add_subcommand("bulk-scaling", "Bulk energy versus the Dirichlet integral");
  bscale->add_option("--phase", phase_spec, "linear | sine | constant | phase JSON");
  bscale->add_option("--region", region_spec, "Region JSON (default unit square)");
  bscale->add_option("--eps", eps_spec, "eps list");
  bscale->add_option("--out", out_path, "CSV output path");

  auto* btrace = app.add_subcommand("ball-trace", "Ball construction seeded at the charges");
  btrace->add_option("--field", field_path, "SpinField JSON file")->required();
  btrace->add_option("--region", region_spec, "Region JSON (default: area covered by the field)");
  btrace->add_option("--sigma", sigma, "collar width (default 3 eps)");
  btrace->add_option("--times", times_spec, "comma-separated query times");
  btrace->add_option("--out", out_path, "trace JSON output path")->required();

  auto* annih = app.add_subcommand("annihilate", "Dipole annihilation pipeline");
  annih->add_option("--field", field_path, "SpinField JSON file")->required();
  annih->add_option("--region", region_spec, "Region JSON (default: area covered by the field)");
  annih->add_option("--sigma", sigma, "collar width (default from config times eps)");
  annih->add_option("--time", time, "expansion time (default from config)");
  annih->add_option("--out", out_path, "output SpinField JSON path")->required();

  auto* self = app.add_subcommand("selftest", "Run the invariant suite");
  auto* show = app.add_subcommand("config", "Print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitBadInput);
  }

  try {
    Config cfg = config_path.empty() ? Config::defaults() : Config::load(config_path);
    cfg.workers = workers_from_env(cfg.workers);

    if (*energy) {
      const SpinField u = spinfield_from_json(read_file(field_path));
      const Region region = region_from_json(read_json_arg(region_spec));
      const SpinField v = to_auxiliary(u);
      double chi_sum = 0.0, chi_min = 1.0, chi_max = -1.0;
      std::size_t n = 0;
      for_each_triangle_in(region, u.eps(), [&](const TriangleId& t) {
        const double c = chirality(u, t);
        chi_sum += c;
        chi_min = std::min(chi_min, c);
        chi_max = std::max(chi_max, c);
        ++n;
      });
      const VorticityMeasure vm = vorticity_measure(v, region);
      json out{{"eps", u.eps()},
               {"triangles", n},
               {"energy_afxy", energy_afxy(u, region)},
               {"energy_xy_auxiliary", energy_xy(v, region)},
               {"chirality", {{"mean", n ? chi_sum / n : 0.0}, {"min", chi_min}, {"max", chi_max}}},
               {"vorticity_mass", vm.measure.mass()},
               {"vorticity_total", vm.measure.total()}};
      std::cout << out.dump(2) << '\n';
      return kExitOk;
    }

    if (*vscale) {
      AtomicMeasure mu = measure_from_json(read_json_arg(measure_spec));
      if (split > 0) mu = split_multiplicity(mu, split);
      const Region domain = region_from_json(read_json_arg(region_spec));
      const auto eps = parse_eps_list(eps_spec);
      const auto rows = vortex_scaling(mu, domain, eps, cfg.workers);
      write_file(out_path, vortex_scaling_csv(rows));
      std::vector<std::pair<double, double>> fit_rows;
      for (const auto& r : rows) fit_rows.emplace_back(r.eps, r.energy);
      json out{{"rows", rows.size()}, {"csv", out_path}};
      if (rows.size() >= 3) {
        const SlopeFit f = fit_log_slope(fit_rows);
        out["slope"] = f.slope;
        out["intercept"] = f.intercept;
        out["r2"] = f.r2;
      }
      out["expected_slope"] = 2.0 * kSqrt3 * kPi * mu.mass();
      std::cout << out.dump(2) << '\n';
      return kExitOk;
    }

    if (*bscale) {
      const PhaseFn phase = parse_phase(phase_spec);
      const Region region = region_spec.empty() ? Region::rectangle({0, 0}, {1, 1})
                                                : region_from_json(read_json_arg(region_spec));
      const auto rows = bulk_scaling(phase, region, parse_eps_list(eps_spec), cfg.quadrature_rel_tol);
      std::ostringstream csv;
      csv << std::setprecision(17) << "eps,energy_over_eps2,reference,rel_gap\n";
      json table = json::array();
      for (const auto& r : rows) {
        csv << r.eps << ',' << r.energy << ',' << r.reference << ',' << r.rel_gap << '\n';
        table.push_back({{"eps", r.eps}, {"energy", r.energy}, {"reference", r.reference},
                         {"rel_gap", r.rel_gap}});
      }
      if (!out_path.empty()) write_file(out_path, csv.str());
      std::cout << json{{"rows", table}, {"last_gap", rows.back().rel_gap}}.dump(2) << '\n';
      return kExitOk;
    }

    if (*btrace) {
      const SpinField u = spinfield_from_json(read_file(field_path));
      const Region region = region_or_default(region_spec, u);
      const VorticityMeasure vm = vorticity_measure(to_auxiliary(u), region);
      std::vector<Ball> seeds;
      for (const Atom& a : vm.measure.atoms()) seeds.push_back({a.position, u.eps() / (2.0 * kSqrt3)});
      const double s = sigma > 0.0 ? sigma : cfg.annihilate_sigma_factor * u.eps();
      const BallTrace trace = ball_construct(seeds, vm.measure, s, parse_times(times_spec));
      write_file(out_path, trace_to_json(trace));
      const PropertyReport rep = verify_properties(trace, vm.measure);
      json ledger = json::array();
      for (const auto& e : rep.ledger) {
        ledger.push_back({{"t1", e.t1}, {"t2", e.t2}, {"value", e.value}, {"merge_free", e.merge_free}});
      }
      std::cout << json{{"charges", vm.measure.size()},
                        {"merges", rep.merges},
                        {"violations", rep.violations},
                        {"ledger", ledger}}.dump(2)
                << '\n';
      return rep.ok() ? kExitOk : kExitInvariant;
    }

    if (*annih) {
      const SpinField u = spinfield_from_json(read_file(field_path));
      const Region region = region_or_default(region_spec, u);
      AnnihilationOptions opts;
      opts.sigma = sigma > 0.0 ? sigma : cfg.annihilate_sigma_factor * u.eps();
      opts.expansion_time = time >= 0.0 ? time : cfg.annihilate_time;
      opts.beta = cfg.annihilate_beta;
      opts.extension.c0 = cfg.extension_c0;
      opts.extension.c1 = cfg.extension_c1;
      opts.extension.monodromy_tol = cfg.monodromy_tol;
      opts.extension.shift_grid = cfg.shift_grid;
      const AnnihilationResult res = annihilate_dipoles(u, region, opts);
      write_file(out_path, spinfield_to_json(res.field));
      json balls = json::array();
      for (const auto& b : res.balls) {
        balls.push_back({{"cx", b.ball.center.x}, {"cy", b.ball.center.y}, {"r", b.ball.radius},
                         {"charge", b.charge}, {"atoms", b.atoms}, {"extended", b.extended},
                         {"status", b.status}, {"ratio", b.ratio}});
      }
      std::cout << json{{"mass_before", res.mass_before}, {"mass_after", res.mass_after},
                        {"balls", balls}}.dump(2)
                << '\n';
      return kExitOk;
    }

    if (*show) {
      std::cout << cfg.to_json() << '\n';
      return kExitOk;
    }

    if (*self) {
      bool ok = true;
      for (const SelfTestItem& item : run_selftest(cfg)) {
        std::cout << (item.passed ? "PASS " : "FAIL ") << item.name << ": " << item.detail << '\n';
        ok = ok && item.passed;
      }
      return ok ? kExitOk : kExitInvariant;
    }
  } catch (const InvariantViolation& e) {
    return fail(e.kind(), e.what(), kExitInvariant);
  } catch (const Error& e) {
    return fail(e.kind(), e.what(), kExitBadInput);
  } catch (const json::exception& e) {
    return fail("invalid_argument", e.what(), kExitBadInput);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitInvariant);
  }
  return kExitOk;
}
