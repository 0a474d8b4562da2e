#include "afxy/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "afxy/ballconstruct.hpp"
#include "afxy/bulklimit.hpp"
#include "afxy/error.hpp"
#include "afxy/extension.hpp"
#include "afxy/interpolation.hpp"
#include "afxy/recovery.hpp"
#include "afxy/spinfield.hpp"

namespace afxy {

SlopeFit fit_log_slope(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 3) throw InvalidArgument("slope fit needs at least three rows");
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (const auto& [eps, e] : rows) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("slope fit needs 0 < eps < 1");
    xs.push_back(std::log(1.0 / eps));
    ys.push_back(e / (eps * eps));
    sx += xs.back();
    sy += ys.back();
  }
  const double n = static_cast<double>(rows.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx <= 1e-24) throw InvalidArgument("degenerate eps list");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

std::vector<VortexScalingRow> vortex_scaling(const AtomicMeasure& mu, const Region& domain,
                                             const std::vector<double>& eps_list, int workers) {
  std::vector<VortexScalingRow> rows(eps_list.size());
  std::vector<std::exception_ptr> errors(eps_list.size());
  auto cell = [&](std::size_t k) {
    try {
      const double eps = eps_list[k];
      const Recovery rec = build_recovery(mu, eps, domain);
      VortexScalingRow& row = rows[k];
      row.eps = eps;
      row.energy = energy_afxy(rec.u, domain);
      row.energy_scaled = row.energy / (eps * eps);
      row.energy_log = row.energy_scaled / std::fabs(std::log(eps));
      const VorticityMeasure vm = vorticity_measure(rec.v, domain);
      row.total_charge = vm.measure.total();
      row.mass = vm.measure.mass();
      row.flat = flat_norm(vm.measure - mu, domain);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < eps_list.size(); k = next++) cell(k);
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(eps_list.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string vortex_scaling_csv(const std::vector<VortexScalingRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "eps,energy,energy_over_eps2,energy_over_eps2_logeps,flat_norm,total_charge,mass\n";
  for (const auto& r : rows) {
    os << r.eps << ',' << r.energy << ',' << r.energy_scaled << ',' << r.energy_log << ','
       << r.flat << ',' << r.total_charge << ',' << r.mass << '\n';
  }
  return os.str();
}

namespace {

SelfTestItem check(const std::string& name, const std::function<std::string()>& body) {
  SelfTestItem item;
  item.name = name;
  try {
    item.detail = body();
    item.passed = item.detail.rfind("FAIL", 0) != 0;
  } catch (const std::exception& e) {
    item.passed = false;
    item.detail = std::string("exception: ") + e.what();
  }
  return item;
}

std::string verdict(bool ok, const std::string& detail) { return (ok ? "" : "FAIL ") + detail; }

}  // namespace

std::vector<SelfTestItem> run_selftest(const Config& cfg) {
  std::vector<SelfTestItem> out;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ang(-kPi, kPi);

  out.push_back(check("energy identity", [&] {
    const double eps = 0.125;
    SpinField u(eps, IndexBox{0, 1, 0, 1});
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
      for (int z1 = 0; z1 <= 1; ++z1) {
        for (int z2 = 0; z2 <= 1; ++z2) u.set_phase({z1, z2}, ang(rng));
      }
      for (Orientation o : {Orientation::Up, Orientation::Down}) {
        const TriangleId t{{0, 0}, o};
        worst = std::max(worst, std::fabs(energy_identity_residual(u, t)));
      }
    }
    return verdict(worst < 1e-12 * eps * eps, "max residual " + std::to_string(worst));
  }));

  out.push_back(check("sublattice partition", [&] {
    for (int z1 = -6; z1 <= 6; ++z1) {
      for (int z2 = -6; z2 <= 6; ++z2) {
        const LatticeIndex i{z1, z2};
        if (sublattice(i) != sublattice(i + LatticeIndex{1, 1})) return std::string("FAIL shift");
        const TriangleId up{i, Orientation::Up}, dn{i, Orientation::Down};
        for (const TriangleId& t : {up, dn}) {
          int mask = 0;
          for (const LatticeIndex& v : vertices(t)) mask |= 1 << sublattice(v);
          if (mask != 0b1110) return std::string("FAIL triangle labels");
        }
      }
    }
    return std::string("ok");
  }));

  out.push_back(check("flat norm dipole", [&] {
    AtomicMeasure mu;
    mu.add({0.4, 0.5}, 1);
    mu.add({0.7, 0.5}, -1);
    const double f = flat_norm(mu, Region::rectangle({0, 0}, {1, 1}));
    return verdict(std::fabs(f - 0.3) < 1e-12, "value " + std::to_string(f));
  }));

  out.push_back(check("ball construction fuzz", [&] {
    std::uniform_real_distribution<double> pos(0.0, 10.0), rad(0.05, 0.4);
    std::bernoulli_distribution sign(0.5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Ball> balls;
      AtomicMeasure mu;
      while (balls.size() < 8) {
        const Ball b{{pos(rng), pos(rng)}, rad(rng)};
        bool ok = true;
        for (const Ball& o : balls) ok = ok && norm(o.center - b.center) >= o.radius + b.radius;
        if (!ok) continue;
        balls.push_back(b);
        mu.add(b.center, sign(rng) ? 1 : -1);
      }
      const BallTrace tr = ball_construct(balls, mu, 0.05, {0.0, 0.5, 1.0, 3.0, 10.0});
      const PropertyReport rep = verify_properties(tr, mu);
      if (!rep.ok()) return "FAIL " + rep.violations.front();
    }
    return std::string("ok");
  }));

  out.push_back(check("lift and Stokes on a vortex", [&] {
    const double eps = 1.0 / 32;
    AtomicMeasure mu;
    mu.add({0.0, 0.0}, 1);
    const Region dom = Region::disk({0.03, 0.02}, 1.0);
    const Recovery rec = build_recovery(mu, eps, dom);
    const Interpolant g(rec.v, Interpolant::Kind::Geodesic);
    std::vector<Vec2> loop;
    for (int k = 0; k < 400; ++k) loop.push_back(unit_vector(kTwoPi * k / 400) * 0.5);
    const int w = winding_number(loop, [&](Vec2 x) { return g.eval(x); });
    bool mono = false;
    try {
      lift_annulus(rec.v, Region::annulus({0, 0}, 0.3, 0.6), cfg.monodromy_tol);
    } catch (const MonodromyError&) {
      mono = true;
    }
    return verdict(w == 1 && mono, "winding " + std::to_string(w));
  }));

  out.push_back(check("bulk linear phase", [&] {
    const auto rows = bulk_scaling([](Vec2 x) { return x.x + 2.0 * x.y; },
                                   Region::rectangle({0, 0}, {1, 1}), {1.0 / 64},
                                   cfg.quadrature_rel_tol);
    return verdict(rows[0].rel_gap < 0.1, "gap " + std::to_string(rows[0].rel_gap));
  }));

  out.push_back(check("extension of a smooth annulus field", [&] {
    const double eps = 1.0 / 64;
    const Region big = Region::disk({0, 0}, 1.0);
    SpinField v = sample_from_continuum([](Vec2 x) { return 0.3 * x.x - 0.2 * x.y * x.y; }, eps, big);
    ExtensionOptions opts;
    opts.c0 = cfg.extension_c0;
    const ExtensionResult r = extend_zero_degree(v, Region::annulus({0, 0}, 0.3, 0.6), opts);
    return verdict(r.max_jump < kTwoPi / 3, "ratio " +
                   std::to_string(r.energy_ball / r.energy_annulus));
  }));

  out.push_back(check("chirality implications on a recovery field", [&] {
    AtomicMeasure mu;
    mu.add({0.5, 0.5}, 1);
    const Region dom = Region::rectangle({0, 0}, {1, 1});
    const Recovery rec = build_recovery(mu, 1.0 / 32, dom);
    const ImplicationReport rep =
        chirality_vorticity_implications(rec.u, dom, cfg.chirality_eta, cfg.chirality_eta_prime);
    return verdict(rep.ok(), std::to_string(rep.violations.size()) + " violations");
  }));
  return out;
}

}  // namespace afxy
