#include "afxy/io.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "afxy/error.hpp"
#include "json.hpp"

namespace afxy {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string(what) + " is not valid JSON: " + e.what());
  }
}

Vec2 point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string spinfield_to_json(const SpinField& f) {
  json sites = json::array();
  f.for_each_site([&](LatticeIndex i, double p) { sites.push_back({i.z1, i.z2, p}); });
  json j;
  j["eps"] = f.eps();
  j["sites"] = std::move(sites);
  return j.dump();
}

SpinField spinfield_from_json(const std::string& text) {
  const json j = parse(text, "spin field");
  try {
    const double eps = j.at("eps").get<double>();
    if (!(eps > 0.0)) throw InvalidArgument("spin field eps must be positive");
    const auto& sites = j.at("sites");
    if (sites.empty()) throw InvalidArgument("spin field has no sites");
    IndexBox box{std::numeric_limits<int>::max(), std::numeric_limits<int>::min(),
                 std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
    for (const auto& s : sites) {
      if (!s.is_array() || s.size() != 3) throw InvalidArgument("site must be [z1, z2, theta]");
      const int z1 = s[0].get<int>(), z2 = s[1].get<int>();
      box.z1_min = std::min(box.z1_min, z1);
      box.z1_max = std::max(box.z1_max, z1);
      box.z2_min = std::min(box.z2_min, z2);
      box.z2_max = std::max(box.z2_max, z2);
    }
    SpinField f(eps, box);
    for (const auto& s : sites) f.set_phase({s[0].get<int>(), s[1].get<int>()}, s[2].get<double>());
    return f;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed spin field: ") + e.what());
  }
}

std::string measure_to_json(const AtomicMeasure& mu) {
  json j = json::array();
  for (const Atom& a : mu.atoms()) {
    j.push_back({{"x", a.position.x}, {"y", a.position.y}, {"charge", a.charge}});
  }
  return j.dump();
}

AtomicMeasure measure_from_json(const std::string& text) {
  const json j = parse(text, "measure");
  if (!j.is_array()) throw InvalidArgument("measure must be a JSON array");
  AtomicMeasure mu;
  try {
    for (const auto& a : j) {
      mu.add({a.at("x").get<double>(), a.at("y").get<double>()}, a.at("charge").get<int>());
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed measure: ") + e.what());
  }
  return mu;
}

std::string region_to_json(const Region& g) {
  json j;
  switch (g.kind()) {
    case Region::Kind::Rectangle:
      j = {{"type", "rectangle"}, {"lo", {g.lo().x, g.lo().y}}, {"hi", {g.hi().x, g.hi().y}}};
      break;
    case Region::Kind::Disk:
      j = {{"type", "disk"},
           {"center", {g.center().x, g.center().y}},
           {"radius", g.outer_radius()}};
      break;
    case Region::Kind::Annulus:
      j = {{"type", "annulus"},
           {"center", {g.center().x, g.center().y}},
           {"r", g.inner_radius()},
           {"R", g.outer_radius()}};
      break;
  }
  return j.dump();
}

Region region_from_json(const std::string& text) {
  const json j = parse(text, "region");
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "rectangle") return Region::rectangle(point(j.at("lo")), point(j.at("hi")));
    if (type == "disk") return Region::disk(point(j.at("center")), j.at("radius").get<double>());
    if (type == "annulus") {
      return Region::annulus(point(j.at("center")), j.at("r").get<double>(),
                             j.at("R").get<double>());
    }
    throw InvalidArgument("unknown region type '" + type + "'");
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed region: ") + e.what());
  }
}

std::string trace_to_json(const BallTrace& trace) {
  json out = json::array();
  for (const BallFamily& f : trace.families) {
    json balls = json::array();
    for (const Ball& b : f.balls) {
      balls.push_back({{"cx", b.center.x}, {"cy", b.center.y}, {"r", b.radius}});
    }
    out.push_back({{"t", f.time}, {"balls", balls}, {"charges", f.charges}});
  }
  return out.dump(2);
}

std::vector<double> parse_eps_list(const std::string& spec) {
  static const std::regex range(R"(^\s*2\^(-?\d+)\s*\.\.\s*2\^(-?\d+)\s*$)");
  std::smatch m;
  std::vector<double> out;
  if (std::regex_match(spec, m, range)) {
    const int a = std::stoi(m[1]);
    const int b = std::stoi(m[2]);
    const int step = a <= b ? 1 : -1;
    for (int k = a;; k += step) {
      out.push_back(std::ldexp(1.0, k));
      if (k == b) break;
    }
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
        out.push_back(v);
      } catch (const std::exception&) {
        throw InvalidArgument("cannot parse eps list '" + spec + "'");
      }
    }
  }
  if (out.empty()) throw InvalidArgument("empty eps list");
  for (double e : out) {
    if (!(e > 0.0)) throw InvalidArgument("eps values must be positive");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << content;
  if (!out) throw InvalidArgument("write failed for " + path);
}

std::string read_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  return read_file(arg);
}

}  // namespace afxy
