#pragma once

#include <string>
#include <vector>

#include "afxy/ballconstruct.hpp"
#include "afxy/lattice.hpp"
#include "afxy/spinfield.hpp"
#include "afxy/vorticity.hpp"

namespace afxy {

// {"eps": e, "sites": [[z1, z2, theta], ...]}; doubles round-trip exactly.
std::string spinfield_to_json(const SpinField& f);
SpinField spinfield_from_json(const std::string& text);

// [{"x": .., "y": .., "charge": ..}, ...]
std::string measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const std::string& text);

// {"type": "rectangle", "lo": [x, y], "hi": [x, y]}
// {"type": "disk", "center": [x, y], "radius": r}
// {"type": "annulus", "center": [x, y], "r": r, "R": R}
std::string region_to_json(const Region& g);
Region region_from_json(const std::string& text);

// [{"t": .., "balls": [{"cx": .., "cy": .., "r": ..}], "charges": [..]}, ...]
std::string trace_to_json(const BallTrace& trace);

// "2^-5..2^-9" (every power in between), or a comma-separated list.
std::vector<double> parse_eps_list(const std::string& spec);

// Accepts either inline JSON or a path to a file containing JSON.
std::string read_json_arg(const std::string& arg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace afxy
