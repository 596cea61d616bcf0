#pragma once

#include <string>

#include "stlstar/geometry.hpp"
#include "stlstar/satset.hpp"

#include "json.hpp"

namespace stlstar {

nlohmann::json region_to_json(const geom::Region& r);
nlohmann::json report_to_json(const MonitorReport& rep);

// Standalone SVG of a Region inside the [0, domain]^2 square with the
// diagonal t* = t overlaid.
std::string region_to_svg(const geom::Region& r, const std::string& title = "");

}  // namespace stlstar
