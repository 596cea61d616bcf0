#include "stlstar/io.hpp"

#include <sstream>

namespace stlstar {

nlohmann::json region_to_json(const geom::Region& r) {
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& p : r.polys) {
    nlohmann::json ring = nlohmann::json::array();
    for (const auto& v : p.ring()) ring.push_back({v.x, v.y});
    polys.push_back(std::move(ring));
  }
  return {{"domain", r.domain}, {"polygons", std::move(polys)}};
}

nlohmann::json report_to_json(const MonitorReport& rep) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : rep.nodes)
    nodes.push_back({{"id", n.id},
                     {"formula", n.formula},
                     {"region", region_to_json(n.region)}});
  return {{"verdict", verdict_name(rep.verdict)},
          {"nodes", std::move(nodes)},
          {"stats",
           {{"polygons_peak", rep.stats.polygons_peak},
            {"wall_ms", rep.stats.wall_ms}}}};
}

std::string region_to_svg(const geom::Region& r, const std::string& title) {
  const double size = 640, margin = 40;
  const double plot = size - 2 * margin;
  double d = r.domain > 0 ? r.domain : 1;
  auto X = [&](double t) { return margin + t / d * plot; };
  auto Y = [&](double ts) { return size - margin - ts / d * plot; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size
      << "\">\n";
  svg << "<rect width=\"" << size << "\" height=\"" << size
      << "\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot
      << "\" height=\"" << plot
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto& p : r.polys) {
    svg << "<polygon points=\"";
    for (const auto& v : p.ring()) svg << X(v.x) << ',' << Y(v.y) << ' ';
    svg << "\" fill=\"steelblue\" fill-opacity=\"0.45\" stroke=\"navy\" "
           "stroke-width=\"0.8\"/>\n";
  }
  svg << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(d)
      << "\" y2=\"" << Y(d)
      << "\" stroke=\"crimson\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  svg << "<text x=\"" << size / 2 << "\" y=\"" << size - 10
      << "\" text-anchor=\"middle\" font-size=\"14\">t</text>\n";
  svg << "<text x=\"14\" y=\"" << size / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 "
      << size / 2 << ")\">t*</text>\n";
  std::string legend = title.empty() ? (r.polys.empty() ? "(empty region)" : "")
                                     : title;
  if (r.polys.empty() && !title.empty()) legend += "  (empty region)";
  if (!legend.empty()) {
    std::string esc;
    for (char c : legend) {
      switch (c) {
        case '<': esc += "&lt;"; break;
        case '>': esc += "&gt;"; break;
        case '&': esc += "&amp;"; break;
        default: esc += c;
      }
    }
    svg << "<text x=\"" << margin << "\" y=\"" << margin - 12
        << "\" font-size=\"13\">" << esc << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace stlstar
