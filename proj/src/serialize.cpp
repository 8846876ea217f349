#include "torus_spectra/serialize.hpp"

#include <cstdio>

namespace torus {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

json to_json(const TorusParams& p) { return json{{"a", p.a}, {"b", p.b}}; }

json to_json(const VoronoiCell& cell) {
  json verts = json::array();
  for (const Vec2& v : cell.vertices) verts.push_back(json::array({v.x(), v.y()}));
  return json{{"params", to_json(cell.params)},
              {"vertices", verts},
              {"x1", cell.x1},
              {"x2", cell.x2},
              {"r1", cell.r1},
              {"r2", cell.r2}};
}

json to_json(const SpectrumReport& rep) {
  json entries = json::array();
  for (const SpectrumEntry& e : rep.entries)
    entries.push_back(json{{"k", json::array({e.index.x(), e.index.y()})}, {"gamma", e.eigenvalue}});
  return json{{"params", to_json(rep.params)}, {"kernel", rep.kernel_label},
              {"radius", rep.radius},          {"entries", entries},
              {"operator_norm", rep.operator_norm}, {"hs_norm", rep.hs_norm}};
}

json to_json(const GradReport& rep) {
  return json{{"params", to_json(rep.params)},
              {"dJda_closed", rep.da_closed},
              {"dJdb_closed", rep.db_closed},
              {"dJda_fd", rep.da_fd},
              {"dJdb_fd", rep.db_fd},
              {"agreement", rep.agreement}};
}

json to_json(const ClaimReport& rep) {
  return json{{"params", to_json(rep.params)},
              {"z_samples", rep.z_samples},
              {"min_A1_minus_A2", rep.min_left_gap},
              {"min_A3_minus_A2", rep.min_right_gap},
              {"A1_minus_A2_at_minus_1", rep.left_gap_at_minus1},
              {"A1_minus_A2_at_plus_1", rep.left_gap_at_plus1},
              {"max_concavity_defect", rep.max_left_gap_curvature},
              {"ok", rep.ok}};
}

json to_json(const PathResult& rep) {
  json samples = json::array();
  for (const PathSample& s : rep.samples)
    samples.push_back(json{{"a", s.a}, {"b", s.b}, {"J", s.value}});
  return json{{"start", to_json(rep.start)},
              {"waypoint", to_json(rep.waypoint)},
              {"end", to_json(rep.end)},
              {"samples", samples},
              {"monotone", rep.monotone}};
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = "a,b,J\n";
  for (const SweepNode& n : sweep.nodes) {
    out += fmt17(n.a);
    out += ',';
    out += fmt17(n.b);
    out += ',';
    out += fmt17(n.value);
    out += '\n';
  }
  return out;
}

std::string cell_svg(const VoronoiCell& cell) {
  const double extent = 1.2 * cell.r2;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"";
  svg += fmt6(-extent) + " " + fmt6(-extent) + " " + fmt6(2 * extent) + " " + fmt6(2 * extent) + "\">\n";
  svg += "<g transform=\"scale(1,-1)\" stroke-width=\"" + fmt6(extent / 200.0) + "\">\n";
  svg += "<line x1=\"" + fmt6(-extent) + "\" y1=\"0\" x2=\"" + fmt6(extent) +
         "\" y2=\"0\" stroke=\"#999\"/>\n";
  svg += "<line x1=\"0\" y1=\"" + fmt6(-extent) + "\" x2=\"0\" y2=\"" + fmt6(extent) +
         "\" stroke=\"#999\"/>\n";
  svg += "<polygon points=\"";
  for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
    if (i) svg += ' ';
    svg += fmt6(cell.vertices[i].x()) + "," + fmt6(cell.vertices[i].y());
  }
  svg += "\" fill=\"#cfe2f3\" fill-opacity=\"0.6\" stroke=\"#1f4e79\"/>\n";
  svg += "<circle cx=\"0\" cy=\"0\" r=\"" + fmt6(cell.r1) +
         "\" fill=\"none\" stroke=\"#38761d\"/>\n";
  svg += "<circle cx=\"0\" cy=\"0\" r=\"" + fmt6(cell.r2) +
         "\" fill=\"none\" stroke=\"#a61c00\"/>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace torus
