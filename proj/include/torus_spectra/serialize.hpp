#pragma once

#include <string>

#include <json.hpp>

#include "torus_spectra/cellgeom.hpp"
#include "torus_spectra/objective.hpp"
#include "torus_spectra/spectral.hpp"

namespace torus {

using json = nlohmann::ordered_json;

json to_json(const TorusParams& p);
json to_json(const VoronoiCell& cell);
json to_json(const SpectrumReport& rep);
json to_json(const GradReport& rep);
json to_json(const ClaimReport& rep);
json to_json(const PathResult& rep);

/// "a,b,J" header, '.' decimal, '\n' line endings, 17 significant digits.
std::string sweep_csv(const SweepResult& sweep);

/// Stand-alone SVG of the cell with its incircle and circumcircle.
std::string cell_svg(const VoronoiCell& cell);

}  // namespace torus
