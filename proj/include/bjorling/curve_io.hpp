#pragma once
#include <optional>
#include <string>

#include "bjorling/surface.hpp"

namespace bjorling {

// Curve-spec JSON:
//   { "center": float, "radius": float, "interval_half_width": float,
//     "components": [ [ [re, im], ... ] x1 or x3 ] }
// Coefficients are plain Taylor coefficients about the center.

Curve3 curve_from_json_text(const std::string& text, bool require_real_on_interval,
                            double truncation_tol = 1e-9);
Curve3 curve_from_json_file(const std::string& path, bool require_real_on_interval,
                            double truncation_tol = 1e-9);
std::string curve_to_json_text(const Curve3& c);

// Bjorling-data JSON: { "metric": "euclidean"|"lorentz",
//                       "a": <curve-spec>, "n": <curve-spec> }.
BjorlingData bjorling_data_from_json_file(const std::string& path);

// Heuristic used to pick ParseError vs IoError for unknown inputs.
bool looks_like_path(const std::string& s);

// Builtin name or path to a curve-spec JSON file.
Curve3 load_curve(const std::string& name_or_path, int degree,
                  bool require_real_on_interval = true,
                  std::optional<DiscDomain> dom = std::nullopt);

}  // namespace bjorling
