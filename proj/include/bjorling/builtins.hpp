#pragma once
#include <optional>
#include <string>
#include <vector>

#include "bjorling/surface.hpp"

namespace bjorling {

// Exact-coefficient series for the builtin catalog. Trig-based curves live
// on the default disc below; Enneper needs a small disc clear of the normal
// field's poles at +-i.
DiscDomain default_trig_domain();
DiscDomain enneper_domain();

Series cosine_series(const DiscDomain& dom, int degree);
Series sine_series(const DiscDomain& dom, int degree);
Series cosh_series(const DiscDomain& dom, int degree);
Series sinh_series(const DiscDomain& dom, int degree);
Series exp_series(const DiscDomain& dom, int degree);

// circle(r), line(dx,dy,dz), helix(r,p), perturbed-circle(r,eps),
// boosted-circle(r,eps). Perturbed variants are anchored at u0 so that
// l(u0) = circle(u0); see README for the admissibility constraints that fix
// their shape.
bool is_builtin_curve(const std::string& spec);
Curve3 builtin_curve(const std::string& spec, int degree,
                     std::optional<DiscDomain> dom = std::nullopt);

struct GalleryEntry {
  std::string name;
  BjorlingData data;
  double u_min, u_max, v_min, v_max;
};

bool is_builtin_surface(const std::string& name);
GalleryEntry builtin_surface(const std::string& name, int degree);
std::vector<std::string> builtin_surface_names();

}  // namespace bjorling
