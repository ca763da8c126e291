#pragma once
#include <map>
#include <string>

#include <json.hpp>

#include "bjorling/interpolate.hpp"
#include "bjorling/surface.hpp"

namespace bjorling {

// Named tolerances with CLI override support; every pass flag in a report is
// recomputable from the echoed value/tolerance pair.
class ToleranceTable {
public:
  static ToleranceTable defaults();

  double get(const std::string& name) const;
  void set(const std::string& name, double value);
  const std::map<std::string, double>& values() const { return values_; }

private:
  std::map<std::string, double> values_;
};

nlohmann::json check_entry(double value, double tolerance, bool pass);
nlohmann::json check_below(double value, double tolerance);

// Certification block shared by every command that touches a surface:
// isotropy, conformality, harmonicity, mean curvature (series + FD
// cross-check), margins and the eta budget.
struct SurfaceCertification {
  nlohmann::json report;
  bool all_pass = false;
  SurfacePatch patch;
};

SurfaceCertification certify_surface(const IsotropicCurve& f, double u_min,
                                     double u_max, double v_min, double v_max,
                                     int nu, int nv, const ToleranceTable& tols);

}  // namespace bjorling
