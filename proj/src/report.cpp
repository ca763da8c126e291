#include "bjorling/report.hpp"

#include <algorithm>
#include <cmath>

namespace bjorling {

using nlohmann::json;

ToleranceTable ToleranceTable::defaults() {
  ToleranceTable t;
  t.values_ = {
      {"isotropy", 1e-10},
      {"conformality", 1e-8},     // relative to max(E, G)
      {"harmonicity", 1e-6},      // times the patch position scale
      {"mean_curvature", 1e-6},   // at nodes with margin above margin_floor
      {"margin_floor", 0.1},
      {"h_agreement", 1e-4},      // series-H vs finite-difference-H
      {"containment", 1e-4},
      {"newton", 1e-8},
      {"truncation", 1e-9},
      {"reality", 1e-8},
      {"extension_identity", 1e-9},  // d^l' orthogonality and norm match
      {"boundary_position", 1e-10},  // Re f(u,0) = a(u)
      {"boundary_normal", 1e-8},     // N(u,0) = n(u)
      {"jn", 1e-8},
      {"refit", 1e-8},
      {"tangent", 1e-10},
      {"lightlike_band", 1e-12},
  };
  return t;
}

double ToleranceTable::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end())
    fail(ErrorCode::ParseError, "unknown tolerance '" + name + "'");
  return it->second;
}

void ToleranceTable::set(const std::string& name, double value) {
  if (!values_.count(name))
    fail(ErrorCode::ParseError, "unknown tolerance '" + name + "'");
  if (!(value > 0.0))
    fail(ErrorCode::ParseError, "tolerance '" + name + "' must be positive");
  values_[name] = value;
}

json check_entry(double value, double tolerance, bool pass) {
  return json{{"value", value}, {"tolerance", tolerance}, {"pass", pass}};
}

json check_below(double value, double tolerance) {
  return check_entry(value, tolerance, value < tolerance);
}

SurfaceCertification certify_surface(const IsotropicCurve& f, double u_min,
                                     double u_max, double v_min, double v_max,
                                     int nu, int nv, const ToleranceTable& tols) {
  SurfaceCertification cert;
  cert.patch = sample_patch(f, u_min, u_max, v_min, v_max, nu, nv);
  const SurfacePatch& p = cert.patch;

  double scale = 1.0;
  for (const Vec3& pos : p.positions)
    scale = std::max({scale, std::abs(pos.x), std::abs(pos.y), std::abs(pos.z)});

  double conf = 0.0;
  double hmax = 0.0;
  double margin_min = std::numeric_limits<double>::infinity();
  double margin_floor = tols.get("margin_floor");
  for (size_t i = 0; i < p.positions.size(); ++i) {
    double eg = std::max({std::abs(p.E[i]), std::abs(p.G[i]), 1e-300});
    conf = std::max(conf, std::max(std::abs(p.E[i] - p.G[i]), std::abs(p.F[i])) / eg);
    if (p.margin[i] > margin_floor) hmax = std::max(hmax, std::abs(p.H[i]));
    margin_min = std::min(margin_min, p.margin[i]);
  }

  double harmonic = harmonicity_defect(f, p);

  // FD cross-check of H on a coarse subgrid, clear of the disc boundary.
  double h_fd_step = 1e-3;
  double agree = 0.0;
  const DiscDomain& dom = f.domain();
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) {
      double u = u_min + (u_max - u_min) * (i + 0.5) / 5.0;
      double v = v_min + (v_max - v_min) * (j + 0.5) / 5.0;
      if (std::hypot(u - dom.center, v) + 2.0 * h_fd_step >= dom.radius) continue;
      int iu = std::clamp(static_cast<int>(std::round((u - u_min) / (u_max - u_min) * (nu - 1))), 0, nu - 1);
      int iv = std::clamp(static_cast<int>(std::round((v - v_min) / (v_max - v_min) * (nv - 1))), 0, nv - 1);
      if (p.margin[p.index(iu, iv)] <= margin_floor) continue;
      double hs = p.H[p.index(iu, iv)];
      double u_node = p.u[iu], v_node = p.v[iv];
      double hf = mean_curvature_fd(f, u_node, v_node, h_fd_step);
      agree = std::max(agree, std::abs(hs - hf));
    }
  }

  double zeta = immersion_margin(f);
  json budget;
  bool budget_ok = zeta > 0.0;
  if (budget_ok) {
    EtaBudget b = eta_budget(f);
    budget = json{{"zeta", b.zeta}, {"S", b.S}, {"eta", b.eta}};
  } else {
    budget = json{{"zeta", zeta}, {"S", nullptr}, {"eta", nullptr}};
  }

  json r;
  r["isotropy_residual"] = check_below(f.isotropy_residual, tols.get("isotropy"));
  r["conformality_max"] = check_below(conf, tols.get("conformality"));
  r["harmonicity_max"] = check_below(harmonic, tols.get("harmonicity") * scale);
  r["mean_curvature_max"] = check_below(hmax, tols.get("mean_curvature"));
  r["mean_curvature_fd_agreement"] = check_below(agree, tols.get("h_agreement"));
  r["immersion_margin"] = check_entry(zeta, 0.0, budget_ok);
  r["patch_margin_min"] = margin_min;
  r["eta_budget"] = budget;

  cert.all_pass = true;
  for (const char* key : {"isotropy_residual", "conformality_max", "harmonicity_max",
                          "mean_curvature_max", "mean_curvature_fd_agreement",
                          "immersion_margin"})
    cert.all_pass = cert.all_pass && r[key]["pass"].get<bool>();
  cert.report = std::move(r);
  return cert;
}

}  // namespace bjorling
