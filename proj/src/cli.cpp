#include "bjorling/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>
#include <json.hpp>

#include "bjorling/builtins.hpp"
#include "bjorling/curve_io.hpp"
#include "bjorling/interpolate.hpp"
#include "bjorling/mesh.hpp"
#include "bjorling/report.hpp"

namespace bjorling {

namespace {

using nlohmann::json;

int exit_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationFailed:
    case ErrorCode::ParallelTangents:
    case ErrorCode::NotTimelike:
    case ErrorCode::DomainMismatch:
    case ErrorCode::OutOfDomain:
    case ErrorCode::NotInJn:
    case ErrorCode::DegeneratePlane:
      return 1;
    case ErrorCode::IoError:
      return 3;
    default:
      return 2;
  }
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

std::string metric_name(MetricTag m) {
  return m == MetricTag::Lorentz ? "lorentz" : "euclidean";
}

ToleranceTable tolerances_from(const RunConfig& cfg) {
  ToleranceTable t = ToleranceTable::defaults();
  for (const std::string& ov : cfg.tol_overrides) {
    size_t eq = ov.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ParseError, "--tol expects name=value, got '" + ov + "'");
    std::string name = ov.substr(0, eq);
    double value;
    try {
      value = std::stod(ov.substr(eq + 1));
    } catch (...) {
      fail(ErrorCode::ParseError, "bad tolerance value in '" + ov + "'");
    }
    t.set(name, value);
  }
  return t;
}

json provenance(const RunConfig& cfg, const ToleranceTable& tols, int nu, int nv,
                double v_half) {
  json p;
  p["command"] = cfg.command;
  p["metric"] = cfg.metric ? json(metric_name(*cfg.metric)) : json(nullptr);
  p["degree"] = cfg.degree;
  p["grid"] = {nu, nv};
  p["v_half_range"] = v_half;
  p["input"] = cfg.input;
  p["target"] = cfg.target;
  p["newton"] = cfg.newton;
  p["tolerances"] = tols.values();
  p["sample_counts"] = {{"interval", 512},
                        {"boundary", 256},
                        {"margin_grid", 64},
                        {"containment", 64}};
  p["timestamp"] = iso_timestamp();
  return p;
}

void collect_flags(const json& node, bool& all_pass) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it.key() == "pass" && it.value().is_boolean())
        all_pass = all_pass && it.value().get<bool>();
      collect_flags(it.value(), all_pass);
    }
  } else if (node.is_array()) {
    for (const json& child : node) collect_flags(child, all_pass);
  }
}

void emit_report(const RunConfig& cfg, json& report) {
  bool all_pass = true;
  collect_flags(report, all_pass);
  report["all_pass"] = all_pass;
  std::string text = report.dump(2) + "\n";
  if (!cfg.report_path.empty()) {
    std::ofstream f(cfg.report_path, std::ios::binary);
    if (!f) fail(ErrorCode::IoError, "cannot write report to '" + cfg.report_path + "'");
    f << text;
  } else {
    std::cout << text;
  }
}

void export_mesh_files(const SurfacePatch& patch, const std::string& obj_path) {
  write_obj(patch, obj_path);
  std::string csv = obj_path;
  size_t dot = csv.rfind('.');
  if (dot != std::string::npos) csv.resize(dot);
  write_scalar_csv(patch, csv + ".csv");
}

// Bjorling-problem inputs: builtin surface names or a data JSON file.
struct SurfaceInput {
  BjorlingData data;
  double u_min, u_max, v_min, v_max;
  std::string name;
};

SurfaceInput load_surface_input(const std::string& input, int degree,
                                std::optional<double> v_half) {
  if (input.empty())
    fail(ErrorCode::ParseError, "this command needs --input");
  SurfaceInput out;
  if (is_builtin_surface(input)) {
    GalleryEntry e = builtin_surface(input, degree);
    out = {std::move(e.data), e.u_min, e.u_max, e.v_min, e.v_max, e.name};
  } else if (!looks_like_path(input) && !std::filesystem::exists(input)) {
    fail(ErrorCode::ParseError,
         "'" + input + "' is neither a builtin surface nor an existing file");
  } else {
    BjorlingData data = bjorling_data_from_json_file(input);
    const DiscDomain& dom = data.domain();
    out = {std::move(data), dom.center - dom.interval_half_width,
           dom.center + dom.interval_half_width, -0.5, 0.5, input};
  }
  if (v_half) {
    out.v_min = -*v_half;
    out.v_max = *v_half;
  }
  // Keep the patch inside the disc; the margin is reported, not maximal.
  const DiscDomain& dom = out.data.domain();
  double umax_off = std::max(std::abs(out.u_min - dom.center),
                             std::abs(out.u_max - dom.center));
  double v_cap = std::sqrt(std::max(0.0, dom.radius * dom.radius - umax_off * umax_off));
  if (out.v_max > 0.98 * v_cap) {
    out.v_max = 0.98 * v_cap;
    out.v_min = -out.v_max;
  }
  return out;
}

json boundary_conditions_block(const IsotropicCurve& f, const BjorlingData& data,
                               const ToleranceTable& tols) {
  const DiscDomain& dom = data.domain();
  std::vector<double> us = dom.interval_samples(200);
  double pos_err = 0.0;
  for (double u : us) {
    Vec3 x = f.f.eval(cplx(u, 0.0)).real();
    Vec3 a = data.a.eval(cplx(u, 0.0)).real();
    Vec3 d = x - a;
    pos_err = std::max({pos_err, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  Vec3 orient = data.n.eval(cplx(dom.center, 0.0)).real();
  std::vector<Vec3> normals = normals_on_axis(f, us, orient);
  double n_err = 0.0;
  for (size_t i = 0; i < us.size(); ++i) {
    Vec3 d = normals[i] - data.n.eval(cplx(us[i], 0.0)).real();
    n_err = std::max({n_err, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  json out;
  out["position_error"] = check_below(pos_err, tols.get("boundary_position"));
  out["normal_error"] = check_below(n_err, tols.get("boundary_normal"));
  return out;
}

json run_surface(const SurfaceInput& in, const ToleranceTable& tols, int nu,
                 int nv, bool certify, const std::string& mesh_path) {
  IsotropicCurve f = solve(in.data, tols.get("isotropy"), tols.get("truncation"));
  json block;
  block["name"] = in.name;
  block["metric"] = metric_name(in.data.metric);
  if (certify) {
    SurfaceCertification cert =
        certify_surface(f, in.u_min, in.u_max, in.v_min, in.v_max, nu, nv, tols);
    block["certification"] = cert.report;
    block["boundary_conditions"] = boundary_conditions_block(f, in.data, tols);
    if (!mesh_path.empty()) export_mesh_files(cert.patch, mesh_path);
  } else {
    SurfacePatch patch = sample_patch(f, in.u_min, in.u_max, in.v_min, in.v_max, nu, nv);
    if (!mesh_path.empty()) export_mesh_files(patch, mesh_path);
    block["isotropy_residual"] = f.isotropy_residual;
  }
  return block;
}

int run_bjorling(const RunConfig& cfg, const ToleranceTable& tols) {
  SurfaceInput in = load_surface_input(cfg.input, cfg.degree, cfg.v_half_range);
  if (cfg.metric && *cfg.metric != in.data.metric)
    fail(ErrorCode::ValidationFailed, "--metric disagrees with the input data");
  int nu = cfg.grid_nu.value_or(64), nv = cfg.grid_nv.value_or(64);
  json report;
  report["schema_version"] = 1;
  report["provenance"] = provenance(cfg, tols, nu, nv, in.v_max);
  report["surface"] = run_surface(in, tols, nu, nv, true, cfg.mesh_path);
  emit_report(cfg, report);
  return report["all_pass"].get<bool>() ? 0 : 2;
}

int run_gallery(const RunConfig& cfg, const ToleranceTable& tols) {
  int nu = cfg.grid_nu.value_or(64), nv = cfg.grid_nv.value_or(64);
  json report;
  report["schema_version"] = 1;
  report["provenance"] = provenance(cfg, tols, nu, nv,
                                    cfg.v_half_range.value_or(0.5));
  json surfaces = json::array();
  for (const std::string& name : builtin_surface_names()) {
    SurfaceInput in = load_surface_input(name, cfg.degree, cfg.v_half_range);
    if (cfg.metric && in.data.metric != *cfg.metric) continue;
    std::string mesh;
    if (!cfg.mesh_path.empty()) {
      std::filesystem::create_directories(cfg.mesh_path);
      mesh = cfg.mesh_path + "/" + name + ".obj";
    }
    surfaces.push_back(run_surface(in, tols, nu, nv, true, mesh));
  }
  if (surfaces.empty())
    fail(ErrorCode::ValidationFailed, "no gallery surface matches the metric filter");
  report["surfaces"] = std::move(surfaces);
  emit_report(cfg, report);
  return report["all_pass"].get<bool>() ? 0 : 2;
}

int run_verify(const RunConfig& cfg, const ToleranceTable& tols) {
  if (cfg.input.empty()) fail(ErrorCode::ParseError, "verify needs --input");
  MetricTag metric = cfg.metric.value_or(MetricTag::Lorentz);
  Curve3 f = load_curve(cfg.input, cfg.degree, false);
  IsotropicCurve iso{f, metric, isotropy_residual(f, metric)};
  const DiscDomain& dom = f.domain();
  double v_half = cfg.v_half_range.value_or(0.5);
  double v_cap = std::sqrt(std::max(
      0.0, dom.radius * dom.radius - dom.interval_half_width * dom.interval_half_width));
  v_half = std::min(v_half, 0.98 * v_cap);
  int nu = cfg.grid_nu.value_or(64), nv = cfg.grid_nv.value_or(64);

  json report;
  report["schema_version"] = 1;
  report["provenance"] = provenance(cfg, tols, nu, nv, v_half);
  SurfaceCertification cert = certify_surface(
      iso, dom.center - dom.interval_half_width, dom.center + dom.interval_half_width,
      -v_half, v_half, nu, nv, tols);
  report["certification"] = cert.report;
  if (!cfg.mesh_path.empty()) export_mesh_files(cert.patch, cfg.mesh_path);
  emit_report(cfg, report);
  return report["all_pass"].get<bool>() ? 0 : 2;
}

int run_export(const RunConfig& cfg, const ToleranceTable& tols) {
  if (cfg.mesh_path.empty()) fail(ErrorCode::ParseError, "export needs --mesh");
  SurfaceInput in = load_surface_input(cfg.input, cfg.degree, cfg.v_half_range);
  int nu = cfg.grid_nu.value_or(64), nv = cfg.grid_nv.value_or(64);
  IsotropicCurve f = solve(in.data, tols.get("isotropy"), tols.get("truncation"));
  SurfacePatch patch = sample_patch(f, in.u_min, in.u_max, in.v_min, in.v_max, nu, nv);
  export_mesh_files(patch, cfg.mesh_path);
  if (!cfg.report_path.empty()) {
    json report;
    report["schema_version"] = 1;
    report["provenance"] = provenance(cfg, tols, nu, nv, in.v_max);
    report["mesh"] = cfg.mesh_path;
    emit_report(cfg, report);
  }
  return 0;
}

// The interpolation pipeline works on a modest disc: the Lemma-eta budget of
// the base surface shrinks like e^{-3R}, so builtin curve pairs are loaded on
// this domain rather than the wide gallery one.
DiscDomain interpolate_domain() { return DiscDomain(std::numbers::pi, 0.6, 0.4); }

int run_interpolate(const RunConfig& cfg, const ToleranceTable& tols) {
  if (cfg.input.empty() || cfg.target.empty())
    fail(ErrorCode::ParseError, "interpolate needs --input (a) and --target (l)");
  MetricTag metric = cfg.metric.value_or(MetricTag::Lorentz);
  std::optional<DiscDomain> dom;
  if (is_builtin_curve(cfg.input) || is_builtin_curve(cfg.target))
    dom = interpolate_domain();
  Curve3 a = load_curve(cfg.input, cfg.degree, true, dom);
  Curve3 l = load_curve(cfg.target, cfg.degree, true, dom);
  InterpolationProblem prob{std::move(a), std::move(l), metric};
  validate_problem(prob);

  IsotropicExtension ext =
      isotropic_extension(prob, tols.get("extension_identity") * 10.0, tols.get("tangent"));

  // Extension identities on I: d^l' _|_ l' and <d^l', d^l'> = <l', l'>.
  Curve3 lp = prob.l.derivative(), dlp = ext.d_l.derivative();
  Series orth = inner(metric, dlp, lp);
  Series norm_gap = inner(metric, dlp, dlp) - inner(metric, lp, lp);
  double worst_orth = 0.0, worst_norm = 0.0, worst_rec = 0.0;
  for (double u : prob.domain().interval_samples(512)) {
    worst_orth = std::max(worst_orth, std::abs(orth.eval(cplx(u, 0.0))));
    worst_norm = std::max(worst_norm, std::abs(norm_gap.eval(cplx(u, 0.0))));
    CVec3 gap = ext.C.f.eval(cplx(u, 0.0));
    CVec3 lv = prob.l.eval(cplx(u, 0.0));
    worst_rec = std::max({worst_rec, std::abs(gap.x.real() - lv.x.real()),
                          std::abs(gap.y.real() - lv.y.real()),
                          std::abs(gap.z.real() - lv.z.real())});
  }

  BaseSurface base = make_base_surface(prob.a, ext.n_l, metric);
  EtaBudget budget = eta_budget(base.f0);
  ClosenessReport closeness = closeness_report(prob, ext, base, budget);
  ContainmentReport containment =
      containment_check(ext.C, prob.a, 64, tols.get("containment"));

  int nu = cfg.grid_nu.value_or(64), nv = cfg.grid_nv.value_or(64);
  const DiscDomain& d = prob.domain();
  double v_half = cfg.v_half_range.value_or(0.5);
  double v_cap = std::sqrt(std::max(
      0.0, d.radius * d.radius - d.interval_half_width * d.interval_half_width));
  v_half = std::min(v_half, 0.98 * v_cap);

  json report;
  report["schema_version"] = 1;
  report["provenance"] = provenance(cfg, tols, nu, nv, v_half);
  json ej;
  double id_tol = tols.get("extension_identity");
  ej["isotropy_residual"] = check_below(ext.C.isotropy_residual, tols.get("isotropy"));
  ej["orthogonality_residual"] = check_below(worst_orth, id_tol);
  ej["norm_match_residual"] = check_below(worst_norm, id_tol);
  ej["re_c_equals_l"] = check_below(worst_rec, tols.get("boundary_position"));
  report["extension"] = ej;
  report["closeness"] = {
      {"norm_l_a", closeness.norm_l_a},
      {"norm_l_a_prime", closeness.norm_l_a_prime},
      {"norm_d_d0", closeness.norm_d_d0},
      {"norm_d_d0_prime", closeness.norm_d_d0_prime},
      {"eta", closeness.eta},
      {"eta1", closeness.eta1},
      {"eta2", closeness.eta2},
      {"pass", closeness.pass},
      {"epsilon_condition", "not certified"},
  };
  report["containment"] = {
      {"max_residual", containment.max_residual},
      {"tolerance", tols.get("containment")},
      {"pass", containment.pass},
  };

  if (cfg.newton) {
    NewtonState state = chord_newton(ext.C, prob.a, base.d0, 20, tols.get("newton"));
    report["newton"] = {
        {"residual_history", state.residual_history},
        {"final_residual", state.residual_history.back()},
        {"iterations", state.residual_history.size() - 1},
        {"converged", true},
    };
  }

  SurfaceCertification cert = certify_surface(
      ext.C, d.center - d.interval_half_width, d.center + d.interval_half_width,
      -v_half, v_half, nu, nv, tols);
  report["surface"] = cert.report;
  if (!cfg.mesh_path.empty()) export_mesh_files(cert.patch, cfg.mesh_path);
  emit_report(cfg, report);
  return report["all_pass"].get<bool>() ? 0 : 2;
}

}  // namespace

int run(const RunConfig& cfg) {
  if (cfg.degree < 8) fail(ErrorCode::ParseError, "--degree must be at least 8");
  if (cfg.grid_nu.value_or(64) < 2 || cfg.grid_nv.value_or(64) < 2)
    fail(ErrorCode::ParseError, "grid dimensions must be at least 2");
  ToleranceTable tols = tolerances_from(cfg);

  if (cfg.command == "bjorling") return run_bjorling(cfg, tols);
  if (cfg.command == "interpolate") return run_interpolate(cfg, tols);
  if (cfg.command == "verify") return run_verify(cfg, tols);
  if (cfg.command == "gallery") return run_gallery(cfg, tols);
  if (cfg.command == "export") return run_export(cfg, tols);
  fail(ErrorCode::ParseError, "unknown command '" + cfg.command + "'");
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Bjorling surfaces and curve interpolation in E^3 and L^3"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string metric_str, grid_str;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--metric", metric_str, "euclidean or lorentz");
    sub->add_option("--degree", cfg.degree, "series truncation degree");
    sub->add_option("--grid", grid_str, "patch grid, e.g. 64x64");
    sub->add_option("--v-range", [&cfg](const std::vector<std::string>& vals) {
      cfg.v_half_range = std::stod(vals[0]);
      return true;
    }, "half-width of the v range");
    sub->add_option("--tol", cfg.tol_overrides, "tolerance override name=value");
    sub->add_option("--input", cfg.input, "input curve/surface (file or builtin)");
    sub->add_option("--target", cfg.target, "target curve (file or builtin)");
    sub->add_option("--mesh", cfg.mesh_path, "OBJ output path (directory for gallery)");
    sub->add_option("--report", cfg.report_path, "report JSON output path");
    sub->add_flag("--newton", cfg.newton, "run the chord-Newton iteration");
  };
  for (const char* name : {"bjorling", "interpolate", "verify", "gallery", "export"})
    add_common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", {{"code", "ParseError"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!metric_str.empty()) {
    if (metric_str == "euclidean") cfg.metric = MetricTag::Euclidean;
    else if (metric_str == "lorentz") cfg.metric = MetricTag::Lorentz;
    else {
      std::cerr << json{{"error",
                         {{"code", "ParseError"},
                          {"message", "--metric must be euclidean or lorentz"}}}}
                       .dump()
                << "\n";
      return 1;
    }
  }
  if (!grid_str.empty()) {
    size_t x = grid_str.find('x');
    try {
      if (x == std::string::npos) throw std::runtime_error("");
      cfg.grid_nu = std::stoi(grid_str.substr(0, x));
      cfg.grid_nv = std::stoi(grid_str.substr(x + 1));
    } catch (...) {
      std::cerr << json{{"error", {{"code", "ParseError"},
                                   {"message", "--grid expects NUxNV"}}}}
                       .dump()
                << "\n";
      return 1;
    }
  }

  try {
    return run(cfg);
  } catch (const Error& e) {
    std::cerr << json{{"error", {{"code", error_code_name(e.code())},
                                 {"message", e.what()}}}}
                     .dump()
              << "\n";
    return exit_class(e.code());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  }
}

}  // namespace bjorling
