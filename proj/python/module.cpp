#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bjorling/builtins.hpp"
#include "bjorling/curve_io.hpp"
#include "bjorling/interpolate.hpp"
#include "bjorling/surface.hpp"

namespace py = pybind11;
using namespace bjorling;

namespace {

CVec3 to_cvec(const std::array<cplx, 3>& v) { return {v[0], v[1], v[2]}; }

std::array<cplx, 3> from_cvec(const CVec3& v) { return {v.x, v.y, v.z}; }

Curve3 curve_from_coeffs(const DiscDomain& dom,
                         const std::vector<std::vector<cplx>>& comps) {
  if (comps.size() != 3)
    fail(ErrorCode::ParseError, "expected 3 coefficient lists");
  return Curve3(Series::from_taylor(dom, comps[0]), Series::from_taylor(dom, comps[1]),
                Series::from_taylor(dom, comps[2]));
}

}  // namespace

PYBIND11_MODULE(_bjorling, m) {
  m.doc() = "Bjorling surfaces and curve interpolation in E^3 and L^3";

  py::register_exception<Error>(m, "BjorlingError");

  py::enum_<MetricTag>(m, "MetricTag")
      .value("Euclidean", MetricTag::Euclidean)
      .value("Lorentz", MetricTag::Lorentz);

  py::enum_<CausalCharacter>(m, "CausalCharacter")
      .value("Spacelike", CausalCharacter::Spacelike)
      .value("Timelike", CausalCharacter::Timelike)
      .value("Lightlike", CausalCharacter::Lightlike);

  m.def("inner", [](MetricTag t, const std::array<cplx, 3>& a,
                    const std::array<cplx, 3>& b) { return inner(t, to_cvec(a), to_cvec(b)); });
  m.def("cross", [](MetricTag t, const std::array<cplx, 3>& a,
                    const std::array<cplx, 3>& b) { return from_cvec(cross(t, to_cvec(a), to_cvec(b))); });
  m.def("causal_character",
        [](double x, double y, double z, double tol) {
          return causal_character(Vec3(x, y, z), tol);
        },
        py::arg("x"), py::arg("y"), py::arg("z"), py::arg("tol") = 1e-12);
  m.def("normalize_timelike", [](double x, double y, double z) {
    Vec3 v = normalize_timelike(Vec3(x, y, z));
    return std::array<double, 3>{v.x, v.y, v.z};
  });

  py::class_<DiscDomain>(m, "DiscDomain")
      .def(py::init<double, double, double>(), py::arg("center"), py::arg("radius"),
           py::arg("interval_half_width"))
      .def_readonly("center", &DiscDomain::center)
      .def_readonly("radius", &DiscDomain::radius)
      .def_readonly("interval_half_width", &DiscDomain::interval_half_width);

  py::class_<Series>(m, "Series")
      .def_static("from_taylor", &Series::from_taylor)
      .def("eval", &Series::eval)
      .def("derivative", &Series::derivative)
      .def("antiderivative", &Series::antiderivative)
      .def("degree", &Series::degree)
      .def("taylor_coefficients", &Series::taylor_coefficients)
      .def("sup_norm", [](const Series& s) { return s.sup_norm().value; })
      .def("is_real_on_interval", &Series::is_real_on_interval, py::arg("tol"),
           py::arg("samples") = 512);

  py::class_<Curve3>(m, "Curve3")
      .def(py::init(&curve_from_coeffs), py::arg("domain"), py::arg("components"))
      .def("eval", [](const Curve3& c, cplx w) { return from_cvec(c.eval(w)); })
      .def("derivative", &Curve3::derivative)
      .def("sup_norm", [](const Curve3& c) { return c.sup_norm().value; })
      .def("domain", &Curve3::domain);

  m.def("builtin_curve", &builtin_curve, py::arg("spec"), py::arg("degree") = 48,
        py::arg("domain") = std::nullopt);
  m.def("spacelike_margin", &spacelike_margin, py::arg("curve"), py::arg("samples") = 512);

  py::class_<BjorlingData>(m, "BjorlingData")
      .def(py::init<Curve3, Curve3, MetricTag>(), py::arg("a"), py::arg("n"),
           py::arg("metric"))
      .def_readonly("a", &BjorlingData::a)
      .def_readonly("n", &BjorlingData::n);

  py::class_<IsotropicCurve>(m, "IsotropicCurve")
      .def_readonly("f", &IsotropicCurve::f)
      .def_readonly("metric", &IsotropicCurve::metric)
      .def_readonly("isotropy_residual", &IsotropicCurve::isotropy_residual);

  py::class_<SurfacePatch>(m, "SurfacePatch")
      .def_readonly("nu", &SurfacePatch::nu)
      .def_readonly("nv", &SurfacePatch::nv)
      .def_readonly("E", &SurfacePatch::E)
      .def_readonly("F", &SurfacePatch::F)
      .def_readonly("G", &SurfacePatch::G)
      .def_readonly("H", &SurfacePatch::H)
      .def_readonly("margin", &SurfacePatch::margin)
      .def("positions", [](const SurfacePatch& p) {
        std::vector<std::array<double, 3>> out;
        out.reserve(p.positions.size());
        for (const Vec3& v : p.positions) out.push_back({v.x, v.y, v.z});
        return out;
      });

  py::class_<EtaBudget>(m, "EtaBudget")
      .def_readonly("zeta", &EtaBudget::zeta)
      .def_readonly("S", &EtaBudget::S)
      .def_readonly("eta", &EtaBudget::eta);

  m.def("builtin_surface_data", [](const std::string& name, int degree) {
    GalleryEntry e = builtin_surface(name, degree);
    return e.data;
  }, py::arg("name"), py::arg("degree") = 48);
  m.def("solve_bjorling", &solve, py::arg("data"), py::arg("isotropy_tol") = 1e-10,
        py::arg("truncation_tol") = 1e-9);
  m.def("isotropy_residual", &isotropy_residual, py::arg("f"), py::arg("metric"),
        py::arg("samples") = 256);
  m.def("sample_patch", &sample_patch, py::arg("f"), py::arg("u_min"), py::arg("u_max"),
        py::arg("v_min"), py::arg("v_max"), py::arg("nu"), py::arg("nv"),
        py::arg("degenerate_tol") = 1e-12);
  m.def("immersion_margin", &immersion_margin, py::arg("f"),
        py::arg("boundary_samples") = 256, py::arg("grid_side") = 64);
  m.def("eta_budget", &eta_budget);

  py::class_<InterpolationProblem>(m, "InterpolationProblem")
      .def(py::init<Curve3, Curve3, MetricTag>(), py::arg("a"), py::arg("l"),
           py::arg("metric"));

  py::class_<IsotropicExtension>(m, "IsotropicExtension")
      .def_readonly("n_l", &IsotropicExtension::n_l)
      .def_readonly("d_l", &IsotropicExtension::d_l)
      .def_readonly("C", &IsotropicExtension::C);

  py::class_<ContainmentReport>(m, "ContainmentReport")
      .def_readonly("max_residual", &ContainmentReport::max_residual)
      .def_readonly("residuals", &ContainmentReport::residuals)
      .def_readonly("pass_", &ContainmentReport::pass);

  py::class_<NewtonState>(m, "NewtonState")
      .def_readonly("residual_history", &NewtonState::residual_history)
      .def_readonly("gamma", &NewtonState::gamma)
      .def_readonly("d", &NewtonState::d);

  m.def("pair_normal", &pair_normal, py::arg("problem"), py::arg("tangent_tol") = 1e-10);
  m.def("isotropic_extension", &isotropic_extension, py::arg("problem"),
        py::arg("isotropy_tol") = 1e-9, py::arg("tangent_tol") = 1e-10);
  m.def("containment_check", &containment_check, py::arg("C"), py::arg("a"),
        py::arg("samples") = 64, py::arg("tol") = 1e-4);
  m.def("chord_newton", &chord_newton, py::arg("C"), py::arg("a"), py::arg("d0"),
        py::arg("max_iter") = 20, py::arg("tol") = 1e-9);
  m.def("make_base_surface", &make_base_surface, py::arg("a"), py::arg("n0"),
        py::arg("metric"));

  py::class_<BaseSurface>(m, "BaseSurface")
      .def_readonly("n0", &BaseSurface::n0)
      .def_readonly("d0", &BaseSurface::d0)
      .def_readonly("f0", &BaseSurface::f0);

  m.def("curve_to_json", &curve_to_json_text);
  m.def("curve_from_json", &curve_from_json_text, py::arg("text"),
        py::arg("require_real_on_interval") = true, py::arg("truncation_tol") = 1e-9);
}
