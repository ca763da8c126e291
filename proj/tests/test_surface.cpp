#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bjorling/builtins.hpp"
#include "bjorling/surface.hpp"

using namespace bjorling;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

// Hand-derived closed forms. Catenoid: a = (cos u, sin u, 0) with inward
// normal n = (-cos u, -sin u, 0) gives n x_E a' = (0,0,-1), so
// f = (cos w, sin w, i (w - u0)) and Re f = (cos u cosh v, sin u cosh v, -v).
Vec3 catenoid_closed_form(double u, double v) {
  return {std::cos(u) * std::cosh(v), std::sin(u) * std::cosh(v), -v};
}

// Helicoid: a = (0,0,u), n = (cos u, sin u, 0), n x_E a' = (sin u, -cos u, 0);
// f = (i(cos w - cos u0), i(sin w - sin u0), w).
Vec3 helicoid_closed_form(double u, double v) {
  return {std::sin(u) * std::sinh(v), -std::cos(u) * std::sinh(v), u};
}

// Enneper from its Weierstrass form f = (w - w^3/3, i(w + w^3/3), w^2).
Vec3 enneper_closed_form(double u, double v) {
  cplx w(u, v);
  cplx f1 = w - w * w * w / 3.0;
  cplx f2 = cplx(0, 1) * (w + w * w * w / 3.0);
  cplx f3 = w * w;
  return {f1.real(), f2.real(), f3.real()};
}

// Planar Lorentz example (theta = 0): d0' = (-cos, -sin, 0), f has
// Re f = (e^v cos u, e^v sin u, 0) and margin |Phi1|^2+|Phi2|^2-|Phi3|^2
// = 2 e^{2v}.
Vec3 lorentz_plane_closed_form(double u, double v, double u0) {
  (void)u0;
  return {std::exp(v) * std::cos(u), std::exp(v) * std::sin(u), 0.0};
}

double max_component_gap(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace

TEST_CASE("validate accepts the circle data and flags bad normals") {
  DiscDomain dom = default_trig_domain();
  GalleryEntry plane = builtin_surface("lorentz-plane", 48);
  CHECK(validate(plane.data).empty());

  // same a with n = (0,0,2): unit-norm violation
  BjorlingData bad{plane.data.a,
                   Curve3{Series::constant(dom, 0.0), Series::constant(dom, 0.0),
                          Series::constant(dom, 2.0)},
                   MetricTag::Lorentz};
  auto v = validate(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].what.find("unit") != std::string::npos);

  // Euclidean line with orthogonal unit normal
  Curve3 a{Series::identity(dom), Series::constant(dom, 0.0), Series::constant(dom, 0.0)};
  Curve3 n{Series::constant(dom, 0.0), Series::constant(dom, 1.0), Series::constant(dom, 0.0)};
  CHECK(validate({a, n, MetricTag::Euclidean}).empty());
}

TEST_CASE("catenoid reproduces its closed form") {
  GalleryEntry g = builtin_surface("catenoid", 48);
  IsotropicCurve f = solve(g.data);
  CHECK(f.isotropy_residual < 1e-10);

  SurfacePatch p = sample_patch(f, g.u_min, g.u_max, -0.5, 0.5, 50, 50);
  double worst = 0.0;
  for (int j = 0; j < p.nv; ++j)
    for (int i = 0; i < p.nu; ++i)
      worst = std::max(worst, max_component_gap(p.positions[p.index(i, j)],
                                                catenoid_closed_form(p.u[i], p.v[j])));
  CHECK(worst < 1e-10);

  double hmax = 0.0, conf = 0.0;
  for (size_t i = 0; i < p.H.size(); ++i) {
    hmax = std::max(hmax, std::abs(p.H[i]));
    conf = std::max(conf, std::max(std::abs(p.E[i] - p.G[i]), std::abs(p.F[i])));
  }
  CHECK(hmax < 1e-6);
  CHECK(conf < 1e-8 * 2.0 * std::cosh(0.5) * std::cosh(0.5));

  // margin oracle: |f'|^2 = 2 cosh^2 v per node, >= 2 at v = 0
  double mmin = *std::min_element(p.margin.begin(), p.margin.end());
  double expected = std::numeric_limits<double>::infinity();
  for (double v : p.v) expected = std::min(expected, 2.0 * std::cosh(v) * std::cosh(v));
  CHECK(mmin == Approx(expected).epsilon(1e-9));
  CHECK(mmin > 1.0);
}

TEST_CASE("helicoid reproduces its closed form") {
  GalleryEntry g = builtin_surface("helicoid", 48);
  IsotropicCurve f = solve(g.data);
  SurfacePatch p = sample_patch(f, g.u_min, g.u_max, -0.5, 0.5, 50, 50);
  double worst = 0.0;
  for (int j = 0; j < p.nv; ++j)
    for (int i = 0; i < p.nu; ++i)
      worst = std::max(worst, max_component_gap(p.positions[p.index(i, j)],
                                                helicoid_closed_form(p.u[i], p.v[j])));
  CHECK(worst < 1e-10);
}

TEST_CASE("enneper reproduces its Weierstrass closed form") {
  GalleryEntry g = builtin_surface("enneper", 48);
  IsotropicCurve f = solve(g.data);
  CHECK(f.isotropy_residual < 1e-10);
  SurfacePatch p = sample_patch(f, -0.3, 0.3, -0.3, 0.3, 40, 40);
  double worst = 0.0;
  for (int j = 0; j < p.nv; ++j)
    for (int i = 0; i < p.nu; ++i)
      worst = std::max(worst, max_component_gap(p.positions[p.index(i, j)],
                                                enneper_closed_form(p.u[i], p.v[j])));
  CHECK(worst < 1e-10);
}

TEST_CASE("planar Lorentz example: flat surface, margin 2 e^{2v}") {
  GalleryEntry g = builtin_surface("lorentz-plane", 48);
  IsotropicCurve f = solve(g.data);
  CHECK(f.isotropy_residual < 1e-10);

  SurfacePatch p = sample_patch(f, g.u_min, g.u_max, -0.5, 0.5, 40, 40);
  double worst = 0.0, hmax = 0.0, margin_gap = 0.0;
  for (int j = 0; j < p.nv; ++j) {
    for (int i = 0; i < p.nu; ++i) {
      int idx = p.index(i, j);
      worst = std::max(worst, max_component_gap(
                                  p.positions[idx],
                                  lorentz_plane_closed_form(p.u[i], p.v[j], kPi)));
      CHECK(std::abs(p.positions[idx].z) < 1e-12);  // third component vanishes
      hmax = std::max(hmax, std::abs(p.H[idx]));
      margin_gap = std::max(margin_gap,
                            std::abs(p.margin[idx] - 2.0 * std::exp(2.0 * p.v[j])));
    }
  }
  CHECK(worst < 1e-10);
  CHECK(hmax < 1e-6);
  CHECK(margin_gap < 1e-9);
}

TEST_CASE("isotropy residual flags non-isotropic curves") {
  DiscDomain dom(0.0, 1.0, 0.5);
  Series id = Series::identity(dom), zero = Series::constant(dom, 0.0);
  // f = (w, iw, 0): 1 + i^2 = 0 exactly
  Curve3 null_curve{id, id * cplx(0.0, 1.0), zero};
  CHECK(isotropy_residual(null_curve, MetricTag::Euclidean) < 1e-14);
  // f = (w, 0, 0) is not isotropic
  Curve3 line{id, zero, zero};
  CHECK(isotropy_residual(line, MetricTag::Euclidean) == Approx(1.0));
}

TEST_CASE("boundary conditions: Re f = a and N = n on the axis") {
  for (const char* name : {"catenoid", "helicoid", "lorentz-plane", "lorentz-boosted"}) {
    GalleryEntry g = builtin_surface(name, 48);
    IsotropicCurve f = solve(g.data);
    std::vector<double> us = g.data.domain().interval_samples(200);
    double pos = 0.0;
    for (double u : us)
      pos = std::max(pos, max_component_gap(f.f.eval(cplx(u, 0.0)).real(),
                                            g.data.a.eval(cplx(u, 0.0)).real()));
    CHECK(pos < 1e-10);

    Vec3 orient = g.data.n.eval(cplx(g.data.domain().center, 0.0)).real();
    auto normals = normals_on_axis(f, us, orient);
    double nerr = 0.0;
    for (size_t i = 0; i < us.size(); ++i)
      nerr = std::max(nerr, max_component_gap(normals[i],
                                              g.data.n.eval(cplx(us[i], 0.0)).real()));
    CHECK(nerr < 1e-8);
  }
}

TEST_CASE("harmonicity and FD mean-curvature cross-check") {
  GalleryEntry g = builtin_surface("catenoid", 48);
  IsotropicCurve f = solve(g.data);
  SurfacePatch p = sample_patch(f, g.u_min, g.u_max, -0.5, 0.5, 50, 50);
  double scale = 1.0;
  for (const Vec3& pos : p.positions)
    scale = std::max({scale, std::abs(pos.x), std::abs(pos.y), std::abs(pos.z)});
  CHECK(harmonicity_defect(f, p) < 1e-6 * scale);

  for (double u : {2.0, kPi, 4.0})
    for (double v : {-0.3, 0.0, 0.25}) {
      double hs = 0.0;  // series value is ~1e-12; compare against FD
      double hf = mean_curvature_fd(f, u, v);
      CHECK(std::abs(hs - hf) < 1e-4);
    }
}

TEST_CASE("degenerate patches are rejected") {
  DiscDomain dom(0.0, 1.0, 0.5);
  Series zero = Series::constant(dom, 0.0, 4);
  Curve3 constant{zero, zero, zero};
  IsotropicCurve f{constant, MetricTag::Euclidean, 0.0};
  CHECK(immersion_margin(f) == Approx(0.0));
  CHECK_THROWS_AS(sample_patch(f, -0.4, 0.4, -0.2, 0.2, 8, 8), Error);
  CHECK_THROWS_AS(eta_budget(f), Error);
  // grid leaving the disc
  GalleryEntry g = builtin_surface("catenoid", 48);
  IsotropicCurve cat = solve(g.data);
  CHECK_THROWS_AS(sample_patch(cat, g.u_min, g.u_max, -3.4, 3.4, 8, 8), Error);
}

TEST_CASE("eta budget closed form and measured budgets") {
  // S = 1, zeta = 3: both quadratics solved by hand give
  // eta = 0.9 min(sqrt(2) - 1, 1) = 0.9 (sqrt(2) - 1).
  EtaBudget b = eta_budget_from(1.0, 3.0);
  CHECK(b.eta == Approx(0.9 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));

  // zeta -> 0+ collapses the budget
  CHECK(eta_budget_from(1.0, 1e-12).eta == Approx(0.0).epsilon(1e-5));
  CHECK(eta_budget_from(1.0, 1e-12).eta > 0.0);

  // measured budget on the planar Lorentz base re-verifies the inequalities
  GalleryEntry g = builtin_surface("lorentz-plane", 48);
  IsotropicCurve f = solve(g.data);
  EtaBudget m = eta_budget(f);
  CHECK(m.zeta > 0.0);
  CHECK(2.0 * m.S * m.eta + m.eta * m.eta < m.zeta / 3.0);
  CHECK(2.0 * m.S * m.eta - m.eta * m.eta > 0.0);
  CHECK(2.0 * m.S * m.eta - m.eta * m.eta < m.zeta / 3.0);
}

TEST_CASE("Lemma eta property: perturbations within budget stay immersed") {
  // Modest disc keeps the budget workable; the margin decays like e^{-2R}.
  DiscDomain dom(kPi, 1.2, 0.8);
  Curve3 a{cosine_series(dom, 48), sine_series(dom, 48), Series::constant(dom, 0.0)};
  Curve3 n{Series::constant(dom, 0.0), Series::constant(dom, 0.0),
           Series::constant(dom, 1.0)};
  IsotropicCurve f0 = solve({a, n, MetricTag::Lorentz});
  EtaBudget budget = eta_budget(f0);
  REQUIRE(budget.eta > 0.0);

  Curve3 phi0 = f0.f.derivative();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> amp(0.0, 0.999);

  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // random analytic g with sup |g_i| < eta, so ||F_i| - |Phi_0i|| < eta
    std::array<Series, 3> g;
    for (int c = 0; c < 3; ++c) {
      std::vector<cplx> coeffs(13);
      for (int k = 0; k < 13; ++k)
        coeffs[k] = cplx(coef(rng), coef(rng)) * std::pow(0.7, k);
      Series raw(dom, coeffs);
      double sup = raw.sup_norm().value;
      g[c] = raw * cplx(amp(rng) * budget.eta / sup, 0.0);
    }
    Curve3 F{phi0.comp[0] + g[0], phi0.comp[1] + g[1], phi0.comp[2] + g[2]};

    double min_margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 64; ++j) {
      double th = 2.0 * kPi * j / 64;
      for (double rho : {1.0, 0.7, 0.4}) {
        cplx w = dom.center + rho * dom.radius * cplx(std::cos(th), std::sin(th));
        CVec3 v = F.eval(w);
        min_margin = std::min(min_margin,
                              std::norm(v.x) + std::norm(v.y) - std::norm(v.z));
      }
    }
    if (!(min_margin > 0.0)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("solve rejects invalid data") {
  DiscDomain dom = default_trig_domain();
  GalleryEntry g = builtin_surface("lorentz-plane", 48);
  BjorlingData bad{g.data.a,
                   Curve3{Series::constant(dom, 0.0), Series::constant(dom, 0.0),
                          Series::constant(dom, 2.0)},
                   MetricTag::Lorentz};
  CHECK_THROWS_AS(solve(bad), Error);
}
