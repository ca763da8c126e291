#include "bjorling/builtins.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bjorling {

namespace {

// Series of A cos(w) + B sin(w): k-th Taylor coefficient about u0 is the
// k-th derivative over k!, cycling through the quadrant phases.
Series trig_combo(const DiscDomain& dom, int degree, double A, double B) {
  std::vector<cplx> c(static_cast<size_t>(degree) + 1);
  double co = std::cos(dom.center), si = std::sin(dom.center);
  double dk[4][2] = {{co, si}, {-si, co}, {-co, -si}, {si, -co}};
  double p = 1.0;  // R^k / k!
  for (int k = 0; k <= degree; ++k) {
    c[k] = (A * dk[k % 4][0] + B * dk[k % 4][1]) * p;
    p *= dom.radius / (k + 1);
  }
  return Series(dom, std::move(c));
}

Series hyper_combo(const DiscDomain& dom, int degree, double A, double B) {
  std::vector<cplx> c(static_cast<size_t>(degree) + 1);
  double ch = std::cosh(dom.center), sh = std::sinh(dom.center);
  double p = 1.0;
  for (int k = 0; k <= degree; ++k) {
    c[k] = (k % 2 == 0 ? A * ch + B * sh : A * sh + B * ch) * p;
    p *= dom.radius / (k + 1);
  }
  return Series(dom, std::move(c));
}

struct ParsedSpec {
  std::string name;
  std::vector<double> args;
};

std::optional<ParsedSpec> parse_spec(const std::string& spec) {
  ParsedSpec out;
  size_t open = spec.find('(');
  if (open == std::string::npos) {
    out.name = spec;
    return out;
  }
  if (spec.back() != ')') return std::nullopt;
  out.name = spec.substr(0, open);
  std::string inner = spec.substr(open + 1, spec.size() - open - 2);
  std::stringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      out.args.push_back(v);
    } catch (...) {
      return std::nullopt;
    }
  }
  return out;
}

void need_args(const ParsedSpec& p, size_t n) {
  if (p.args.size() != n)
    fail(ErrorCode::ParseError, "builtin '" + p.name + "' expects " +
                                    std::to_string(n) + " argument(s)");
}

}  // namespace

DiscDomain default_trig_domain() {
  return DiscDomain(std::numbers::pi, 3.5, std::numbers::pi);
}

DiscDomain enneper_domain() { return DiscDomain(0.0, 0.5, 0.35); }

Series cosine_series(const DiscDomain& dom, int degree) {
  return trig_combo(dom, degree, 1.0, 0.0);
}
Series sine_series(const DiscDomain& dom, int degree) {
  return trig_combo(dom, degree, 0.0, 1.0);
}
Series cosh_series(const DiscDomain& dom, int degree) {
  return hyper_combo(dom, degree, 1.0, 0.0);
}
Series sinh_series(const DiscDomain& dom, int degree) {
  return hyper_combo(dom, degree, 0.0, 1.0);
}

Series exp_series(const DiscDomain& dom, int degree) {
  std::vector<cplx> c(static_cast<size_t>(degree) + 1);
  double e = std::exp(dom.center);
  double p = 1.0;
  for (int k = 0; k <= degree; ++k) {
    c[k] = e * p;
    p *= dom.radius / (k + 1);
  }
  return Series(dom, std::move(c));
}

bool is_builtin_curve(const std::string& spec) {
  auto p = parse_spec(spec);
  if (!p) return false;
  return p->name == "circle" || p->name == "line" || p->name == "helix" ||
         p->name == "perturbed-circle" || p->name == "boosted-circle";
}

Curve3 builtin_curve(const std::string& spec, int degree,
                     std::optional<DiscDomain> dom_opt) {
  auto p = parse_spec(spec);
  if (!p) fail(ErrorCode::ParseError, "cannot parse curve spec '" + spec + "'");
  DiscDomain dom = dom_opt.value_or(default_trig_domain());
  Series zero = Series::constant(dom, 0.0);
  Series id = Series::identity(dom);
  double u0 = dom.center;

  if (p->name == "circle") {
    need_args(*p, 1);
    double r = p->args[0];
    return {cosine_series(dom, degree) * cplx(r, 0.0),
            sine_series(dom, degree) * cplx(r, 0.0), zero};
  }
  if (p->name == "line") {
    need_args(*p, 3);
    return {id * cplx(p->args[0], 0.0), id * cplx(p->args[1], 0.0),
            id * cplx(p->args[2], 0.0)};
  }
  if (p->name == "helix") {
    need_args(*p, 2);
    double r = p->args[0], pitch = p->args[1];
    return {cosine_series(dom, degree) * cplx(r, 0.0),
            sine_series(dom, degree) * cplx(r, 0.0), id * cplx(pitch, 0.0)};
  }
  if (p->name == "perturbed-circle" || p->name == "boosted-circle") {
    // circle(r) plus eps * int_{u0}^{u} m(t) dt where m is spacelike, never
    // zero, and Lorentz-orthogonal to the circle tangent: m = e_r for the
    // planar variant, m = 1.25 e_r + 0.75 e_3 for the boosted one. Anchoring
    // at u0 keeps l(u0) = a(u0), which the interpolation machinery needs.
    need_args(*p, 2);
    double r = p->args[0], eps = p->args[1];
    bool boosted = p->name == "boosted-circle";
    double radial = boosted ? 1.25 * eps : eps;
    double axial = boosted ? 0.75 * eps : 0.0;
    Series cz = cosine_series(dom, degree), sz = sine_series(dom, degree);
    Series lx = cz * cplx(r, 0.0) +
                (sz - Series::constant(dom, std::sin(u0))) * cplx(radial, 0.0);
    Series ly = sz * cplx(r, 0.0) -
                (cz - Series::constant(dom, std::cos(u0))) * cplx(radial, 0.0);
    Series lz = (id - Series::constant(dom, u0)) * cplx(axial, 0.0);
    return {std::move(lx), std::move(ly), std::move(lz)};
  }
  fail(ErrorCode::ParseError, "unknown builtin curve '" + p->name + "'");
}

bool is_builtin_surface(const std::string& name) {
  auto p = parse_spec(name);
  if (!p) return false;
  return p->name == "catenoid" || p->name == "helicoid" || p->name == "enneper" ||
         p->name == "lorentz-plane" || p->name == "lorentz-boosted";
}

GalleryEntry builtin_surface(const std::string& name, int degree) {
  auto p = parse_spec(name);
  if (!p) fail(ErrorCode::ParseError, "cannot parse surface name '" + name + "'");
  DiscDomain dom = default_trig_domain();
  double u0 = dom.center;
  double u_min = u0 - dom.interval_half_width, u_max = u0 + dom.interval_half_width;

  if (p->name == "catenoid") {
    Curve3 a = builtin_curve("circle(1)", degree, dom);
    Curve3 n{cosine_series(dom, degree) * cplx(-1.0, 0.0),
             sine_series(dom, degree) * cplx(-1.0, 0.0), Series::constant(dom, 0.0)};
    return {"catenoid", {std::move(a), std::move(n), MetricTag::Euclidean},
            u_min, u_max, -0.5, 0.5};
  }
  if (p->name == "helicoid") {
    Curve3 a{Series::constant(dom, 0.0), Series::constant(dom, 0.0),
             Series::identity(dom)};
    Curve3 n{cosine_series(dom, degree), sine_series(dom, degree),
             Series::constant(dom, 0.0)};
    return {"helicoid", {std::move(a), std::move(n), MetricTag::Euclidean},
            u_min, u_max, -0.5, 0.5};
  }
  if (p->name == "enneper") {
    DiscDomain ed = enneper_domain();
    Curve3 a{Series::from_monomials(ed, {0.0, 1.0, 0.0, -1.0 / 3.0}),
             Series::constant(ed, 0.0), Series::from_monomials(ed, {0.0, 0.0, 1.0})};
    // Normal of the Weierstrass g = w parametrization along the geodesic:
    // (2w, 0, w^2 - 1)/(1 + w^2); analytic on the disc since |w| < 1.
    std::vector<cplx> pad(static_cast<size_t>(degree) + 1, 0.0);
    Series padder(ed, pad);  // fixes the truncation degree of the quotient
    Series denom_inv = (Series::from_monomials(ed, {1.0, 0.0, 1.0}) + padder)
                           .reciprocal(ErrorCode::ParseError);
    Curve3 n{(Series::from_monomials(ed, {0.0, 2.0}) + padder) * denom_inv,
             Series::constant(ed, 0.0),
             (Series::from_monomials(ed, {-1.0, 0.0, 1.0}) + padder) * denom_inv};
    return {"enneper", {std::move(a), std::move(n), MetricTag::Euclidean},
            -0.3, 0.3, -0.3, 0.3};
  }
  if (p->name == "lorentz-plane" || p->name == "lorentz-boosted") {
    double theta = 0.0;
    if (p->name == "lorentz-boosted") {
      theta = p->args.empty() ? 0.5 : p->args[0];
      // The boosted surface is spacelike only for |v| up to about
      // ln(coth(theta/2)); a wide disc would cross the degeneracy.
      dom = DiscDomain(std::numbers::pi, 1.2, 0.8);
      u_min = dom.center - dom.interval_half_width;
      u_max = dom.center + dom.interval_half_width;
    }
    Curve3 a = builtin_curve("circle(1)", degree, dom);
    double sh = std::sinh(theta), ch = std::cosh(theta);
    Curve3 n{cosine_series(dom, degree) * cplx(sh, 0.0),
             sine_series(dom, degree) * cplx(sh, 0.0), Series::constant(dom, ch)};
    return {p->name == "lorentz-plane" ? "lorentz-plane" : "lorentz-boosted",
            {std::move(a), std::move(n), MetricTag::Lorentz},
            u_min, u_max, -0.5, 0.5};
  }
  fail(ErrorCode::ParseError, "unknown builtin surface '" + p->name + "'");
}

std::vector<std::string> builtin_surface_names() {
  return {"catenoid", "helicoid", "enneper", "lorentz-plane", "lorentz-boosted"};
}

}  // namespace bjorling
