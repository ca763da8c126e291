#include "bjorling/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bjorling {

namespace {

constexpr double kMarginSafety = 0.95;

double sq(double x) { return x * x; }

double margin_at(const Curve3& fprime, MetricTag metric, cplx w) {
  CVec3 phi = fprime.eval(w);
  double m = std::norm(phi.x) + std::norm(phi.y);
  double third = std::norm(phi.z);
  return metric == MetricTag::Lorentz ? m - third : m + third;
}

}  // namespace

std::vector<Violation> validate(const BjorlingData& data, double tol, int samples) {
  std::vector<Violation> out;
  auto worst = [&](const char* what, auto fn) {
    double mag = 0.0, at = 0.0;
    for (double u : data.domain().interval_samples(samples)) {
      double v = fn(u);
      if (v > mag) { mag = v; at = u; }
    }
    if (mag > tol) out.push_back({what, at, mag});
  };

  Curve3 ap = data.a.derivative();
  if (!data.a.is_real_on_interval(tol, samples))
    out.push_back({"curve a is not real on I", 0.0, 0.0});
  if (!data.n.is_real_on_interval(tol, samples))
    out.push_back({"normal n is not real on I", 0.0, 0.0});

  worst("<n, a'> does not vanish on I", [&](double u) {
    return std::abs(inner(data.metric, data.n.eval(u), ap.eval(u)).real());
  });
  double unit_target = data.metric == MetricTag::Lorentz ? -1.0 : 1.0;
  worst("n is not a unit normal field on I", [&](double u) {
    CVec3 nv = data.n.eval(u);
    return std::abs(inner(data.metric, nv, nv).real() - unit_target);
  });

  // a'(t) = 0 only at isolated points in the paper; rejected here outright
  // because margins and normalizations divide by the tangent magnitude.
  double min_tangent = std::numeric_limits<double>::infinity();
  for (double u : data.domain().interval_samples(samples)) {
    CVec3 t = ap.eval(u);
    double q = data.metric == MetricTag::Lorentz
                   ? inner(MetricTag::Lorentz, t, t).real()
                   : inner(MetricTag::Euclidean, t, t).real();
    min_tangent = std::min(min_tangent, q);
  }
  if (min_tangent < 1e-10)
    out.push_back({data.metric == MetricTag::Lorentz
                       ? "tangent fails the spacelike margin on I"
                       : "tangent magnitude vanishes on I",
                   0.0, min_tangent});
  return out;
}

double isotropy_residual(const Curve3& f, MetricTag metric, int samples) {
  Series iso = inner(metric, f.derivative(), f.derivative());
  const DiscDomain& dom = f.domain();
  double worst = 0.0;
  for (double u : dom.interval_samples(samples))
    worst = std::max(worst, std::abs(iso.eval(cplx(u, 0.0))));
  // Analyticity makes the I-check sufficient mathematically; the disc grid
  // guards truncation error.
  int side = 16;
  for (int i = 1; i <= side; ++i) {
    double rho = dom.radius * std::sqrt(static_cast<double>(i) / side);
    for (int j = 0; j < 2 * side; ++j) {
      double th = std::numbers::pi * j / side;
      cplx w = dom.center + cplx(rho * std::cos(th), rho * std::sin(th));
      worst = std::max(worst, std::abs(iso.eval(w)));
    }
  }
  return worst;
}

IsotropicCurve solve(const BjorlingData& data, double isotropy_tol,
                     double truncation_tol) {
  std::vector<Violation> bad = validate(data);
  if (!bad.empty()) {
    std::string msg = "Bjorling data invalid:";
    for (const Violation& v : bad)
      msg += " [" + v.what + " at u=" + std::to_string(v.at_u) +
             " mag=" + std::to_string(v.magnitude) + "]";
    fail(ErrorCode::ValidationFailed, msg);
  }
  Curve3 integrand = cross(data.metric, data.n, data.a.derivative());
  Curve3 d = integrand.antiderivative();
  cplx unit = data.metric == MetricTag::Lorentz ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
  Curve3 f = data.a + d * unit;

  double scale = std::max(1.0, f.sup_norm().value);
  if (f.tail_estimate() > truncation_tol * scale)
    fail(ErrorCode::TruncationInsufficient,
         "series tail " + std::to_string(f.tail_estimate()) +
             " exceeds tolerance; raise the degree or shrink the disc");

  IsotropicCurve out{std::move(f), data.metric, 0.0};
  out.isotropy_residual = isotropy_residual(out.f, data.metric);
  if (out.isotropy_residual > isotropy_tol * scale)
    fail(ErrorCode::IsotropyCertificateFailed,
         "isotropy residual " + std::to_string(out.isotropy_residual));
  return out;
}

SurfacePatch sample_patch(const IsotropicCurve& f, double u_min, double u_max,
                          double v_min, double v_max, int nu, int nv,
                          double degenerate_tol) {
  if (nu < 2 || nv < 2)
    fail(ErrorCode::ValidationFailed, "patch grid must be at least 2x2");
  const DiscDomain& dom = f.domain();
  auto check_inside = [&](double u, double v) {
    if (std::hypot(u - dom.center, v) > dom.radius)
      fail(ErrorCode::OutOfDomain, "patch grid leaves the disc at (" +
                                       std::to_string(u) + ", " + std::to_string(v) + ")");
  };
  check_inside(u_min, v_min);
  check_inside(u_min, v_max);
  check_inside(u_max, v_min);
  check_inside(u_max, v_max);

  Curve3 fp = f.f.derivative();
  Curve3 fpp = fp.derivative();
  MetricTag m = f.metric;

  SurfacePatch p;
  p.nu = nu;
  p.nv = nv;
  p.u.resize(nu);
  p.v.resize(nv);
  for (int i = 0; i < nu; ++i) p.u[i] = u_min + (u_max - u_min) * i / (nu - 1);
  for (int j = 0; j < nv; ++j) p.v[j] = v_min + (v_max - v_min) * j / (nv - 1);
  int total = nu * nv;
  p.positions.resize(total);
  p.E.resize(total);
  p.F.resize(total);
  p.G.resize(total);
  p.H.resize(total);
  p.margin.resize(total);

  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) {
      cplx w(p.u[i], p.v[j]);
      int idx = p.index(i, j);
      CVec3 fw = f.f.eval(w);
      CVec3 phi = fp.eval(w);
      CVec3 phi2 = fpp.eval(w);
      p.positions[idx] = fw.real();

      // Cauchy-Riemann: X_u = Re f', X_v = -Im f'.
      Vec3 Xu = phi.real();
      Vec3 Xv = -1.0 * phi.imag();
      double E = inner(m, Xu, Xu), F = inner(m, Xu, Xv), G = inner(m, Xv, Xv);
      p.E[idx] = E;
      p.F[idx] = F;
      p.G[idx] = G;

      double mar = std::norm(phi.x) + std::norm(phi.y) +
                   (m == MetricTag::Lorentz ? -std::norm(phi.z) : std::norm(phi.z));
      p.margin[idx] = mar;

      Vec3 raw = cross(m, Xu, Xv);
      double qn = inner(m, raw, raw);
      double denom = std::sqrt(std::abs(qn));
      if (denom <= degenerate_tol || mar <= degenerate_tol)
        fail(ErrorCode::DegenerateNormal,
             "surface normal degenerates at (" + std::to_string(p.u[i]) + ", " +
                 std::to_string(p.v[j]) + ")");
      Vec3 N = raw / denom;

      Vec3 Xuu = phi2.real();
      Vec3 Xuv = -1.0 * phi2.imag();
      Vec3 Xvv = -1.0 * Xuu;  // Re f harmonic
      double L = inner(m, Xuu, N), M = inner(m, Xuv, N), N2 = inner(m, Xvv, N);
      double sign = m == MetricTag::Lorentz ? -1.0 : 1.0;
      p.H[idx] = sign * (G * L - 2.0 * F * M + E * N2) / (2.0 * (E * G - F * F));
    }
  }
  return p;
}

std::vector<Vec3> normals_on_axis(const IsotropicCurve& f,
                                  const std::vector<double>& u, const Vec3& orient) {
  Curve3 fp = f.f.derivative();
  auto raw_normal = [&](double uu) {
    CVec3 phi = fp.eval(cplx(uu, 0.0));
    Vec3 Xu = phi.real();
    Vec3 Xv = -1.0 * phi.imag();
    Vec3 raw = cross(f.metric, Xu, Xv);
    double denom = std::sqrt(std::abs(inner(f.metric, raw, raw)));
    if (denom <= 1e-14)
      fail(ErrorCode::DegenerateNormal, "normal degenerates on the axis");
    return raw / denom;
  };
  // Orientation fixed at the center against the reference direction; the
  // sign then propagates globally by continuity.
  double flip = inner(MetricTag::Euclidean, raw_normal(f.domain().center), orient) >= 0.0
                    ? 1.0
                    : -1.0;
  std::vector<Vec3> out;
  out.reserve(u.size());
  for (double uu : u) out.push_back(flip * raw_normal(uu));
  return out;
}

double mean_curvature_fd(const IsotropicCurve& f, double u, double v, double h) {
  auto X = [&](double a, double b) { return f.f.eval(cplx(a, b)).real(); };
  Vec3 Xu = (X(u + h, v) - X(u - h, v)) / (2.0 * h);
  Vec3 Xv = (X(u, v + h) - X(u, v - h)) / (2.0 * h);
  Vec3 Xuu = (X(u + h, v) - 2.0 * X(u, v) + X(u - h, v)) / (h * h);
  Vec3 Xvv = (X(u, v + h) - 2.0 * X(u, v) + X(u, v - h)) / (h * h);
  Vec3 Xuv = (X(u + h, v + h) - X(u + h, v - h) - X(u - h, v + h) + X(u - h, v - h)) /
             (4.0 * h * h);
  MetricTag m = f.metric;
  double E = inner(m, Xu, Xu), F = inner(m, Xu, Xv), G = inner(m, Xv, Xv);
  Vec3 raw = cross(m, Xu, Xv);
  double denom = std::sqrt(std::abs(inner(m, raw, raw)));
  if (denom <= 1e-14)
    fail(ErrorCode::DegenerateNormal, "FD normal degenerates");
  Vec3 N = raw / denom;
  double L = inner(m, Xuu, N), M = inner(m, Xuv, N), N2 = inner(m, Xvv, N);
  double sign = m == MetricTag::Lorentz ? -1.0 : 1.0;
  return sign * (G * L - 2.0 * F * M + E * N2) / (2.0 * (E * G - F * F));
}

double harmonicity_defect(const IsotropicCurve& f, const SurfacePatch& patch) {
  double hu = patch.u.size() > 1 ? patch.u[1] - patch.u[0] : 0.0;
  double hv = patch.v.size() > 1 ? patch.v[1] - patch.v[0] : 0.0;
  // The unnormalized 5-point sum is O(h^4); cap the stencil step so coarse
  // display grids do not dilute the certificate.
  double h = std::min({std::abs(hu), std::abs(hv), 0.02});
  if (h <= 0.0) return 0.0;
  const DiscDomain& dom = f.domain();
  double worst = 0.0;
  for (double v : patch.v) {
    for (double u : patch.u) {
      if (std::hypot(u - dom.center, v) + h >= dom.radius) continue;
      Vec3 sum = f.f.eval(cplx(u + h, v)).real() + f.f.eval(cplx(u - h, v)).real() +
                 f.f.eval(cplx(u, v + h)).real() + f.f.eval(cplx(u, v - h)).real() -
                 4.0 * f.f.eval(cplx(u, v)).real();
      worst = std::max({worst, std::abs(sum.x), std::abs(sum.y), std::abs(sum.z)});
    }
  }
  return worst;
}

double immersion_margin(const IsotropicCurve& f, int boundary_samples, int grid_side) {
  Curve3 fp = f.f.derivative();
  const DiscDomain& dom = f.domain();
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j < boundary_samples; ++j) {
    double th = 2.0 * std::numbers::pi * j / boundary_samples;
    cplx w = dom.center + dom.radius * cplx(std::cos(th), std::sin(th));
    worst = std::min(worst, margin_at(fp, f.metric, w));
  }
  for (int i = 1; i <= grid_side; ++i) {
    double rho = dom.radius * std::sqrt(static_cast<double>(i) / (grid_side + 1));
    for (int j = 0; j < grid_side; ++j) {
      double th = 2.0 * std::numbers::pi * j / grid_side;
      cplx w = dom.center + rho * cplx(std::cos(th), std::sin(th));
      worst = std::min(worst, margin_at(fp, f.metric, w));
    }
  }
  return worst > 0.0 ? worst * kMarginSafety : worst / kMarginSafety;
}

EtaBudget eta_budget_from(double S, double zeta) {
  if (!(zeta > 0.0))
    fail(ErrorCode::NotImmersed, "eta budget needs a positive immersion margin");
  double third = zeta / 3.0;
  // 2 S eta + eta^2 < zeta/3: positive root of eta^2 + 2 S eta - zeta/3.
  double etaA = -S + std::sqrt(S * S + third);
  // 0 < 2 S eta - eta^2 < zeta/3: lower branch of eta^2 - 2 S eta + zeta/3 > 0
  // when real roots exist, else only eta < 2S binds.
  double etaB = S * S > third ? S - std::sqrt(S * S - third) : 2.0 * S;
  double eta = 0.9 * std::min(etaA, etaB);
  EtaBudget b{zeta, S, eta};
  bool ok = 2.0 * S * eta + sq(eta) < third && 2.0 * S * eta - sq(eta) > 0.0 &&
            2.0 * S * eta - sq(eta) < third;
  if (!ok)
    fail(ErrorCode::NotImmersed, "eta budget inequalities failed post hoc");
  return b;
}

EtaBudget eta_budget(const IsotropicCurve& f0) {
  double zeta = immersion_margin(f0);
  if (!(zeta > 0.0))
    fail(ErrorCode::NotImmersed,
         "immersion margin " + std::to_string(zeta) + " is not positive");
  Curve3 fp = f0.f.derivative();
  double S = 0.0;
  for (const Series& s : fp.comp) S = std::max(S, s.sup_norm().value);
  return eta_budget_from(S, zeta);
}

}  // namespace bjorling
