#include "bjorling/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bjorling {

namespace {

double metric_sign(MetricTag m) {  // +1: a + id, -1: a - id
  return m == MetricTag::Lorentz ? 1.0 : -1.0;
}

cplx metric_unit(MetricTag m) { return cplx(0.0, metric_sign(m)); }

int cyc_i(int k) { return (k + 1) % 3; }
int cyc_j(int k) { return (k + 2) % 3; }

struct FramePair {
  Series c1, c2;
  double refit_residual;
};

// Pointwise decomposition g(w) = c1(w) a'(w) + c2(w) D(w) on circle samples,
// dropping the coordinate with the largest |Delta_k| (or the forced third),
// then refit to series. The J_n constraint identity makes the answer
// independent of the dropped coordinate wherever several are admissible.
FramePair frame_solve(const Curve3& ap, const Curve3& D, const Curve3& delta,
                      const Curve3& g, PivotStrategy strategy, int degree,
                      double sup_delta, const LinearizedTols& tols) {
  const DiscDomain& dom = ap.domain();
  double scale1 = 0.0, scale2 = 0.0;
  auto solve_at = [&](cplx w) -> std::pair<cplx, cplx> {
    CVec3 A = ap.eval(w), B = D.eval(w), Dl = delta.eval(w), G = g.eval(w);
    cplx dk[3] = {Dl.x, Dl.y, Dl.z};
    cplx av[3] = {A.x, A.y, A.z};
    cplx bv[3] = {B.x, B.y, B.z};
    cplx gv[3] = {G.x, G.y, G.z};
    double mags[3] = {std::abs(dk[0]), std::abs(dk[1]), std::abs(dk[2])};
    double maxmag = std::max({mags[0], mags[1], mags[2]});
    if (maxmag < tols.degenerate * std::max(1.0, sup_delta))
      fail(ErrorCode::DegeneratePlane,
           "all |Delta_i| vanish near w = (" + std::to_string(w.real()) + ", " +
               std::to_string(w.imag()) + ")");
    int k;
    if (strategy == PivotStrategy::ForceThird) {
      k = 2;
      if (mags[2] < tols.degenerate * std::max(1.0, sup_delta))
        fail(ErrorCode::DegeneratePlane, "forced Delta_3 pivot is inadmissible");
    } else {
      k = mags[0] >= mags[1] && mags[0] >= mags[2] ? 0 : (mags[1] >= mags[2] ? 1 : 2);
    }
    int i = cyc_i(k), j = cyc_j(k);
    cplx det = av[i] * bv[j] - av[j] * bv[i];  // = -Delta_k
    cplx c1 = (gv[i] * bv[j] - gv[j] * bv[i]) / det;
    cplx c2 = (av[i] * gv[j] - av[j] * gv[i]) / det;
    scale1 = std::max(scale1, std::abs(c1));
    scale2 = std::max(scale2, std::abs(c2));
    return {c1, c2};
  };
  CircleFit f1 = fit_on_circle(dom, degree, [&](cplx w) { return solve_at(w).first; });
  CircleFit f2 = fit_on_circle(dom, degree, [&](cplx w) { return solve_at(w).second; });
  double resid = std::max(f1.residual, f2.residual);
  if (resid > tols.refit * std::max({1.0, scale1, scale2}))
    fail(ErrorCode::RefitResidualTooLarge,
         "pointwise-to-series refit residual " + std::to_string(resid));
  return {std::move(f1.series), std::move(f2.series), resid};
}

}  // namespace

double sup_samples(const Curve3& g, int boundary_samples, int interval_samples) {
  const DiscDomain& dom = g.domain();
  double worst = 0.0;
  for (int j = 0; j < boundary_samples; ++j) {
    double th = 2.0 * std::numbers::pi * j / boundary_samples;
    CVec3 v = g.eval(dom.center + dom.radius * cplx(std::cos(th), std::sin(th)));
    worst = std::max({worst, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  }
  for (double u : dom.interval_samples(interval_samples)) {
    CVec3 v = g.eval(cplx(u, 0.0));
    worst = std::max({worst, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  }
  return worst;
}

void validate_problem(const InterpolationProblem& p, double tol) {
  if (!(p.a.domain() == p.l.domain()))
    fail(ErrorCode::DomainMismatch, "curve pair lives on different discs");
  if (!p.a.is_real_on_interval(tol))
    fail(ErrorCode::ValidationFailed, "curve a is not real on I");
  if (!p.l.is_real_on_interval(tol))
    fail(ErrorCode::ValidationFailed, "curve l is not real on I");
  if (p.metric == MetricTag::Lorentz) {
    double ma = spacelike_margin(p.a), ml = spacelike_margin(p.l);
    if (ma <= 1e-10)
      fail(ErrorCode::ValidationFailed,
           "curve a is not in S_p (margin " + std::to_string(ma) + ")");
    if (ml <= 1e-10)
      fail(ErrorCode::ValidationFailed,
           "curve l is not in S_p (margin " + std::to_string(ml) + ")");
  }
}

Curve3 pair_normal(const InterpolationProblem& p, double tangent_tol) {
  Curve3 ap = p.a.derivative(), lp = p.l.derivative();
  Curve3 x = cross(p.metric, ap, lp);
  Series q = inner(p.metric, x, x);
  const int kSamples = 512;

  double min_euclid = std::numeric_limits<double>::infinity();
  double max_q = -std::numeric_limits<double>::infinity();
  double min_absq = std::numeric_limits<double>::infinity();
  for (double u : p.domain().interval_samples(kSamples)) {
    CVec3 xu = x.eval(cplx(u, 0.0));
    double e2 = std::norm(xu.x) + std::norm(xu.y) + std::norm(xu.z);
    min_euclid = std::min(min_euclid, e2);
    double qu = q.eval(cplx(u, 0.0)).real();
    max_q = std::max(max_q, qu);
    min_absq = std::min(min_absq, std::abs(qu));
  }
  if (min_euclid < tangent_tol * tangent_tol)
    fail(ErrorCode::ParallelTangents,
         "a' x l' vanishes on I (min |x|^2 = " + std::to_string(min_euclid) + ")");

  Series magnitude;
  double unit_target;
  if (p.metric == MetricTag::Lorentz) {
    if (max_q > -tangent_tol * tangent_tol)
      fail(ErrorCode::NotTimelike,
           "a' x_L l' is not timelike on I (max <x,x>_L = " + std::to_string(max_q) + ")");
    magnitude = (-q).sqrt_branch(ErrorCode::NotTimelike);
    unit_target = -1.0;
  } else {
    if (min_absq < tangent_tol * tangent_tol)
      fail(ErrorCode::ParallelTangents, "a' x l' degenerates on I");
    magnitude = q.sqrt_branch(ErrorCode::ParallelTangents);
    unit_target = 1.0;
  }
  Curve3 n = x * magnitude.reciprocal(ErrorCode::ParallelTangents);

  Series unit_res = inner(p.metric, n, n) - Series::constant(p.domain(), unit_target);
  double worst = 0.0;
  for (double u : p.domain().interval_samples(kSamples))
    worst = std::max(worst, std::abs(unit_res.eval(cplx(u, 0.0))));
  if (worst > 1e-7)
    fail(ErrorCode::RefitResidualTooLarge,
         "pair normal normalization residual " + std::to_string(worst) +
             "; series sqrt/division diverged on this disc");
  return n;
}

IsotropicExtension isotropic_extension(const InterpolationProblem& p,
                                       double isotropy_tol, double tangent_tol) {
  validate_problem(p);
  Curve3 n_l = pair_normal(p, tangent_tol);
  Curve3 d_l = cross(p.metric, n_l, p.l.derivative()).antiderivative();
  Curve3 Cc = p.l + d_l * metric_unit(p.metric);

  double scale = std::max(1.0, Cc.sup_norm().value);
  IsotropicCurve C{std::move(Cc), p.metric, 0.0};
  C.isotropy_residual = isotropy_residual(C.f, p.metric);
  if (C.isotropy_residual > isotropy_tol * scale)
    fail(ErrorCode::IsotropyCertificateFailed,
         "extension isotropy residual " + std::to_string(C.isotropy_residual));
  if (!d_l.is_real_on_interval(1e-8))
    fail(ErrorCode::IsotropyCertificateFailed, "d^l is not real on I");
  return {std::move(n_l), std::move(d_l), std::move(C)};
}

BaseSurface make_base_surface(const Curve3& a, const Curve3& n0, MetricTag metric) {
  BjorlingData data{a, n0, metric};
  IsotropicCurve f0 = solve(data);
  Curve3 d0 = cross(metric, n0, a.derivative()).antiderivative();
  return {n0, std::move(d0), std::move(f0)};
}

ClosenessReport closeness_report(const InterpolationProblem& p,
                                 const IsotropicExtension& ext,
                                 const BaseSurface& base, const EtaBudget& budget) {
  ClosenessReport r;
  r.norm_l_a = (p.l - p.a).sup_norm().value;
  r.norm_l_a_prime = (p.l.derivative() - p.a.derivative()).sup_norm().value;
  r.norm_d_d0 = (ext.d_l - base.d0).sup_norm().value;
  r.norm_d_d0_prime = (ext.d_l.derivative() - base.d0.derivative()).sup_norm().value;
  r.eta = budget.eta;
  r.eta1 = r.eta2 = 0.45 * budget.eta;  // eta1 + eta2 < eta
  r.pass = r.norm_l_a < r.eta1 && r.norm_l_a_prime < r.eta1 &&
           r.norm_d_d0 < r.eta2 && r.norm_d_d0_prime < r.eta2;
  r.epsilon_certified = false;
  return r;
}

ContainmentReport containment_check(const IsotropicCurve& C, const Curve3& a,
                                    int samples, double tol) {
  const DiscDomain& dom = C.domain();
  Curve3 cp = C.f.derivative();
  ContainmentReport rep;
  auto dist2 = [&](cplx w, const Vec3& p) {
    Vec3 r = C.f.eval(w).real() - p;
    return r.x * r.x + r.y * r.y + r.z * r.z;
  };
  for (double u : a.domain().interval_samples(samples)) {
    Vec3 target = a.eval(cplx(u, 0.0)).real();
    cplx w(u, 0.0);
    double f2 = dist2(w, target);
    for (int it = 0; it < 50; ++it) {
      Vec3 r = C.f.eval(w).real() - target;
      CVec3 phi = cp.eval(w);
      Vec3 ju = phi.real();
      Vec3 jv = -1.0 * phi.imag();
      // normal equations of the 3x2 Gauss-Newton system
      double m11 = inner(MetricTag::Euclidean, ju, ju);
      double m12 = inner(MetricTag::Euclidean, ju, jv);
      double m22 = inner(MetricTag::Euclidean, jv, jv);
      double g1 = inner(MetricTag::Euclidean, ju, r);
      double g2 = inner(MetricTag::Euclidean, jv, r);
      double det = m11 * m22 - m12 * m12;
      if (!(det > 1e-300) || !std::isfinite(det)) break;
      double du = -(m22 * g1 - m12 * g2) / det;
      double dv = -(-m12 * g1 + m11 * g2) / det;
      double step = 1.0;
      cplx cand;
      double cand2 = f2;
      bool moved = false;
      for (int bt = 0; bt < 45; ++bt) {
        cand = w + step * cplx(du, dv);
        if (std::abs(cand - dom.center) <= dom.radius * (1.0 - 1e-12)) {
          cand2 = dist2(cand, target);
          if (cand2 < f2) { moved = true; break; }
        }
        step *= 0.5;
      }
      if (!moved) break;
      w = cand;
      f2 = cand2;
      if (f2 < 1e-30) break;
    }
    rep.gamma_samples.push_back(w);
    rep.residuals.push_back(std::sqrt(f2));
    rep.max_residual = std::max(rep.max_residual, std::sqrt(f2));
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

LinearizedProblem make_linearized_problem(const Curve3& a, const Curve3& d0,
                                          MetricTag metric, const Curve3& s) {
  LinearizedProblem lp;
  lp.a = a;
  lp.d0 = d0;
  lp.metric = metric;
  lp.s = s;
  lp.delta = cross(MetricTag::Euclidean, d0.derivative(), a.derivative());
  return lp;
}

LinearizedSolution linearized_solve(const LinearizedProblem& lp,
                                    PivotStrategy strategy, const LinearizedTols& tols) {
  const DiscDomain& dom = lp.a.domain();
  double sigma = metric_sign(lp.metric);
  cplx unit = metric_unit(lp.metric);

  Curve3 ap = lp.a.derivative();
  Curve3 D = lp.d0.derivative() * cplx(sigma, 0.0);
  Curve3 delta = cross(MetricTag::Euclidean, D, ap);  // = sigma * lp.delta
  Curve3 A = ap + D * cplx(0.0, 1.0);

  Curve3 tau = lp.s.derivative();
  Curve3 rho = tau.real_part_on_interval();

  // Membership in J_n: Re s'(u) perpendicular to Delta on I.
  double sup_delta = delta.sup_norm().value;
  double sup_tau = std::max(1.0, tau.sup_norm().value);
  Series constraint = inner(MetricTag::Euclidean, delta, rho);
  double worst_jn = 0.0;
  double worst_pivot = std::numeric_limits<double>::infinity();
  for (double u : dom.interval_samples(512)) {
    worst_jn = std::max(worst_jn, std::abs(constraint.eval(cplx(u, 0.0))));
    CVec3 dl = delta.eval(cplx(u, 0.0));
    worst_pivot = std::min(
        worst_pivot, std::max({std::abs(dl.x), std::abs(dl.y), std::abs(dl.z)}));
  }
  if (worst_pivot < tols.degenerate * std::max(1.0, sup_delta))
    fail(ErrorCode::DegeneratePlane,
         "Delta vanishes on I; the plane of a' and d0' degenerates");
  if (worst_jn > tols.jn * std::max(1.0, sup_delta) * sup_tau)
    fail(ErrorCode::NotInJn,
         "Re s' is not perpendicular to Delta on I (residual " +
             std::to_string(worst_jn) + ")");

  int degree = std::max({lp.s.comp[0].degree(), lp.a.comp[0].degree(),
                         lp.d0.comp[0].degree()});

  // Stage one: tau = (a' + i D) V~ + i d~~ with d~~ real on I. On I this is
  // the 2x2 real system a'_m V~1 - D_m V~2 = Re tau_m; both sides extend
  // analytically (Re tau via Schwarz reflection), so the pointwise solve runs
  // on circle samples where the refit is exactly the least-squares system.
  FramePair stage1 = frame_solve(ap, D, delta, rho, strategy, degree, sup_delta, tols);
  Series Vt1 = std::move(stage1.c1);
  Series Vt2 = -stage1.c2;
  Series V_tilde = Vt1 + Vt2 * cplx(0.0, 1.0);

  // Plane decomposition of the second derivatives for Eq. (defnm):
  // a'' = p1 a' + p2 D, D' = q1 a' + q2 D. m = m1 + i m2 then depends
  // linearly on V, so V' = V~ - m(V) is a linear ODE integrated exactly on
  // coefficients.
  FramePair pf = frame_solve(ap, D, delta, ap.derivative(), strategy, degree,
                             sup_delta, tols);
  FramePair qf = frame_solve(ap, D, delta, D.derivative(), strategy, degree,
                             sup_delta, tols);
  Series Vt1_axis = V_tilde.real_part_on_interval();
  Series Vt2_axis = V_tilde.imag_part_on_interval();

  int n = degree;
  const double R = dom.radius;
  auto coef_of = [&](const Series& s, int k) -> cplx {
    const auto& c = s.scaled_coefficients();
    return k < static_cast<int>(c.size()) ? c[k] : cplx(0.0, 0.0);
  };
  std::vector<cplx> v1(n + 1, cplx(0.0, 0.0)), v2(n + 1, cplx(0.0, 0.0));
  for (int k = 0; k < n; ++k) {
    cplx rhs1 = coef_of(Vt1_axis, k);
    cplx rhs2 = coef_of(Vt2_axis, k);
    for (int j = 0; j <= k; ++j) {
      rhs1 -= coef_of(pf.c1, j) * v1[k - j];
      rhs1 += coef_of(qf.c1, j) * v2[k - j];
      rhs2 += coef_of(pf.c2, j) * v1[k - j];
      rhs2 -= coef_of(qf.c2, j) * v2[k - j];
    }
    v1[k + 1] = rhs1 * (R / (k + 1));
    v2[k + 1] = rhs2 * (R / (k + 1));
  }
  Series V1(dom, std::move(v1)), V2(dom, std::move(v2));
  Series V = V1 + V2 * cplx(0.0, 1.0);
  Series m = V_tilde - V.derivative();

  Curve3 F = A.derivative() * V - A * m;
  double worst_ref = 0.0;
  double scale_f = std::max(1.0, F.sup_norm().value);
  for (double u : dom.interval_samples(512)) {
    CVec3 fv = F.eval(cplx(u, 0.0));
    worst_ref = std::max({worst_ref, std::abs(fv.x.real()), std::abs(fv.y.real()),
                          std::abs(fv.z.real())});
  }
  if (worst_ref > tols.re_f * scale_f)
    fail(ErrorCode::ReFNotZero,
         "Re F = " + std::to_string(worst_ref) +
             " on I; (a'', d0'') leave the plane of (a', d0') so the "
             "inversion does not close for this base");

  Curve3 dtt = (tau - A * V_tilde) * (cplx(0.0, -1.0) * cplx(sigma, 0.0));
  if (!dtt.is_real_on_interval(1e-6))
    fail(ErrorCode::RefitResidualTooLarge,
         "stage-one d~~ failed the reality check on I");
  Curve3 d_tilde = (dtt + F * unit).antiderivative();

  Curve3 recon = A * V + d_tilde * unit - lp.s;
  LinearizedSolution sol{std::move(V), std::move(d_tilde), std::move(V_tilde),
                         std::move(m), std::move(F), sup_samples(recon)};
  return sol;
}

NewtonState chord_newton(const IsotropicCurve& C, const Curve3& a, const Curve3& d0,
                         int max_iter, double tol) {
  MetricTag metric = C.metric;
  cplx unit = metric_unit(metric);
  const DiscDomain& dom = a.domain();

  Series gamma = Series::identity(dom);
  Curve3 d = d0;
  NewtonState state;

  for (int it = 0; it <= max_iter; ++it) {
    Curve3 fk = a + d * unit;
    Curve3 composed;
    try {
      composed = compose_near_identity(fk, gamma);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ImageEscapesDomain)
        fail(ErrorCode::DomainEscape, "gamma image left the disc during iteration");
      throw;
    }
    Curve3 r = C.f - composed;
    double res = sup_samples(r);
    double prev = state.residual_history.empty()
                      ? std::numeric_limits<double>::infinity()
                      : state.residual_history.back();
    state.residual_history.push_back(res);
    if (res < tol) {
      state.gamma = std::move(gamma);
      state.d = std::move(d);
      if (!state.d.is_real_on_interval(1e-7))
        fail(ErrorCode::NoConvergence, "converged d is not real on I");
      if (std::abs(state.gamma.eval(dom.center) - dom.center) > 1e-10)
        fail(ErrorCode::NoConvergence, "converged gamma does not fix u0");
      return state;
    }
    if (res >= prev)
      fail(ErrorCode::NoConvergence,
           "residual stalled at " + std::to_string(res) + " after " +
               std::to_string(it) + " iterations");
    if (it == max_iter) break;
    LinearizedProblem lp = make_linearized_problem(a, d0, metric, r);
    LinearizedSolution sol = linearized_solve(lp);
    gamma = gamma + sol.V;
    d = d + sol.d_tilde;
  }
  fail(ErrorCode::NoConvergence,
       "chord Newton did not reach tol " + std::to_string(tol) + " in " +
           std::to_string(max_iter) + " iterations (last residual " +
           std::to_string(state.residual_history.back()) + ")");
}

}  // namespace bjorling
