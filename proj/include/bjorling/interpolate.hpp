#pragma once
#include <vector>

#include "bjorling/surface.hpp"

namespace bjorling {

// The pair (a, l) to be interpolated by one surface. Lorentz problems need
// both curves in the spacelike class S_p.
struct InterpolationProblem {
  Curve3 a;
  Curve3 l;
  MetricTag metric = MetricTag::Lorentz;

  const DiscDomain& domain() const { return a.domain(); }
};

void validate_problem(const InterpolationProblem& p, double tol = 1e-8);

// Pair normal n_l = (a' x l') / |a' x l'| in the ambient metric; Lorentz
// normalization uses sqrt(|<x,x>_L|) so that <n_l, n_l>_L = -1.
Curve3 pair_normal(const InterpolationProblem& p, double tangent_tol = 1e-10);

// C = l + i d^l (Lorentz) or l - i d^l (Euclidean) with d^l' = n_l x l',
// d^l(u0) = 0; the isotropic extension of l.
struct IsotropicExtension {
  Curve3 n_l;
  Curve3 d_l;
  IsotropicCurve C;
};

IsotropicExtension isotropic_extension(const InterpolationProblem& p,
                                       double isotropy_tol = 1e-9,
                                       double tangent_tol = 1e-10);

// Base surface a + i d0 over a chosen admissible normal n0 (d0' = n0 x a').
struct BaseSurface {
  Curve3 n0;
  Curve3 d0;
  IsotropicCurve f0;
};

BaseSurface make_base_surface(const Curve3& a, const Curve3& n0, MetricTag metric);

struct ClosenessReport {
  double norm_l_a = 0.0;
  double norm_l_a_prime = 0.0;
  double norm_d_d0 = 0.0;
  double norm_d_d0_prime = 0.0;
  double eta = 0.0;   // from the base surface budget
  double eta1 = 0.0;  // = eta2 = 0.45 * eta
  double eta2 = 0.0;
  bool pass = false;
  // The inverse-function-theorem radius is non-constructive; the epsilon
  // condition eta1^2 + eta2^2 < epsilon can never be certified here.
  bool epsilon_certified = false;
};

ClosenessReport closeness_report(const InterpolationProblem& p,
                                 const IsotropicExtension& ext,
                                 const BaseSurface& base, const EtaBudget& budget);

struct ContainmentReport {
  double max_residual = 0.0;
  std::vector<cplx> gamma_samples;     // empirical gamma-hat path
  std::vector<double> residuals;       // per sample
  bool pass = false;                   // max_residual < tol
};

// For each sample u_i of I, Gauss-Newton projection of a(u_i) onto the
// surface Re C, started at w = u_i. Damped steps stay inside the disc.
ContainmentReport containment_check(const IsotropicCurve& C, const Curve3& a,
                                    int samples = 64, double tol = 1e-4);

// Linearized operator data at the frozen base point (gamma_0, d0):
// s = (a' + i d0') V + i d_tilde (Lorentz; Euclidean mirror flips both i).
struct LinearizedProblem {
  Curve3 a;
  Curve3 d0;
  MetricTag metric = MetricTag::Lorentz;
  Curve3 s;
  Curve3 delta;  // d0' x_E a', the normal to the plane of a' and d0'
};

LinearizedProblem make_linearized_problem(const Curve3& a, const Curve3& d0,
                                          MetricTag metric, const Curve3& s);

// The coordinate pair used in the pointwise 2x2 solves: complementary to the
// largest |Delta_i| per sample, or forced to the paper's "w.l.g." third.
enum class PivotStrategy { MaxAbs, ForceThird };

struct LinearizedSolution {
  Series V;        // V(u0) = 0
  Curve3 d_tilde;  // real on I, d_tilde(u0) = 0
  Series V_tilde;  // stage-one intermediate
  Series m;        // m1 + i m2 from the plane decomposition
  Curve3 F;        // (a'' + i d0'') V - (a' + i d0') m; Re F = 0 on I
  double residual = 0.0;
};

struct LinearizedTols {
  double jn = 1e-8;          // membership |Delta . Re s'| on I
  double degenerate = 1e-9;  // pivot floor relative to sup|Delta|
  double refit = 1e-8;       // pointwise-to-series refit residual
  double re_f = 1e-7;        // step-six |Re F| on I
};

LinearizedSolution linearized_solve(const LinearizedProblem& lp,
                                    PivotStrategy strategy = PivotStrategy::MaxAbs,
                                    const LinearizedTols& tols = {});

struct NewtonState {
  Series gamma;  // id + sum of updates, gamma(u0) = u0
  Curve3 d;      // real on I
  std::vector<double> residual_history;
};

// Chord (frozen-derivative) Newton iteration for (a + i d) o gamma = C, with
// the derivative inverted once at (id, d0) via linearized_solve.
NewtonState chord_newton(const IsotropicCurve& C, const Curve3& a, const Curve3& d0,
                         int max_iter = 20, double tol = 1e-9);

// Plain max of component moduli over boundary and interval samples (the
// Notation-1 sup norm without the safety factor; used for residuals).
double sup_samples(const Curve3& g, int boundary_samples = 256,
                   int interval_samples = 128);

}  // namespace bjorling
