#pragma once
#include <string>
#include <vector>

#include "bjorling/series.hpp"

namespace bjorling {

// Real-analytic curve a with unit normal field n along it, plus the metric
// the pair lives in. Lorentz data has a spacelike and n unit timelike; the
// Euclidean mirror has |n| = 1.
struct BjorlingData {
  Curve3 a;
  Curve3 n;
  MetricTag metric = MetricTag::Lorentz;

  const DiscDomain& domain() const { return a.domain(); }
};

struct Violation {
  std::string what;
  double at_u = 0.0;
  double magnitude = 0.0;
};

// Holomorphic f with <f',f'> = 0 under the bilinear ambient product; Re f is
// the surface.
struct IsotropicCurve {
  Curve3 f;
  MetricTag metric = MetricTag::Lorentz;
  double isotropy_residual = 0.0;

  const DiscDomain& domain() const { return f.domain(); }
};

struct SurfacePatch {
  int nu = 0, nv = 0;
  std::vector<double> u, v;          // grid lines
  std::vector<Vec3> positions;       // row-major, index = iv * nu + iu
  std::vector<double> E, F, G;       // first fundamental form (ambient metric)
  std::vector<double> H;             // mean curvature, series derivatives
  std::vector<double> margin;        // |Phi1|^2+|Phi2|^2-|Phi3|^2 (L) or sum (E)

  int index(int iu, int iv) const { return iv * nu + iu; }
};

struct EtaBudget {
  double zeta = 0.0;  // immersion margin
  double S = 0.0;     // max_i sup_Omega |Phi_0i|
  double eta = 0.0;
};

std::vector<Violation> validate(const BjorlingData& data, double tol = 1e-8,
                                int samples = 512);

// X(u,v) = Re{ a(w) + i int n x_L a' } (Lorentz), Re{ a(w) - i int n x_E a' }
// (Euclidean). Throws ValidationFailed / TruncationInsufficient.
IsotropicCurve solve(const BjorlingData& data, double isotropy_tol = 1e-10,
                     double truncation_tol = 1e-9);

// sup over I and an Omega grid of |<f'(w), f'(w)>|.
double isotropy_residual(const Curve3& f, MetricTag metric, int samples = 256);

SurfacePatch sample_patch(const IsotropicCurve& f, double u_min, double u_max,
                          double v_min, double v_max, int nu, int nv,
                          double degenerate_tol = 1e-12);

// Unit surface normal at (u, 0), oriented so that at the first sample the
// Euclidean dot with `orient` is positive.
std::vector<Vec3> normals_on_axis(const IsotropicCurve& f,
                                  const std::vector<double>& u,
                                  const Vec3& orient);

// Mean curvature from positions only (central differences with step h),
// independent of the series derivatives.
double mean_curvature_fd(const IsotropicCurve& f, double u, double v, double h = 1e-3);

// Unnormalized 5-point Laplacian sum of each position component; harmonic
// real parts make it O(h^4).
double harmonicity_defect(const IsotropicCurve& f, const SurfacePatch& patch);

// zeta = min over boundary + interior grid samples of the margin field, with
// the 0.95 safety shrink.
double immersion_margin(const IsotropicCurve& f, int boundary_samples = 256,
                        int grid_side = 64);

// Largest eta (times 0.9) with 2 S eta + eta^2 < zeta/3 and
// 0 < 2 S eta - eta^2 < zeta/3, where S = max_i sup |Phi_0i|.
EtaBudget eta_budget(const IsotropicCurve& f0);
EtaBudget eta_budget_from(double S, double zeta);

}  // namespace bjorling
