#pragma once
#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "bjorling/errors.hpp"
#include "bjorling/metric.hpp"

namespace bjorling {

// Disc Omega of radius R about a real center u0, carrying the real interval
// I = [u0 - r, u0 + r] with 0 < r < R.
struct DiscDomain {
  double center = 0.0;
  double radius = 1.0;             // R
  double interval_half_width = 0.5;  // r

  DiscDomain() = default;
  DiscDomain(double u0, double R, double r);

  bool operator==(const DiscDomain& o) const {
    return center == o.center && radius == o.radius &&
           interval_half_width == o.interval_half_width;
  }

  // n equispaced samples of I including both endpoints.
  std::vector<double> interval_samples(int n) const;
};

struct SupNorm {
  double value = 0.0;
  int sample_count = 0;
};

// One component of C^omega(Omega, C): a truncated power series about u0.
// Coefficients are stored in the scaled variable zeta = (w - u0)/R, so
// f(w) = sum_k coef[k] * zeta^k and |zeta| <= 1 on the closed disc. The
// scaling keeps evaluation, refits and tail estimates conditioned uniformly
// in R.
class Series {
public:
  Series() = default;
  Series(DiscDomain dom, std::vector<cplx> scaled_coef);

  // Builders.
  static Series constant(const DiscDomain& dom, cplx value, int degree = 0);
  static Series identity(const DiscDomain& dom);  // f(w) = w
  // From plain Taylor coefficients about u0 (unscaled, c_k = f^(k)(u0)/k!).
  static Series from_taylor(const DiscDomain& dom, const std::vector<cplx>& taylor);
  // From coefficients of the monomials w^0..w^n (about 0), rebased to u0.
  static Series from_monomials(const DiscDomain& dom, const std::vector<cplx>& mono);

  const DiscDomain& domain() const { return dom_; }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<cplx>& scaled_coefficients() const { return coef_; }
  std::vector<cplx> taylor_coefficients() const;  // unscaled, about u0

  // Evaluation at w with |w - u0| <= R is the analytic continuation.
  cplx eval(cplx w) const;
  cplx operator()(cplx w) const { return eval(w); }

  Series derivative() const;
  Series antiderivative() const;  // vanishes at u0 exactly

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;  // truncated Cauchy product
  Series operator*(cplx s) const;
  Series operator-() const { return (*this) * cplx(-1.0, 0.0); }

  // Series with conjugated coefficients: agrees with conj(f(conj(w))) and in
  // particular with conj(f(u)) for real u (Schwarz reflection).
  Series reflected() const;
  // Analytic extensions of Re f|_I and Im f|_I.
  Series real_part_on_interval() const;
  Series imag_part_on_interval() const;

  // Leading-coefficient recurrences; require the constant term to dominate
  // numerically (no zero of f, resp. of the branch, at u0).
  Series reciprocal(ErrorCode on_failure = ErrorCode::DegeneratePlane) const;
  Series sqrt_branch(ErrorCode on_failure = ErrorCode::NotTimelike) const;

  // Maximum modulus: sup over the closed disc is attained on the boundary;
  // max of M boundary samples times the 1.05 safety factor.
  SupNorm sup_norm(int M = 256) const;

  // Geometric-decay fit on the trailing scaled coefficients; bound on the
  // dropped tail over the closed disc. fitted_ratio() >= 0.95 means the
  // truncation is not trustworthy on this domain.
  double tail_estimate() const;
  double tail_ratio() const;

  bool is_real_on_interval(double tol, int samples = 512) const;

  double max_abs_coefficient() const;

private:
  void require_same_domain(const Series& o) const;

  DiscDomain dom_;
  std::vector<cplx> coef_{cplx(0.0, 0.0)};
};

inline Series operator*(cplx s, const Series& f) { return f * s; }

// A 3-component analytic map Omega -> C^3.
struct Curve3 {
  std::array<Series, 3> comp;

  Curve3() = default;
  Curve3(Series a, Series b, Series c) : comp{std::move(a), std::move(b), std::move(c)} {}

  const DiscDomain& domain() const { return comp[0].domain(); }

  CVec3 eval(cplx w) const { return {comp[0](w), comp[1](w), comp[2](w)}; }
  CVec3 operator()(cplx w) const { return eval(w); }

  Curve3 derivative() const;
  Curve3 antiderivative() const;
  Curve3 operator+(const Curve3& o) const;
  Curve3 operator-(const Curve3& o) const;
  Curve3 operator*(cplx s) const;
  Curve3 operator*(const Series& s) const;  // componentwise product

  Curve3 real_part_on_interval() const;

  SupNorm sup_norm(int M = 256) const;  // max over components (Notation-1 norm)
  double tail_estimate() const;
  bool is_real_on_interval(double tol, int samples = 512) const;
};

Series inner(MetricTag m, const Curve3& a, const Curve3& b);
Curve3 cross(MetricTag m, const Curve3& a, const Curve3& b);

// min over sampled u in I of <c'(u), c'(u)>_L (real part); positive return
// certifies membership in the spacelike class S_p at sample resolution.
double spacelike_margin(const Curve3& c, int samples = 512);

// Least-squares fit of degree-`degree` coefficients from 4*(degree+1)
// equispaced samples on the circle |w - u0| = rho_factor * R. For equispaced
// circle samples the discrete Fourier sum *is* the least-squares solution.
// residual = max mismatch on interleaved circle samples (aliasing witness).
struct CircleFit {
  Series series;
  double residual = 0.0;
};
CircleFit fit_on_circle(const DiscDomain& dom, int degree,
                        const std::function<cplx(cplx)>& f,
                        double rho_factor = 0.9);

// Series of f composed with gamma (gamma scalar, near the identity), by
// circle sampling and refit. Throws ImageEscapesDomain if gamma leaves the
// disc on the sampling circle, RefitResidualTooLarge if the refit fails.
Series compose_near_identity(const Series& f, const Series& gamma,
                             double refit_tol = 1e-9);
Curve3 compose_near_identity(const Curve3& f, const Series& gamma,
                             double refit_tol = 1e-9);

}  // namespace bjorling
