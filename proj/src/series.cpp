#include "bjorling/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bjorling {

namespace {
constexpr double kSupSafety = 1.05;
constexpr double kTailRejectRatio = 0.95;
}  // namespace

DiscDomain::DiscDomain(double u0, double R, double r)
    : center(u0), radius(R), interval_half_width(r) {
  if (!(R > 0.0)) fail(ErrorCode::ValidationFailed, "disc radius must be positive");
  if (!(r > 0.0 && r < R))
    fail(ErrorCode::ValidationFailed, "interval half-width must satisfy 0 < r < R");
}

std::vector<double> DiscDomain::interval_samples(int n) const {
  if (n < 2) n = 2;
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i)
    u[i] = center + interval_half_width * (-1.0 + 2.0 * i / (n - 1));
  return u;
}

Series::Series(DiscDomain dom, std::vector<cplx> scaled_coef)
    : dom_(dom), coef_(std::move(scaled_coef)) {
  if (coef_.empty()) coef_.push_back(cplx(0.0, 0.0));
  for (const cplx& c : coef_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorCode::ValidationFailed, "non-finite series coefficient");
}

Series Series::constant(const DiscDomain& dom, cplx value, int degree) {
  std::vector<cplx> c(static_cast<size_t>(std::max(0, degree)) + 1, cplx(0.0, 0.0));
  c[0] = value;
  return Series(dom, std::move(c));
}

Series Series::identity(const DiscDomain& dom) {
  return Series(dom, {cplx(dom.center, 0.0), cplx(dom.radius, 0.0)});
}

Series Series::from_taylor(const DiscDomain& dom, const std::vector<cplx>& taylor) {
  std::vector<cplx> c(taylor.size());
  double p = 1.0;
  for (size_t k = 0; k < taylor.size(); ++k) {
    c[k] = taylor[k] * p;
    p *= dom.radius;
  }
  return Series(dom, std::move(c));
}

Series Series::from_monomials(const DiscDomain& dom, const std::vector<cplx>& mono) {
  // w^n = sum_k binom(n,k) u0^(n-k) (R zeta)^k
  std::vector<cplx> c(mono.size(), cplx(0.0, 0.0));
  for (size_t n = 0; n < mono.size(); ++n) {
    double binom = 1.0;
    double u0pow = std::pow(dom.center, static_cast<double>(n));
    double Rpow = 1.0;
    for (size_t k = 0; k <= n; ++k) {
      c[k] += mono[n] * binom * u0pow * Rpow;
      binom *= static_cast<double>(n - k) / static_cast<double>(k + 1);
      if (dom.center != 0.0) u0pow /= dom.center;
      else u0pow = (k + 1 == n) ? 1.0 : 0.0;
      Rpow *= dom.radius;
    }
  }
  return Series(dom, std::move(c));
}

std::vector<cplx> Series::taylor_coefficients() const {
  std::vector<cplx> t(coef_.size());
  double p = 1.0;
  for (size_t k = 0; k < coef_.size(); ++k) {
    t[k] = coef_[k] / p;
    p *= dom_.radius;
  }
  return t;
}

cplx Series::eval(cplx w) const {
  cplx zeta = (w - dom_.center) / dom_.radius;
  if (std::abs(zeta) > 1.0 + 1e-9)
    fail(ErrorCode::OutOfDomain,
         "evaluation point leaves the disc: |w - u0| = " +
             std::to_string(std::abs(w - dom_.center)) + " > R = " +
             std::to_string(dom_.radius));
  cplx acc(0.0, 0.0);
  for (size_t k = coef_.size(); k-- > 0;) acc = acc * zeta + coef_[k];
  return acc;
}

Series Series::derivative() const {
  if (coef_.size() == 1) return constant(dom_, cplx(0.0, 0.0));
  std::vector<cplx> c(coef_.size() - 1);
  for (size_t k = 1; k < coef_.size(); ++k)
    c[k - 1] = coef_[k] * (static_cast<double>(k) / dom_.radius);
  return Series(dom_, std::move(c));
}

Series Series::antiderivative() const {
  std::vector<cplx> c(coef_.size() + 1, cplx(0.0, 0.0));
  for (size_t k = 0; k < coef_.size(); ++k)
    c[k + 1] = coef_[k] * (dom_.radius / static_cast<double>(k + 1));
  return Series(dom_, std::move(c));
}

void Series::require_same_domain(const Series& o) const {
  if (!(dom_ == o.dom_))
    fail(ErrorCode::DomainMismatch, "series live on different discs");
}

Series Series::operator+(const Series& o) const {
  require_same_domain(o);
  std::vector<cplx> c(std::max(coef_.size(), o.coef_.size()), cplx(0.0, 0.0));
  for (size_t k = 0; k < coef_.size(); ++k) c[k] += coef_[k];
  for (size_t k = 0; k < o.coef_.size(); ++k) c[k] += o.coef_[k];
  return Series(dom_, std::move(c));
}

Series Series::operator-(const Series& o) const {
  require_same_domain(o);
  std::vector<cplx> c(std::max(coef_.size(), o.coef_.size()), cplx(0.0, 0.0));
  for (size_t k = 0; k < coef_.size(); ++k) c[k] += coef_[k];
  for (size_t k = 0; k < o.coef_.size(); ++k) c[k] -= o.coef_[k];
  return Series(dom_, std::move(c));
}

Series Series::operator*(const Series& o) const {
  require_same_domain(o);
  size_t n = std::max(coef_.size(), o.coef_.size());
  std::vector<cplx> c(n, cplx(0.0, 0.0));
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == cplx(0.0, 0.0)) continue;
    size_t jmax = std::min(o.coef_.size(), n - i);
    for (size_t j = 0; j < jmax; ++j) c[i + j] += coef_[i] * o.coef_[j];
  }
  return Series(dom_, std::move(c));
}

Series Series::operator*(cplx s) const {
  std::vector<cplx> c(coef_);
  for (cplx& v : c) v *= s;
  return Series(dom_, std::move(c));
}

Series Series::reflected() const {
  std::vector<cplx> c(coef_);
  for (cplx& v : c) v = std::conj(v);
  return Series(dom_, std::move(c));
}

Series Series::real_part_on_interval() const {
  return (*this + reflected()) * cplx(0.5, 0.0);
}

Series Series::imag_part_on_interval() const {
  return (*this - reflected()) * cplx(0.0, -0.5);
}

Series Series::reciprocal(ErrorCode on_failure) const {
  double scale = max_abs_coefficient();
  if (std::abs(coef_[0]) < 1e-13 * std::max(1.0, scale))
    fail(on_failure, "series reciprocal: constant term vanishes at the center");
  std::vector<cplx> b(coef_.size(), cplx(0.0, 0.0));
  b[0] = 1.0 / coef_[0];
  for (size_t k = 1; k < coef_.size(); ++k) {
    cplx acc(0.0, 0.0);
    for (size_t j = 1; j <= k && j < coef_.size(); ++j) acc += coef_[j] * b[k - j];
    b[k] = -acc / coef_[0];
  }
  return Series(dom_, std::move(b));
}

Series Series::sqrt_branch(ErrorCode on_failure) const {
  double scale = max_abs_coefficient();
  if (std::abs(coef_[0]) < 1e-13 * std::max(1.0, scale))
    fail(on_failure, "series sqrt: branch point at the center");
  std::vector<cplx> s(coef_.size(), cplx(0.0, 0.0));
  s[0] = std::sqrt(coef_[0]);
  for (size_t k = 1; k < coef_.size(); ++k) {
    cplx acc = coef_[k];
    for (size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc / (2.0 * s[0]);
  }
  return Series(dom_, std::move(s));
}

SupNorm Series::sup_norm(int M) const {
  if (M < 64) M = 64;
  double best = 0.0;
  for (int j = 0; j < M; ++j) {
    double th = 2.0 * std::numbers::pi * j / M;
    cplx zeta(std::cos(th), std::sin(th));
    cplx acc(0.0, 0.0);
    for (size_t k = coef_.size(); k-- > 0;) acc = acc * zeta + coef_[k];
    best = std::max(best, std::abs(acc));
  }
  return SupNorm{best * kSupSafety, M};
}

double Series::max_abs_coefficient() const {
  double m = 0.0;
  for (const cplx& c : coef_) m = std::max(m, std::abs(c));
  return m;
}

double Series::tail_ratio() const {
  // Fit |coef_k| ~ C q^k on the trailing window by least squares in log
  // space. Entries at the rounding-noise floor (interleaved zeros of trig
  // series, cancellation dust in products) are excluded from the fit: they
  // carry no decay information and would flatten the slope.
  int n = static_cast<int>(coef_.size());
  int window = std::min(8, n);
  double scale = max_abs_coefficient();
  if (scale == 0.0) return 0.0;
  double wmax = 0.0;
  for (int k = n - window; k < n; ++k) wmax = std::max(wmax, std::abs(coef_[k]));
  if (wmax <= 1e-13 * scale) return 0.0;  // tail already at the noise floor
  double floor = std::max(wmax * 1e-6, scale * 1e-15);
  double sk = 0, sl = 0, skk = 0, skl = 0;
  int pts = 0;
  for (int k = n - window; k < n; ++k) {
    double m = std::abs(coef_[k]);
    if (m < floor) continue;
    double lk = static_cast<double>(k), ll = std::log(m);
    sk += lk; sl += ll; skk += lk * lk; skl += lk * ll;
    ++pts;
  }
  if (pts < 2) return 0.0;
  double denom = pts * skk - sk * sk;
  if (denom == 0.0) return 0.0;
  double slope = (pts * skl - sk * sl) / denom;
  return std::exp(slope);
}

double Series::tail_estimate() const {
  int n = static_cast<int>(coef_.size());
  if (n < 10) return 0.0;  // short series are exact polynomials, not truncations
  int window = std::min(8, n);
  double scale = max_abs_coefficient();
  if (scale == 0.0) return 0.0;
  double wmax = 0.0;
  double floor = std::max(scale * 1e-15, 1e-300);
  for (int k = n - window; k < n; ++k) wmax = std::max(wmax, std::abs(coef_[k]));
  if (wmax <= 1e-13 * scale) return wmax;  // converged to the noise floor
  double q = tail_ratio();
  if (q <= 0.0) return wmax;
  if (q >= kTailRejectRatio) return std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (int k = n - window; k < n; ++k) {
    double m = std::abs(coef_[k]);
    if (m >= std::max(wmax * 1e-6, floor)) last = m;
  }
  if (last == 0.0) last = wmax;
  return last * q / (1.0 - q);
}

bool Series::is_real_on_interval(double tol, int samples) const {
  // Both checks run: coefficient imaginary parts (scaled relative) and dense
  // interval sampling; refit artifacts can hide in either alone.
  double scale = std::max(1.0, max_abs_coefficient());
  for (const cplx& c : coef_)
    if (std::abs(c.imag()) > tol * scale) return false;
  for (double u : dom_.interval_samples(samples))
    if (std::abs(eval(cplx(u, 0.0)).imag()) > tol * scale) return false;
  return true;
}

Curve3 Curve3::derivative() const {
  return {comp[0].derivative(), comp[1].derivative(), comp[2].derivative()};
}

Curve3 Curve3::antiderivative() const {
  return {comp[0].antiderivative(), comp[1].antiderivative(), comp[2].antiderivative()};
}

Curve3 Curve3::operator+(const Curve3& o) const {
  return {comp[0] + o.comp[0], comp[1] + o.comp[1], comp[2] + o.comp[2]};
}

Curve3 Curve3::operator-(const Curve3& o) const {
  return {comp[0] - o.comp[0], comp[1] - o.comp[1], comp[2] - o.comp[2]};
}

Curve3 Curve3::operator*(cplx s) const {
  return {comp[0] * s, comp[1] * s, comp[2] * s};
}

Curve3 Curve3::operator*(const Series& s) const {
  return {comp[0] * s, comp[1] * s, comp[2] * s};
}

Curve3 Curve3::real_part_on_interval() const {
  return {comp[0].real_part_on_interval(), comp[1].real_part_on_interval(),
          comp[2].real_part_on_interval()};
}

SupNorm Curve3::sup_norm(int M) const {
  SupNorm best{0.0, M};
  for (const Series& s : comp) {
    SupNorm sn = s.sup_norm(M);
    best.value = std::max(best.value, sn.value);
    best.sample_count = sn.sample_count;
  }
  return best;
}

double Curve3::tail_estimate() const {
  double t = 0.0;
  for (const Series& s : comp) t = std::max(t, s.tail_estimate());
  return t;
}

bool Curve3::is_real_on_interval(double tol, int samples) const {
  for (const Series& s : comp)
    if (!s.is_real_on_interval(tol, samples)) return false;
  return true;
}

Series inner(MetricTag m, const Curve3& a, const Curve3& b) {
  Series s = a.comp[0] * b.comp[0] + a.comp[1] * b.comp[1];
  Series third = a.comp[2] * b.comp[2];
  return m == MetricTag::Lorentz ? s - third : s + third;
}

Curve3 cross(MetricTag m, const Curve3& a, const Curve3& b) {
  Series cx = a.comp[1] * b.comp[2] - a.comp[2] * b.comp[1];
  Series cy = a.comp[2] * b.comp[0] - a.comp[0] * b.comp[2];
  Series cz = a.comp[0] * b.comp[1] - a.comp[1] * b.comp[0];
  if (m == MetricTag::Lorentz) cz = -cz;
  return {std::move(cx), std::move(cy), std::move(cz)};
}

double spacelike_margin(const Curve3& c, int samples) {
  Curve3 d = c.derivative();
  double margin = std::numeric_limits<double>::infinity();
  for (double u : c.domain().interval_samples(samples)) {
    CVec3 v = d.eval(cplx(u, 0.0));
    double q = inner(MetricTag::Lorentz, v, v).real();
    margin = std::min(margin, q);
  }
  return margin;
}

CircleFit fit_on_circle(const DiscDomain& dom, int degree,
                        const std::function<cplx(cplx)>& f, double rho_factor) {
  int N = std::max(0, degree);
  int M = 4 * (N + 1);
  double rho = rho_factor * dom.radius;
  std::vector<cplx> samples(M);
  for (int j = 0; j < M; ++j) {
    double th = 2.0 * std::numbers::pi * j / M;
    samples[j] = f(dom.center + cplx(rho * std::cos(th), rho * std::sin(th)));
  }
  std::vector<cplx> coef(N + 1, cplx(0.0, 0.0));
  for (int k = 0; k <= N; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < M; ++j) {
      double th = -2.0 * std::numbers::pi * k * j / M;
      acc += samples[j] * cplx(std::cos(th), std::sin(th));
    }
    coef[k] = acc / (static_cast<double>(M) * std::pow(rho_factor, k));
  }
  Series fit(dom, std::move(coef));
  double resid = 0.0;
  for (int j = 0; j < M; ++j) {
    double th = 2.0 * std::numbers::pi * (j + 0.5) / M;
    cplx w = dom.center + cplx(rho * std::cos(th), rho * std::sin(th));
    resid = std::max(resid, std::abs(fit.eval(w) - f(w)));
  }
  return CircleFit{std::move(fit), resid};
}

Series compose_near_identity(const Series& f, const Series& gamma,
                             double refit_tol) {
  const DiscDomain& dom = gamma.domain();
  if (!(f.domain() == dom))
    fail(ErrorCode::DomainMismatch, "compose: f and gamma on different discs");
  double scale = 0.0;
  auto sampler = [&](cplx w) {
    cplx gw = gamma.eval(w);
    if (std::abs(gw - dom.center) >= dom.radius)
      fail(ErrorCode::ImageEscapesDomain,
           "compose: gamma image leaves the disc, |gamma(w) - u0| = " +
               std::to_string(std::abs(gw - dom.center)));
    cplx v = f.eval(gw);
    scale = std::max(scale, std::abs(v));
    return v;
  };
  CircleFit fit = fit_on_circle(dom, std::max(f.degree(), gamma.degree()), sampler);
  if (fit.residual > refit_tol * std::max(1.0, scale))
    fail(ErrorCode::RefitResidualTooLarge,
         "compose refit residual " + std::to_string(fit.residual));
  return std::move(fit.series);
}

Curve3 compose_near_identity(const Curve3& f, const Series& gamma,
                             double refit_tol) {
  return {compose_near_identity(f.comp[0], gamma, refit_tol),
          compose_near_identity(f.comp[1], gamma, refit_tol),
          compose_near_identity(f.comp[2], gamma, refit_tol)};
}

}  // namespace bjorling
