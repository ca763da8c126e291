#pragma once
#include <cmath>
#include <complex>

#include "bjorling/errors.hpp"

namespace bjorling {

using cplx = std::complex<double>;

// Which ambient inner product is in play: <v,w>_E = v1w1 + v2w2 + v3w3 or
// <v,w>_L = v1w1 + v2w2 - v3w3.
enum class MetricTag { Euclidean, Lorentz };

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct CVec3 {
  cplx x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

  CVec3() = default;
  CVec3(cplx x_, cplx y_, cplx z_) : x(x_), y(y_), z(z_) {}
  CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(cplx s) const { return {x * s, y * s, z * s}; }

  Vec3 real() const { return {x.real(), y.real(), z.real()}; }
  Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
};

// Bilinear extension of the ambient inner product to C^3. Never Hermitian:
// isotropy <f',f'> = 0 requires bilinearity.
inline cplx inner(MetricTag m, const CVec3& a, const CVec3& b) {
  cplx third = a.z * b.z;
  return a.x * b.x + a.y * b.y + (m == MetricTag::Lorentz ? -third : third);
}

inline double inner(MetricTag m, const Vec3& a, const Vec3& b) {
  double third = a.z * b.z;
  return a.x * b.x + a.y * b.y + (m == MetricTag::Lorentz ? -third : third);
}

// Euclidean case is the standard cross product. Lorentz case is fixed by
// <x ×_L y, z>_L = det(x,y,z), i.e. the Euclidean cross product with the
// third component negated.
inline CVec3 cross(MetricTag m, const CVec3& a, const CVec3& b) {
  CVec3 c{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  if (m == MetricTag::Lorentz) c.z = -c.z;
  return c;
}

inline Vec3 cross(MetricTag m, const Vec3& a, const Vec3& b) {
  Vec3 c{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  if (m == MetricTag::Lorentz) c.z = -c.z;
  return c;
}

inline double euclidean_magnitude(const Vec3& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

// sqrt(|<v,v>_L|); the paper writes |.| on timelike vectors without defining
// it, so both magnitudes are exposed and the caller picks.
inline double lorentz_magnitude(const Vec3& v) {
  return std::sqrt(std::abs(inner(MetricTag::Lorentz, v, v)));
}

inline CausalCharacter causal_character(const Vec3& v, double tol = 1e-12) {
  if (tol < 0.0) fail(ErrorCode::ValidationFailed, "causal tolerance must be >= 0");
  double q = inner(MetricTag::Lorentz, v, v);
  if (q > tol) return CausalCharacter::Spacelike;
  if (q < -tol) return CausalCharacter::Timelike;
  return CausalCharacter::Lightlike;
}

// v / sqrt(-<v,v>_L); result w has <w,w>_L = -1 and the same direction.
inline Vec3 normalize_timelike(const Vec3& v, double tol = 1e-12) {
  double q = inner(MetricTag::Lorentz, v, v);
  if (q >= -tol)
    fail(ErrorCode::NotTimelike, "normalize_timelike: <v,v>_L = " + std::to_string(q));
  return v / std::sqrt(-q);
}

}  // namespace bjorling
