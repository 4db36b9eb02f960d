#ifndef MERIDIAN_RQ_HPP
#define MERIDIAN_RQ_HPP

#include <cmath>

#include "meridian/errors.hpp"

namespace meridian {

/// A point (or value) x0 + i x1 + j x2 of R^3 viewed inside the quaternions
/// with the k-component zero.
struct ReducedQuaternion {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;

  /// Cylindrical radius rho = sqrt(x1^2 + x2^2).
  double rho() const { return std::hypot(x1, x2); }
  double norm_squared() const { return x0 * x0 + x1 * x1 + x2 * x2; }
  double norm() const { return std::sqrt(norm_squared()); }
};

inline ReducedQuaternion conj(const ReducedQuaternion& q) {
  return {q.x0, -q.x1, -q.x2};
}

inline bool operator==(const ReducedQuaternion& a, const ReducedQuaternion& b) {
  return a.x0 == b.x0 && a.x1 == b.x1 && a.x2 == b.x2;
}

/// Value s + I t in the meridian half-plane.  Since I^2 = -1 the arithmetic
/// is isomorphic to complex arithmetic on s + it.
struct MeridianValue {
  double s = 0.0;
  double t = 0.0;

  double norm() const { return std::hypot(s, t); }
  double norm_squared() const { return s * s + t * t; }
};

inline MeridianValue operator+(MeridianValue a, MeridianValue b) { return {a.s + b.s, a.t + b.t}; }
inline MeridianValue operator-(MeridianValue a, MeridianValue b) { return {a.s - b.s, a.t - b.t}; }
inline MeridianValue operator-(MeridianValue a) { return {-a.s, -a.t}; }
inline MeridianValue operator*(double c, MeridianValue a) { return {c * a.s, c * a.t}; }

MeridianValue mul_meridian(MeridianValue a, MeridianValue b);

/// Multiplicative inverse; throws DivisionByZeroError at (0, 0).
MeridianValue inv_meridian(MeridianValue a);

inline MeridianValue operator*(MeridianValue a, MeridianValue b) { return mul_meridian(a, b); }

/// Unit azimuth vector, the components of I = (i x1 + j x2)/rho.
struct Azimuth {
  double a1 = 1.0;
  double a2 = 0.0;
};

struct Cylindrical {
  double x0 = 0.0;
  double rho = 0.0;
  double theta = 0.0;      ///< in [0, 2*pi)
  bool degenerate = false; ///< rho = 0: theta reported as 0 by convention
};

/// Cylindrical decomposition x1 = rho cos(theta), x2 = rho sin(theta).
/// theta is the two-argument angle of (x1, x2) normalized to [0, 2*pi).
Cylindrical to_cylindrical(const ReducedQuaternion& p);

struct MeridianDecomposition {
  MeridianValue m;  ///< (x0, rho)
  Azimuth az;       ///< (x1/rho, x2/rho)
};

/// Meridian-plane projection x = x0 + I rho.  Throws AxisPointError at rho = 0
/// where the azimuth is undefined.
MeridianDecomposition meridian_of(const ReducedQuaternion& p);

/// Inverse of meridian_of: (m.s, m.t a1, m.t a2).  Throws NonUnitAzimuthError
/// if |a1^2 + a2^2 - 1| > 1e-9.
ReducedQuaternion embed(MeridianValue m, const Azimuth& az);

}  // namespace meridian

#endif  // MERIDIAN_RQ_HPP
