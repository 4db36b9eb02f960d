#include "meridian/rq.hpp"

#include <cmath>

namespace meridian {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

MeridianValue mul_meridian(MeridianValue a, MeridianValue b) {
  return {a.s * b.s - a.t * b.t, a.s * b.t + a.t * b.s};
}

MeridianValue inv_meridian(MeridianValue a) {
  const double n2 = a.norm_squared();
  if (n2 == 0.0) {
    throw DivisionByZeroError();
  }
  return {a.s / n2, -a.t / n2};
}

Cylindrical to_cylindrical(const ReducedQuaternion& p) {
  Cylindrical c;
  c.x0 = p.x0;
  c.rho = p.rho();
  if (c.rho == 0.0) {
    c.theta = 0.0;
    c.degenerate = true;
    return c;
  }
  double theta = std::atan2(p.x2, p.x1);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;  // guard against atan2(-0.0, ...) rounding
  c.theta = theta;
  return c;
}

MeridianDecomposition meridian_of(const ReducedQuaternion& p) {
  const double rho = p.rho();
  if (rho == 0.0) {
    throw AxisPointError();
  }
  return {{p.x0, rho}, {p.x1 / rho, p.x2 / rho}};
}

ReducedQuaternion embed(MeridianValue m, const Azimuth& az) {
  const double unit_defect = std::abs(az.a1 * az.a1 + az.a2 * az.a2 - 1.0);
  if (unit_defect > 1e-9) {
    throw NonUnitAzimuthError();
  }
  return {m.s, m.t * az.a1, m.t * az.a2};
}

}  // namespace meridian
