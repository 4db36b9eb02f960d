#ifndef MERIDIAN_BESSEL_HPP
#define MERIDIAN_BESSEL_HPP

#include "meridian/errors.hpp"

namespace meridian {

/// Cylinder function family: ordinary (J, Y) and modified (I, K).
enum class BesselKind { J, Y, I, K };

/// Largest supported order.
inline constexpr double kBesselMaxOrder = 50.0;

/// C_nu(x) for real order nu in [0, 50] and x > 0.
///
/// J/Y use an ascending series below x = 2 with a stabilized connection
/// formula for Y (uniform in the order, including the integer limit), and a
/// Steed-type evaluation (CF1 ratio, backward recurrence, complex CF2 plus
/// the Wronskian) above.  I uses the ascending series, which has no
/// cancellation.  K integrates exp(-x cosh t) cosh(nu t) by trapezoid rule
/// with automatic range and step refinement.
///
/// Throws DomainError for x <= 0 or nu < 0, UnsupportedOrderError for nu > 50.
double bessel(BesselKind kind, double nu, double x);

/// Half-integer closed forms: J_{1/2}(x) = sqrt(2/(pi x)) sin x and
/// Y_{1/2}(x) = -sqrt(2/(pi x)) cos x.  Only J and Y are defined.
double bessel_half(BesselKind kind, double x);

/// dC_nu/dx via the recurrence C'_nu = (nu/x) C_nu -+ C_{nu+1}
/// (minus for J, Y, K; plus for I).
double bessel_derivative(BesselKind kind, double nu, double x);

/// J_nu, Y_nu and their derivatives in one evaluation.
struct BesselJY {
  double j;
  double jp;
  double y;
  double yp;
};

BesselJY bessel_jy(double nu, double x);

}  // namespace meridian

#endif  // MERIDIAN_BESSEL_HPP
