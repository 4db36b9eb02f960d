#ifndef MERIDIAN_SERIES_HPP
#define MERIDIAN_SERIES_HPP

#include <vector>

#include "meridian/field.hpp"
#include "meridian/rq.hpp"

namespace meridian {

/// One separable mode of the Euler-Poisson-Darboux equation:
///   Xi(x0)  = b1 cosh(beta x0) + b2 sinh(beta x0)
///   Ups(rho) = rho^(alpha/2) [a1 J_{alpha/2}(beta rho) + a2 Y_{alpha/2}(beta rho)]
struct GaspTerm {
  double beta = 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

struct GaspSeries {
  double alpha = 1.0;
  std::vector<GaspTerm> terms;
};

/// Validates parameters (alpha >= 0 for the Bessel order, beta > 0 per term).
void validate(const GaspSeries& s);

double gasp_eval(const GaspSeries& s, MeridianValue m);

/// Analytic (dg/dx0, dg/drho) via Bessel recurrences.
std::array<double, 2> gasp_grad(const GaspSeries& s, MeridianValue m);

/// Meridional field backed by the series; partials analytic.
MeridionalField make_gasp_field(const GaspSeries& s);

/// The alpha = 1 closed form g = e^(beta x0)[-A1 sin(beta rho) + A2 cos(beta rho)];
/// its zero set is empty for (A1, A2) != 0.
MeridionalField exponential_example(double beta, double a1, double a2);

/// GaspSeries encoding of exponential_example via the half-integer reduction:
/// b1 = b2 = 1, a1 = -A1 sqrt(pi beta/2), a2 = -A2 sqrt(pi beta/2).
GaspSeries exponential_example_series(double beta, double a1, double a2);

/// One separable mode of the bihyperbolic equation on the quadrant
/// x1 > 0, x2 > 0 (orders (alpha1+1)/2 and (alpha2+1)/2):
///   x1-factor: x1^((alpha1+1)/2) [c1 J(lambda x1) + c2 Y(lambda x1)]
///   x0-factor: b1 cos(mu x0) + b2 sin(mu x0)
///   x2-factor: x2^((alpha2+1)/2) [a1 I(nu x2) + a2 K(nu x2)], nu = sqrt(lambda^2 + mu^2)
///
/// The imaginary-argument J/Y pair of the separated x2 equation is realized
/// by the real modified basis {I, K} of the same ODE.
struct BiTerm {
  double lambda = 1.0;
  double mu = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;

  double nu() const;
};

struct BiSeries {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  std::vector<BiTerm> terms;
};

/// Validates parameters; returns warnings (non-integer mu with nonzero
/// x0-coefficients suggests a malformed Fourier family but is accepted).
std::vector<std::string> validate(const BiSeries& s);

double bi_eval(const BiSeries& s, const ReducedQuaternion& p);

/// h(x0, x1, x2) as a callable for the residual operators.
ScalarField3 bi_potential(const BiSeries& s);

/// Stokes stream function by line integration of the generalized
/// Stokes-Beltrami differentials along the axis-parallel L-path
/// ref -> (ref.s, m.t) -> m, with gh(ref) = 0.  Adaptive Simpson quadrature
/// with relative tolerance quad_tol.
double stokes_from_potential(const MeridionalField& f, MeridianValue m, MeridianValue ref,
                             double quad_tol = 1e-9);

/// Same integral along the other L-path (horizontal first); used for
/// path-independence checks.
double stokes_from_potential_alt_path(const MeridionalField& f, MeridianValue m,
                                      MeridianValue ref, double quad_tol = 1e-9);

/// gh as a profile: value by line integration from ref, gradient analytic
/// from the Stokes-Beltrami system (rho^(1-alpha) g_x0, -rho^(1-alpha) g_rho
/// swapped into (gh_x0, gh_rho) = (-rho^(1-alpha) g_rho, rho^(1-alpha) g_x0)).
ScalarField2 stokes_stream_profile(const MeridionalField& f, MeridianValue ref,
                                   double quad_tol = 1e-9, bool analytic_gradient = true);

}  // namespace meridian

#endif  // MERIDIAN_SERIES_HPP
