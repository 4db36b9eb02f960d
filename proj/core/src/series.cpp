#include "meridian/series.hpp"

#include <cmath>
#include <string>

#include "meridian/bessel.hpp"

namespace meridian {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

/// a1 J_nu + a2 Y_nu and the companion order nu+1 combination in one shot.
struct CylPair {
  double c;       // a1 J_nu(z) + a2 Y_nu(z)
  double c_next;  // a1 J_{nu+1}(z) + a2 Y_{nu+1}(z)
};

CylPair cyl_combo(double nu, double z, double a1, double a2) {
  CylPair out{0.0, 0.0};
  if (a1 != 0.0) {
    out.c += a1 * bessel(BesselKind::J, nu, z);
    out.c_next += a1 * bessel(BesselKind::J, nu + 1.0, z);
  }
  if (a2 != 0.0) {
    out.c += a2 * bessel(BesselKind::Y, nu, z);
    out.c_next += a2 * bessel(BesselKind::Y, nu + 1.0, z);
  }
  return out;
}

struct RadialFactor {
  double ups;    // rho^(alpha/2) C(beta rho)
  double dups;   // first derivative
  double d2ups;  // second derivative
};

/// Ups(rho) = rho^(alpha/2) [a1 J_{alpha/2} + a2 Y_{alpha/2}](beta rho) and
/// its derivatives via C'_nu = (nu/z) C_nu - C_{nu+1} and
/// C'_{nu+1} = C_nu - ((nu+1)/z) C_{nu+1}:
///   Ups'  = alpha rho^(alpha/2-1) C - beta rho^(alpha/2) C+
///   Ups'' = (alpha^2-alpha) rho^(alpha/2-2) C - beta^2 rho^(alpha/2) C
///           + (1-alpha) beta rho^(alpha/2-1) C+
RadialFactor radial_factor(double alpha, const GaspTerm& t, double rho) {
  const double nu = 0.5 * alpha;
  const double z = t.beta * rho;
  const auto [c, c1] = cyl_combo(nu, z, t.a1, t.a2);
  const double p = std::pow(rho, nu);
  RadialFactor f;
  f.ups = p * c;
  f.dups = alpha * p / rho * c - t.beta * p * c1;
  f.d2ups = (alpha * alpha - alpha) * p / (rho * rho) * c - t.beta * t.beta * p * c +
            (1.0 - alpha) * t.beta * p / rho * c1;
  return f;
}

}  // namespace

void validate(const GaspSeries& s) {
  if (!(s.alpha >= 0.0)) {
    throw DomainError("gasp series: alpha must be >= 0 (Bessel order alpha/2)");
  }
  for (const auto& t : s.terms) {
    if (!(t.beta > 0.0)) {
      throw DomainError("gasp series: beta must be positive (beta = 0 degenerates the family)");
    }
  }
}

double gasp_eval(const GaspSeries& s, MeridianValue m) {
  if (m.t < 0.0) {
    throw DomainError("gasp_eval: rho must be nonnegative");
  }
  if (m.t == 0.0) {
    // on-axis limit exists only for Y-free terms:
    // rho^(alpha/2) J_(alpha/2)(beta rho) -> 0 for alpha > 0, -> 1 for alpha = 0
    double sum = 0.0;
    for (const auto& t : s.terms) {
      if (t.a2 != 0.0) {
        throw DomainError("gasp_eval: Y-terms are singular on the axis (rho = 0)");
      }
      if (s.alpha == 0.0) {
        sum += (t.b1 * std::cosh(t.beta * m.s) + t.b2 * std::sinh(t.beta * m.s)) * t.a1;
      }
    }
    return sum;
  }
  double sum = 0.0;
  for (const auto& t : s.terms) {
    const double xi = t.b1 * std::cosh(t.beta * m.s) + t.b2 * std::sinh(t.beta * m.s);
    sum += xi * radial_factor(s.alpha, t, m.t).ups;
  }
  return sum;
}

std::array<double, 2> gasp_grad(const GaspSeries& s, MeridianValue m) {
  if (!(m.t > 0.0)) {
    throw DomainError("gasp_grad: rho must be positive");
  }
  double gx = 0.0, gr = 0.0;
  for (const auto& t : s.terms) {
    const double xi = t.b1 * std::cosh(t.beta * m.s) + t.b2 * std::sinh(t.beta * m.s);
    const double dxi = t.beta * (t.b1 * std::sinh(t.beta * m.s) + t.b2 * std::cosh(t.beta * m.s));
    const RadialFactor f = radial_factor(s.alpha, t, m.t);
    gx += dxi * f.ups;
    gr += xi * f.dups;
  }
  return {gx, gr};
}

namespace {

class GaspProfile final : public PotentialProfile {
 public:
  explicit GaspProfile(GaspSeries s) : series_(std::move(s)) {}

  double value(double x0, double rho) const override { return gasp_eval(series_, {x0, rho}); }

  std::array<double, 2> gradient(double x0, double rho) const override {
    return gasp_grad(series_, {x0, rho});
  }

  FieldSample sample(double x0, double rho) const override {
    FieldSample out;
    for (const auto& t : series_.terms) {
      const double xi = t.b1 * std::cosh(t.beta * x0) + t.b2 * std::sinh(t.beta * x0);
      const double dxi = t.beta * (t.b1 * std::sinh(t.beta * x0) + t.b2 * std::cosh(t.beta * x0));
      const double d2xi = t.beta * t.beta * xi;
      const RadialFactor f = radial_factor(series_.alpha, t, rho);
      out.v0 += dxi * f.ups;
      out.vrho += xi * f.dups;
      out.dv0_dx0 += d2xi * f.ups;
      out.dv0_drho += dxi * f.dups;
      out.dvrho_dx0 += dxi * f.dups;
      out.dvrho_drho += xi * f.d2ups;
    }
    return out;
  }

  bool has_analytic_gradient() const override { return true; }

 private:
  GaspSeries series_;
};

}  // namespace

MeridionalField make_gasp_field(const GaspSeries& s) {
  validate(s);
  return MeridionalField(s.alpha, std::make_shared<GaspProfile>(s));
}

MeridionalField exponential_example(double beta, double a1, double a2) {
  return make_exponential_field(beta, a1, a2);
}

GaspSeries exponential_example_series(double beta, double a1, double a2) {
  if (!(beta > 0.0)) {
    throw DomainError("exponential_example_series: beta must be positive");
  }
  const double k = -std::sqrt(0.5 * kPi * beta);
  GaspSeries s;
  s.alpha = 1.0;
  s.terms.push_back({beta, 1.0, 1.0, k * a1, k * a2});
  return s;
}

double BiTerm::nu() const { return std::sqrt(lambda * lambda + mu * mu); }

std::vector<std::string> validate(const BiSeries& s) {
  if (!(s.alpha1 > 0.0) || !(s.alpha2 > 0.0)) {
    throw DomainError("bihyperbolic series: alpha1 and alpha2 must be positive");
  }
  std::vector<std::string> warnings;
  for (const auto& t : s.terms) {
    if (!(t.lambda > 0.0)) {
      throw DomainError(
          "bihyperbolic series: lambda must be positive (lambda = 0 degenerates the family)");
    }
    const bool integral_mu = std::abs(t.mu - std::round(t.mu)) < 1e-12;
    if (!integral_mu && (t.b1 != 0.0 || t.b2 != 0.0)) {
      warnings.push_back("bihyperbolic term with non-integer mu = " + std::to_string(t.mu) +
                         ": x0-factor is not 2*pi-periodic (Fourier families use integer mu)");
    }
  }
  return warnings;
}

double bi_eval(const BiSeries& s, const ReducedQuaternion& p) {
  if (!(p.x1 > 0.0) || !(p.x2 > 0.0)) {
    throw QuadrantViolationError();
  }
  const double nu1 = 0.5 * (s.alpha1 + 1.0);
  const double nu2 = 0.5 * (s.alpha2 + 1.0);
  const double p1 = std::pow(p.x1, nu1);
  const double p2 = std::pow(p.x2, nu2);
  double sum = 0.0;
  for (const auto& t : s.terms) {
    double f1 = 0.0;
    if (t.c1 != 0.0) f1 += t.c1 * bessel(BesselKind::J, nu1, t.lambda * p.x1);
    if (t.c2 != 0.0) f1 += t.c2 * bessel(BesselKind::Y, nu1, t.lambda * p.x1);
    const double f0 = t.b1 * std::cos(t.mu * p.x0) + t.b2 * std::sin(t.mu * p.x0);
    const double nu = t.nu();
    double f2 = 0.0;
    if (t.a1 != 0.0) f2 += t.a1 * bessel(BesselKind::I, nu2, nu * p.x2);
    if (t.a2 != 0.0) f2 += t.a2 * bessel(BesselKind::K, nu2, nu * p.x2);
    sum += p1 * f1 * f0 * p2 * f2;
  }
  return sum;
}

ScalarField3 bi_potential(const BiSeries& s) {
  return [s](double x0, double x1, double x2) { return bi_eval(s, {x0, x1, x2}); };
}

namespace {

/// Adaptive Simpson with Richardson correction; throws on recursion overflow.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  struct Frame {
    double a, b, fa, fm, fb, whole;
    int depth;
  };
  auto simpson = [](double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
  };
  const double m0 = 0.5 * (a + b);
  const double fa = f(a), fm = f(m0), fb = f(b);
  double result = 0.0;
  std::vector<Frame> stack;
  stack.push_back({a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), 0});
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (fr.a + fr.b);
    const double lm = 0.5 * (fr.a + mid);
    const double rm = 0.5 * (mid + fr.b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fr.fa, flm, fr.fm, mid - fr.a);
    const double right = simpson(fr.fm, frm, fr.fb, fr.b - mid);
    const double err = left + right - fr.whole;
    if (std::abs(err) <= 15.0 * tol * std::max(1.0, std::abs(left + right))) {
      result += left + right + err / 15.0;
    } else if (fr.depth >= 48) {
      throw IntegrationFailureError("stokes_from_potential: adaptive quadrature did not converge");
    } else {
      stack.push_back({fr.a, mid, fr.fa, flm, fr.fm, left, fr.depth + 1});
      stack.push_back({mid, fr.b, fr.fm, frm, fr.fb, right, fr.depth + 1});
    }
  }
  return result;
}

void require_off_axis(MeridianValue m, const char* who) {
  if (!(m.t > 0.0)) {
    throw AxisPointError(std::string(who) + ": rho must be positive");
  }
}

/// d gh = -rho^(1-alpha) g_rho dx0 + rho^(1-alpha) g_x0 drho.
double stokes_leg_vertical(const MeridionalField& f, double x0, double rho_from, double rho_to,
                           double tol) {
  if (rho_from == rho_to) return 0.0;
  const double alpha = f.alpha();
  return adaptive_simpson(
      [&](double rho) { return std::pow(rho, 1.0 - alpha) * f.velocity({x0, rho})[0]; }, rho_from,
      rho_to, tol);
}

double stokes_leg_horizontal(const MeridionalField& f, double rho, double x0_from, double x0_to,
                             double tol) {
  if (x0_from == x0_to) return 0.0;
  const double alpha = f.alpha();
  return adaptive_simpson(
      [&](double x0) { return -std::pow(rho, 1.0 - alpha) * f.velocity({x0, rho})[1]; }, x0_from,
      x0_to, tol);
}

}  // namespace

double stokes_from_potential(const MeridionalField& f, MeridianValue m, MeridianValue ref,
                             double quad_tol) {
  require_off_axis(m, "stokes_from_potential");
  require_off_axis(ref, "stokes_from_potential (ref)");
  // ref -> vertical to (ref.s, m.t) -> horizontal to m
  return stokes_leg_vertical(f, ref.s, ref.t, m.t, quad_tol) +
         stokes_leg_horizontal(f, m.t, ref.s, m.s, quad_tol);
}

double stokes_from_potential_alt_path(const MeridionalField& f, MeridianValue m, MeridianValue ref,
                                      double quad_tol) {
  require_off_axis(m, "stokes_from_potential_alt_path");
  require_off_axis(ref, "stokes_from_potential_alt_path (ref)");
  // ref -> horizontal to (m.s, ref.t) -> vertical to m
  return stokes_leg_horizontal(f, ref.t, ref.s, m.s, quad_tol) +
         stokes_leg_vertical(f, m.s, ref.t, m.t, quad_tol);
}

ScalarField2 stokes_stream_profile(const MeridionalField& f, MeridianValue ref, double quad_tol,
                                   bool analytic_gradient) {
  ScalarField2 out;
  out.value = [f, ref, quad_tol](double x0, double rho) {
    return stokes_from_potential(f, {x0, rho}, ref, quad_tol);
  };
  if (analytic_gradient) {
    out.gradient = [f](double x0, double rho) -> std::array<double, 2> {
      const auto v = f.velocity({x0, rho});
      const double w = std::pow(rho, 1.0 - f.alpha());
      return {-w * v[1], w * v[0]};
    };
  }
  return out;
}

}  // namespace meridian
