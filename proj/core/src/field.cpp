#include "meridian/field.hpp"

#include <cmath>

namespace meridian {

namespace fd {

double step1(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }
double step2(double x) { return 1e-4 * std::max(1.0, std::abs(x)); }

double d1(const std::function<double(double)>& f, double x, double step) {
  return (f(x + step) - f(x - step)) / (2.0 * step);
}

double d2(const std::function<double(double)>& f, double x, double step) {
  return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
}

}  // namespace fd

std::array<double, 2> PotentialProfile::gradient(double x0, double rho) const {
  const double h0 = fd::step1(x0);
  const double hr = fd::step1(rho);
  return {(value(x0 + h0, rho) - value(x0 - h0, rho)) / (2.0 * h0),
          (value(x0, rho + hr) - value(x0, rho - hr)) / (2.0 * hr)};
}

FieldSample PotentialProfile::sample(double x0, double rho) const {
  const double h0 = fd::step1(x0);
  const double hr = fd::step1(rho);
  const auto gp0 = gradient(x0 + h0, rho);
  const auto gm0 = gradient(x0 - h0, rho);
  const auto gpr = gradient(x0, rho + hr);
  const auto gmr = gradient(x0, rho - hr);
  const auto g = gradient(x0, rho);
  FieldSample s;
  s.v0 = g[0];
  s.vrho = g[1];
  s.dv0_dx0 = (gp0[0] - gm0[0]) / (2.0 * h0);
  s.dvrho_dx0 = (gp0[1] - gm0[1]) / (2.0 * h0);
  s.dv0_drho = (gpr[0] - gmr[0]) / (2.0 * hr);
  s.dvrho_drho = (gpr[1] - gmr[1]) / (2.0 * hr);
  return s;
}

MeridionalField::MeridionalField(double alpha, std::shared_ptr<const PotentialProfile> profile)
    : alpha_(alpha), profile_(std::move(profile)) {
  if (!profile_) {
    throw DomainError("MeridionalField: null profile");
  }
}

namespace {

/// Profile backed by a radially holomorphic potential G: the meridian
/// velocity is the derivative tree F = G', its partials come from F' = G''.
/// For F = u0 + I u_rho the Cauchy-Riemann structure gives
///   V0 = u0, Vrho = -u_rho,
///   dV0/dx0 = Re F', dVrho/dx0 = dV0/drho = -Im F', dVrho/drho = -Re F'.
class HoloProfile final : public PotentialProfile {
 public:
  explicit HoloProfile(HoloExpr g)
      : g_(std::move(g)), f_(holo_derivative(g_)), fp_(holo_derivative(f_)) {}

  double value(double x0, double rho) const override { return holo_eval(g_, {x0, rho}).s; }

  std::array<double, 2> gradient(double x0, double rho) const override {
    const MeridianValue f = holo_eval(f_, {x0, rho});
    return {f.s, -f.t};
  }

  FieldSample sample(double x0, double rho) const override {
    const MeridianValue f = holo_eval(f_, {x0, rho});
    const MeridianValue fp = holo_eval(fp_, {x0, rho});
    FieldSample s;
    s.v0 = f.s;
    s.vrho = -f.t;
    s.dv0_dx0 = fp.s;
    s.dv0_drho = -fp.t;
    s.dvrho_dx0 = -fp.t;
    s.dvrho_drho = -fp.s;
    return s;
  }

  bool has_analytic_gradient() const override { return true; }

  const HoloExpr& potential_expr() const { return g_; }

 private:
  HoloExpr g_;
  HoloExpr f_;
  HoloExpr fp_;
};

/// g = B(x0 + gamma^2 x0 / (x0^2 + rho^2)); scalar part of B(x + gamma^2/x).
class JoukowskiProfile final : public PotentialProfile {
 public:
  JoukowskiProfile(double b, double gamma) : b_(b), g2_(gamma * gamma) {}

  double value(double x0, double rho) const override {
    return b_ * x0 * (1.0 + g2_ / (x0 * x0 + rho * rho));
  }

  std::array<double, 2> gradient(double x0, double rho) const override {
    const double r2 = x0 * x0 + rho * rho;
    const double r4 = r2 * r2;
    return {b_ - b_ * g2_ * (x0 * x0 - rho * rho) / r4, -2.0 * b_ * g2_ * x0 * rho / r4};
  }

  FieldSample sample(double x0, double rho) const override {
    const double r2 = x0 * x0 + rho * rho;
    const double r4 = r2 * r2;
    const double r6 = r4 * r2;
    const auto g = gradient(x0, rho);
    FieldSample s;
    s.v0 = g[0];
    s.vrho = g[1];
    s.dvrho_dx0 = 2.0 * b_ * g2_ * rho * (3.0 * x0 * x0 - rho * rho) / r6;
    s.dvrho_drho = -2.0 * b_ * g2_ * x0 * (x0 * x0 - 3.0 * rho * rho) / r6;
    s.dv0_dx0 = -s.dvrho_drho;  // harmonic conjugate structure at alpha = 1
    s.dv0_drho = s.dvrho_dx0;
    return s;
  }

  bool has_analytic_gradient() const override { return true; }

 private:
  double b_;
  double g2_;
};

/// g = e^(beta x0) [-A1 sin(beta rho) + A2 cos(beta rho)].
class ExponentialProfile final : public PotentialProfile {
 public:
  ExponentialProfile(double beta, double a1, double a2) : beta_(beta), a1_(a1), a2_(a2) {}

  double value(double x0, double rho) const override {
    return std::exp(beta_ * x0) * (-a1_ * std::sin(beta_ * rho) + a2_ * std::cos(beta_ * rho));
  }

  std::array<double, 2> gradient(double x0, double rho) const override {
    const double e = std::exp(beta_ * x0);
    const double sn = std::sin(beta_ * rho);
    const double cs = std::cos(beta_ * rho);
    return {beta_ * e * (-a1_ * sn + a2_ * cs), -beta_ * e * (a1_ * cs + a2_ * sn)};
  }

  FieldSample sample(double x0, double rho) const override {
    const double e = std::exp(beta_ * x0);
    const double sn = std::sin(beta_ * rho);
    const double cs = std::cos(beta_ * rho);
    const double b2e = beta_ * beta_ * e;
    FieldSample s;
    s.v0 = beta_ * e * (-a1_ * sn + a2_ * cs);
    s.vrho = -beta_ * e * (a1_ * cs + a2_ * sn);
    s.dv0_dx0 = b2e * (-a1_ * sn + a2_ * cs);
    s.dv0_drho = b2e * (-a1_ * cs - a2_ * sn);
    s.dvrho_dx0 = -b2e * (a1_ * cs + a2_ * sn);
    s.dvrho_drho = b2e * (a1_ * sn - a2_ * cs);
    return s;
  }

  bool has_analytic_gradient() const override { return true; }

 private:
  double beta_;
  double a1_;
  double a2_;
};

class UniformProfile final : public PotentialProfile {
 public:
  explicit UniformProfile(double c) : c_(c) {}
  double value(double x0, double /*rho*/) const override { return c_ * x0; }
  std::array<double, 2> gradient(double, double) const override { return {c_, 0.0}; }
  FieldSample sample(double, double) const override {
    FieldSample s;
    s.v0 = c_;
    return s;
  }
  bool has_analytic_gradient() const override { return true; }

 private:
  double c_;
};

void require_params(const std::string& name, const std::map<std::string, double>& params,
                    std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (params.find(k) == params.end()) {
      throw DomainError("registered field '" + name + "': missing parameter '" + k + "'");
    }
  }
  if (params.size() != keys.size()) {
    throw DomainError("registered field '" + name + "': unexpected extra parameters");
  }
}

MeridianValue project(const ReducedQuaternion& p, Azimuth& az) {
  const auto dec = meridian_of(p);
  az = dec.az;
  return dec.m;
}

}  // namespace

MeridionalField make_holo_field(HoloExpr potential) {
  return MeridionalField(1.0, std::make_shared<HoloProfile>(std::move(potential)));
}

MeridionalField make_holo_field_from_derivative(const HoloExpr& f) {
  auto g = holo_primitive(f);
  if (!g) {
    throw DomainError("make_holo_field_from_derivative: expression has no primitive in the closed family");
  }
  return make_holo_field(std::move(*g));
}

MeridionalField make_joukowski_field(double b, double gamma) {
  return MeridionalField(1.0, std::make_shared<JoukowskiProfile>(b, gamma));
}

MeridionalField make_exponential_field(double beta, double a1, double a2) {
  if (!(beta > 0.0)) {
    throw DomainError("exponential field: beta must be positive");
  }
  return MeridionalField(1.0, std::make_shared<ExponentialProfile>(beta, a1, a2));
}

MeridionalField make_uniform_field(double alpha, double c) {
  return MeridionalField(alpha, std::make_shared<UniformProfile>(c));
}

MeridionalField make_registered_field(const std::string& name,
                                      const std::map<std::string, double>& params,
                                      std::optional<double> alpha) {
  if (name == "joukowski") {
    require_params(name, params, {"B", "gamma"});
    if (alpha && *alpha != 1.0) {
      throw DomainError("registered field 'joukowski' requires alpha = 1");
    }
    return make_joukowski_field(params.at("B"), params.at("gamma"));
  }
  if (name == "exponential") {
    require_params(name, params, {"beta", "A1", "A2"});
    if (alpha && *alpha != 1.0) {
      throw DomainError("registered field 'exponential' requires alpha = 1");
    }
    return make_exponential_field(params.at("beta"), params.at("A1"), params.at("A2"));
  }
  if (name == "uniform") {
    require_params(name, params, {"c"});
    return make_uniform_field(alpha.value_or(1.0), params.at("c"));
  }
  throw DomainError("unknown registered field '" + name + "'");
}

Vec3 field_eval(const MeridionalField& f, const ReducedQuaternion& p) {
  Azimuth az;
  const MeridianValue m = project(p, az);
  const auto v = f.velocity(m);
  return {v[0], v[1] * az.a1, v[1] * az.a2};
}

Mat3 field_jacobian(const MeridionalField& f, const ReducedQuaternion& p) {
  Azimuth az;
  const MeridianValue m = project(p, az);
  const FieldSample s = f.sample(m);
  const double rho = m.t;
  const double lam0 = s.vrho / rho;
  const double c1 = az.a1, c2 = az.a2;

  Mat3 j{};
  j[0][0] = -s.dvrho_drho + (f.alpha() - 1.0) * lam0;
  j[0][1] = s.dvrho_dx0 * c1;
  j[0][2] = s.dvrho_dx0 * c2;
  j[1][0] = j[0][1];
  j[1][1] = s.dvrho_drho * c1 * c1 + lam0 * c2 * c2;
  j[1][2] = (s.dvrho_drho - lam0) * c1 * c2;
  j[2][0] = j[0][2];
  j[2][1] = j[1][2];
  j[2][2] = s.dvrho_drho * c2 * c2 + lam0 * c1 * c1;
  return j;
}

Spectrum spectrum_from_sample(double alpha, const FieldSample& s, double rho) {
  const double lam0 = s.vrho / rho;
  const double half = 0.5 * (alpha - 1.0) * lam0;
  const double a = s.dvrho_dx0;
  const double b = half - s.dvrho_drho;
  Spectrum sp;
  sp.radicand = a * a + b * b;
  const double root = std::sqrt(sp.radicand);
  sp.lambda0 = lam0;
  sp.lambda1 = half + root;
  sp.lambda2 = half - root;
  return sp;
}

Spectrum spectrum(const MeridionalField& f, const ReducedQuaternion& p) {
  Azimuth az;
  const MeridianValue m = project(p, az);
  return spectrum_from_sample(f.alpha(), f.sample(m), m.t);
}

PrincipalInvariants principal_invariants(const Mat3& j) {
  PrincipalInvariants inv;
  inv.i1 = j[0][0] + j[1][1] + j[2][2];
  inv.i2 = j[0][0] * j[1][1] + j[0][0] * j[2][2] + j[1][1] * j[2][2] - j[0][1] * j[0][1] -
           j[0][2] * j[0][2] - j[1][2] * j[1][2];
  inv.i3 = j[0][0] * j[1][1] * j[2][2] + 2.0 * j[0][1] * j[0][2] * j[1][2] -
           j[0][0] * j[1][2] * j[1][2] - j[1][1] * j[0][2] * j[0][2] - j[2][2] * j[0][1] * j[0][1];
  return inv;
}

DegenerateResult degenerate_test(const MeridionalField& f, const ReducedQuaternion& p, double tol) {
  Azimuth az;
  const MeridianValue m = project(p, az);
  const FieldSample s = f.sample(m);
  const double lam0 = s.vrho / m.t;
  const double scale =
      1.0 + lam0 * lam0 + s.dvrho_dx0 * s.dvrho_dx0 + s.dvrho_drho * s.dvrho_drho;
  const double cond1 = s.vrho;
  const double cond2 = s.dvrho_dx0 * s.dvrho_dx0 + s.dvrho_drho * s.dvrho_drho -
                       (f.alpha() - 1.0) * lam0 * s.dvrho_drho;
  DegenerateResult r;
  r.vrho_zero = std::abs(cond1) <= tol * scale;
  r.grad_condition = std::abs(cond2) <= tol * scale;
  r.degenerate = r.vrho_zero || r.grad_condition;
  return r;
}

namespace {

double laplacian3(const ScalarField3& h, double x0, double x1, double x2) {
  const double s0 = fd::step2(x0), s1 = fd::step2(x1), s2 = fd::step2(x2);
  const double c = h(x0, x1, x2);
  const double d00 = (h(x0 + s0, x1, x2) - 2.0 * c + h(x0 - s0, x1, x2)) / (s0 * s0);
  const double d11 = (h(x0, x1 + s1, x2) - 2.0 * c + h(x0, x1 - s1, x2)) / (s1 * s1);
  const double d22 = (h(x0, x1, x2 + s2) - 2.0 * c + h(x0, x1, x2 - s2)) / (s2 * s2);
  return d00 + d11 + d22;
}

std::array<double, 3> gradient3(const ScalarField3& h, double x0, double x1, double x2) {
  const double s0 = fd::step1(x0), s1 = fd::step1(x1), s2 = fd::step1(x2);
  return {(h(x0 + s0, x1, x2) - h(x0 - s0, x1, x2)) / (2.0 * s0),
          (h(x0, x1 + s1, x2) - h(x0, x1 - s1, x2)) / (2.0 * s1),
          (h(x0, x1, x2 + s2) - h(x0, x1, x2 - s2)) / (2.0 * s2)};
}

/// Second derivatives of a meridian profile: one FD level on the analytic
/// gradient when the profile has one (step 1e-5: single differencing is
/// truncation-limited), plain second differences at 1e-4 otherwise (the
/// larger step balances the eps/h^2 rounding noise).
void profile_second_partials(const ScalarField2& g, double x0, double rho, double& g00,
                             double& grr, double& gr) {
  if (g.gradient) {
    const double s0 = fd::step1(x0);
    const double sr = fd::step1(rho);
    g00 = (g.gradient(x0 + s0, rho)[0] - g.gradient(x0 - s0, rho)[0]) / (2.0 * s0);
    grr = (g.gradient(x0, rho + sr)[1] - g.gradient(x0, rho - sr)[1]) / (2.0 * sr);
    gr = g.gradient(x0, rho)[1];
    return;
  }
  const double s0 = fd::step2(x0);
  const double sr = fd::step2(rho);
  const double c = g.value(x0, rho);
  g00 = (g.value(x0 + s0, rho) - 2.0 * c + g.value(x0 - s0, rho)) / (s0 * s0);
  grr = (g.value(x0, rho + sr) - 2.0 * c + g.value(x0, rho - sr)) / (sr * sr);
  gr = (g.value(x0, rho + sr) - g.value(x0, rho - sr)) / (2.0 * sr);
}

}  // namespace

double continuity_residual(const ScalarField3& h, double alpha, const ReducedQuaternion& p) {
  if (p.rho() == 0.0) {
    throw AxisPointError("continuity_residual: rho = 0");
  }
  const double lap = laplacian3(h, p.x0, p.x1, p.x2);
  const auto grad = gradient3(h, p.x0, p.x1, p.x2);
  const double rho2 = p.x1 * p.x1 + p.x2 * p.x2;
  return std::abs(rho2 * lap - alpha * (p.x1 * grad[1] + p.x2 * grad[2]));
}

double continuity_residual(const MeridionalField& f, const ReducedQuaternion& p) {
  const auto profile = f.profile_ptr();
  const ScalarField3 h = [profile](double x0, double x1, double x2) {
    return profile->value(x0, std::hypot(x1, x2));
  };
  return continuity_residual(h, f.alpha(), p);
}

double epd_residual(const ScalarField2& g, double alpha, MeridianValue m) {
  if (!(m.t > 0.0)) {
    throw AxisPointError("epd_residual: rho must be positive");
  }
  double g00, grr, gr;
  profile_second_partials(g, m.s, m.t, g00, grr, gr);
  return std::abs(m.t * (g00 + grr) - (alpha - 1.0) * gr);
}

double stokes_residual(const ScalarField2& gh, double alpha, MeridianValue m) {
  if (!(m.t > 0.0)) {
    throw AxisPointError("stokes_residual: rho must be positive");
  }
  double g00, grr, gr;
  profile_second_partials(gh, m.s, m.t, g00, grr, gr);
  return std::abs(m.t * (g00 + grr) + (alpha - 1.0) * gr);
}

double meridional_criterion_residual(const ScalarField3& h, const ReducedQuaternion& p) {
  if (p.rho() == 0.0) {
    throw AxisPointError("meridional_criterion_residual: rho = 0");
  }
  const auto grad = gradient3(h, p.x0, p.x1, p.x2);
  return std::abs(p.x2 * grad[1] - p.x1 * grad[2]);
}

double bihyperbolic_residual(const ScalarField3& h, double alpha1, double alpha2,
                             const ReducedQuaternion& p) {
  if (!(p.x1 > 0.0) || !(p.x2 > 0.0)) {
    throw QuadrantViolationError();
  }
  const double lap = laplacian3(h, p.x0, p.x1, p.x2);
  const auto grad = gradient3(h, p.x0, p.x1, p.x2);
  return std::abs(lap - (alpha1 / p.x1) * grad[1] - (alpha2 / p.x2) * grad[2]);
}

double biplanar_system_residual(const ScalarField3& h, double alpha1, double alpha2,
                                const ReducedQuaternion& p) {
  if (!(p.x1 > 0.0) || !(p.x2 > 0.0)) {
    throw QuadrantViolationError();
  }
  // V = grad h by centered differences, then the first-order system residuals
  // for density x1^(-alpha1) x2^(-alpha2).
  const double s0 = fd::step2(p.x0), s1 = fd::step2(p.x1), s2 = fd::step2(p.x2);
  auto v = [&](double a, double b, double c) { return gradient3(h, a, b, c); };

  const auto vp0 = v(p.x0 + s0, p.x1, p.x2), vm0 = v(p.x0 - s0, p.x1, p.x2);
  const auto vp1 = v(p.x0, p.x1 + s1, p.x2), vm1 = v(p.x0, p.x1 - s1, p.x2);
  const auto vp2 = v(p.x0, p.x1, p.x2 + s2), vm2 = v(p.x0, p.x1, p.x2 - s2);
  const auto vc = v(p.x0, p.x1, p.x2);

  const double dv0_d0 = (vp0[0] - vm0[0]) / (2.0 * s0);
  const double dv1_d1 = (vp1[1] - vm1[1]) / (2.0 * s1);
  const double dv2_d2 = (vp2[2] - vm2[2]) / (2.0 * s2);
  const double div_part =
      dv0_d0 + dv1_d1 + dv2_d2 - (alpha1 / p.x1) * vc[1] - (alpha2 / p.x2) * vc[2];

  const double curl0 = (vp1[2] - vm1[2]) / (2.0 * s1) - (vp2[1] - vm2[1]) / (2.0 * s2);
  const double curl1 = (vp2[0] - vm2[0]) / (2.0 * s2) - (vp0[2] - vm0[2]) / (2.0 * s0);
  const double curl2 = (vp0[1] - vm0[1]) / (2.0 * s0) - (vp1[0] - vm1[0]) / (2.0 * s1);

  return std::max({std::abs(div_part), std::abs(curl0), std::abs(curl1), std::abs(curl2)});
}

double stream_orthogonality(const ScalarField2& g, const ScalarField2& gh, MeridianValue m) {
  if (!(m.t > 0.0)) {
    throw AxisPointError("stream_orthogonality: rho must be positive");
  }
  auto grad_of = [&](const ScalarField2& f) -> std::array<double, 2> {
    if (f.gradient) return f.gradient(m.s, m.t);
    const double s0 = fd::step1(m.s), sr = fd::step1(m.t);
    return {(f.value(m.s + s0, m.t) - f.value(m.s - s0, m.t)) / (2.0 * s0),
            (f.value(m.s, m.t + sr) - f.value(m.s, m.t - sr)) / (2.0 * sr)};
  };
  const auto a = grad_of(g);
  const auto b = grad_of(gh);
  return a[0] * b[0] + a[1] * b[1];
}

}  // namespace meridian
