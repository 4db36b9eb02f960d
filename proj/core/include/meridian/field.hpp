#ifndef MERIDIAN_FIELD_HPP
#define MERIDIAN_FIELD_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "meridian/holo.hpp"
#include "meridian/rq.hpp"

namespace meridian {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Meridian-plane velocity components and their first partials at one point.
struct FieldSample {
  double v0 = 0.0;
  double vrho = 0.0;
  double dv0_dx0 = 0.0;
  double dv0_drho = 0.0;
  double dvrho_dx0 = 0.0;
  double dvrho_drho = 0.0;
};

/// Closed-form eigenvalues of the meridional Jacobian.
struct Spectrum {
  double lambda0 = 0.0;
  double lambda1 = 0.0;  ///< (alpha-1)/2 * Vrho/rho + sqrt(radicand)
  double lambda2 = 0.0;  ///< (alpha-1)/2 * Vrho/rho - sqrt(radicand)
  double radicand = 0.0;
};

struct PrincipalInvariants {
  double i1 = 0.0;  ///< trace
  double i2 = 0.0;  ///< sum of principal 2x2 minors
  double i3 = 0.0;  ///< determinant
};

/// Potential profile g(x0, rho) in the meridian half-plane.
///
/// The default gradient/sample fall back to centered finite differences of
/// value(); sources with exact derivatives override them.
class PotentialProfile {
 public:
  virtual ~PotentialProfile() = default;
  virtual double value(double x0, double rho) const = 0;
  /// (dg/dx0, dg/drho) = (V0, Vrho).
  virtual std::array<double, 2> gradient(double x0, double rho) const;
  virtual FieldSample sample(double x0, double rho) const;
  virtual bool has_analytic_gradient() const { return false; }
};

/// Potential meridional field V = grad h for mass density rho^(-alpha):
/// V = (V0, (x1/rho) Vrho, (x2/rho) Vrho) with (V0, Vrho) the meridian-plane
/// gradient of the profile.
class MeridionalField {
 public:
  MeridionalField(double alpha, std::shared_ptr<const PotentialProfile> profile);

  double alpha() const { return alpha_; }
  const PotentialProfile& profile() const { return *profile_; }
  const std::shared_ptr<const PotentialProfile>& profile_ptr() const { return profile_; }

  double potential(MeridianValue m) const { return profile_->value(m.s, m.t); }
  /// (V0, Vrho) at a meridian point.
  std::array<double, 2> velocity(MeridianValue m) const { return profile_->gradient(m.s, m.t); }
  FieldSample sample(MeridianValue m) const { return profile_->sample(m.s, m.t); }

 private:
  double alpha_;
  std::shared_ptr<const PotentialProfile> profile_;
};

/// Field whose potential is the scalar part of a radially holomorphic G
/// (so alpha = 1); all partials come from the exact derivative tree.
MeridionalField make_holo_field(HoloExpr potential);
/// Same, but specified by the derivative F = G'; throws DomainError when F
/// has no primitive in the closed family.
MeridionalField make_holo_field_from_derivative(const HoloExpr& f);

/// Closed-form registered fields.
MeridionalField make_joukowski_field(double b, double gamma);
MeridionalField make_exponential_field(double beta, double a1, double a2);
/// g = c*x0 (uniform axial flow); an exact solution for every alpha.
MeridionalField make_uniform_field(double alpha, double c);

/// Lookup by name: "joukowski" {B, gamma}, "exponential" {beta, A1, A2},
/// "uniform" {c} (+ alpha).  Throws DomainError for unknown names or
/// missing/extra parameters.
MeridionalField make_registered_field(const std::string& name,
                                      const std::map<std::string, double>& params,
                                      std::optional<double> alpha = std::nullopt);

/// V at a 3-D point; AxisPointError on the axis.
Vec3 field_eval(const MeridionalField& f, const ReducedQuaternion& p);

/// The symmetric Jacobian of the meridional field, assembled exactly from the
/// meridian-plane sample (no 3-D differentiation of azimuth factors).
Mat3 field_jacobian(const MeridionalField& f, const ReducedQuaternion& p);

Spectrum spectrum(const MeridionalField& f, const ReducedQuaternion& p);
/// Meridian-plane form used by both spectrum() and the classifier.
Spectrum spectrum_from_sample(double alpha, const FieldSample& s, double rho);

PrincipalInvariants principal_invariants(const Mat3& j);

struct DegenerateResult {
  bool degenerate = false;
  bool vrho_zero = false;        ///< first condition V_rho = 0
  bool grad_condition = false;   ///< second condition on the V_rho partials
};

/// Tests the two independent degeneracy conditions of the meridional
/// Jacobian, each normalized by (1 + |Vrho/rho|^2 + |dVrho/dx0|^2 +
/// |dVrho/drho|^2) for a scale-free comparison against tol.
DegenerateResult degenerate_test(const MeridionalField& f, const ReducedQuaternion& p,
                                 double tol = 1e-9);

/// Scalar profile on the meridian half-plane for residual checks; gradient
/// may be empty, in which case finite differences of value are used.
struct ScalarField2 {
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> gradient;
};

/// Scalar potential on R^3 (h as a function of x0, x1, x2).
using ScalarField3 = std::function<double(double, double, double)>;

/// |(x1^2+x2^2) Lap h - alpha (x1 dh/dx1 + x2 dh/dx2)| by finite differences.
double continuity_residual(const MeridionalField& f, const ReducedQuaternion& p);
double continuity_residual(const ScalarField3& h, double alpha, const ReducedQuaternion& p);

/// |rho (g_x0x0 + g_rhorho) - (alpha-1) g_rho|.
double epd_residual(const ScalarField2& g, double alpha, MeridianValue m);

/// |rho (gh_x0x0 + gh_rhorho) + (alpha-1) gh_rho| (stream-function equation).
double stokes_residual(const ScalarField2& gh, double alpha, MeridianValue m);

/// |x2 dh/dx1 - x1 dh/dx2|; zero iff h is meridional at p.
double meridional_criterion_residual(const ScalarField3& h, const ReducedQuaternion& p);

/// |Lap h - (alpha1/x1) dh/dx1 - (alpha2/x2) dh/dx2| on the open quadrant.
double bihyperbolic_residual(const ScalarField3& h, double alpha1, double alpha2,
                             const ReducedQuaternion& p);

/// Max residual of the first-order biplanar system for V = grad h with
/// density x1^(-alpha1) x2^(-alpha2): the weighted divergence equation plus
/// the three curl components.
double biplanar_system_residual(const ScalarField3& h, double alpha1, double alpha2,
                                const ReducedQuaternion& p);

/// Dot product of the meridian-plane gradients of g and gh.
double stream_orthogonality(const ScalarField2& g, const ScalarField2& gh, MeridianValue m);

namespace fd {
/// Scaled steps: 1e-5 max(1,|x|) for first, 1e-4 max(1,|x|) for second
/// derivatives.
double step1(double x);
double step2(double x);
double d1(const std::function<double(double)>& f, double x, double step);
double d2(const std::function<double(double)>& f, double x, double step);
}  // namespace fd

}  // namespace meridian

#endif  // MERIDIAN_FIELD_HPP
