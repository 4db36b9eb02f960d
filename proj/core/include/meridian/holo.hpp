#ifndef MERIDIAN_HOLO_HPP
#define MERIDIAN_HOLO_HPP

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "meridian/rq.hpp"

namespace meridian {

/// Symbolic radially holomorphic function G = g + I ghat built from the
/// elementary closed family: integer powers, e^(beta x), cos, sin, ln,
/// the Joukowski transform B(x + gamma^2 x^-1), real scalings, the reversal
/// I*G, and finite sums.  Expressions are immutable; copies share nodes.
class HoloExpr {
 public:
  struct Node;

  static HoloExpr power(int n);
  static HoloExpr exponential(double beta);
  static HoloExpr cosine();
  static HoloExpr sine();
  static HoloExpr logarithm();
  static HoloExpr joukowski(double b, double gamma);
  static HoloExpr scale(double c, HoloExpr inner);
  static HoloExpr reverse(HoloExpr inner);
  static HoloExpr sum(std::vector<HoloExpr> parts);
  /// Empty sum: evaluates to 0.
  static HoloExpr zero();
  /// Constant c = Scale(c, Power(0)).
  static HoloExpr constant(double c);

  const Node& node() const { return *node_; }

 private:
  explicit HoloExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct HoloPower {
  int n;
};
struct HoloExp {
  double beta;
};
struct HoloCos {};
struct HoloSin {};
struct HoloLog {};
struct HoloJoukowski {
  double b;
  double gamma;
};
struct HoloScale {
  double c;
  HoloExpr inner;
};
struct HoloReverse {
  HoloExpr inner;
};
struct HoloSum {
  std::vector<HoloExpr> parts;
};

struct HoloExpr::Node {
  std::variant<HoloPower, HoloExp, HoloCos, HoloSin, HoloLog, HoloJoukowski, HoloScale,
               HoloReverse, HoloSum>
      v;
};

/// Evaluate at a meridian point m = x0 + I rho (rho = m.t >= 0).
/// Log requires m.t > 0; negative powers and Joukowski require m != 0.
MeridianValue holo_eval(const HoloExpr& e, MeridianValue m);

/// Exact derivative G' = (1/2)(d/dx0 - I d/drho) G from the elementary table.
HoloExpr holo_derivative(const HoloExpr& e);

/// Theta = I G, the function reversed with respect to G.
HoloExpr holo_reverse(HoloExpr e);

/// Antiderivative within the closed family; nullopt where the family has no
/// member (notably the primitive of ln).
std::optional<HoloExpr> holo_primitive(const HoloExpr& e);

/// |(1/2)(d/dx0 + I d/drho) G| approximated by centered differences of the
/// evaluator; vanishes (to O(step^2)) exactly on radially holomorphic G.
double radial_cr_residual(const HoloExpr& e, MeridianValue m, double step);

/// Meridional field components (V0, Vrho) of the anti-holomorphic conjugate:
/// F = u0 + I u_rho gives (V0, Vrho) = (u0, -u_rho).
std::pair<double, double> anti_holo_components(const HoloExpr& e, MeridianValue m);

}  // namespace meridian

#endif  // MERIDIAN_HOLO_HPP
