#include "meridian/holo.hpp"

#include <cmath>
#include <string>

namespace meridian {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// x^n in polar form r^n (cos n*phi + I sin n*phi), phi = angle of (s, t)
/// in [0, pi] for t >= 0.  On the axis (t = 0) nonnegative powers reduce to
/// the real power of s.
MeridianValue power_eval(int n, MeridianValue m) {
  if (n == 0) return {1.0, 0.0};
  if (m.t == 0.0) {
    if (n > 0 || m.s != 0.0) {
      return {std::pow(m.s, n), 0.0};
    }
    throw DomainError("holo_eval: x^" + std::to_string(n) + " undefined at x = 0");
  }
  const double r = m.norm();
  const double phi = std::atan2(m.t, m.s);
  const double rn = std::pow(r, n);
  return {rn * std::cos(n * phi), rn * std::sin(n * phi)};
}

}  // namespace

HoloExpr HoloExpr::power(int n) { return HoloExpr(std::make_shared<const Node>(Node{HoloPower{n}})); }
HoloExpr HoloExpr::exponential(double beta) {
  return HoloExpr(std::make_shared<const Node>(Node{HoloExp{beta}}));
}
HoloExpr HoloExpr::cosine() { return HoloExpr(std::make_shared<const Node>(Node{HoloCos{}})); }
HoloExpr HoloExpr::sine() { return HoloExpr(std::make_shared<const Node>(Node{HoloSin{}})); }
HoloExpr HoloExpr::logarithm() { return HoloExpr(std::make_shared<const Node>(Node{HoloLog{}})); }
HoloExpr HoloExpr::joukowski(double b, double gamma) {
  return HoloExpr(std::make_shared<const Node>(Node{HoloJoukowski{b, gamma}}));
}
HoloExpr HoloExpr::scale(double c, HoloExpr inner) {
  return HoloExpr(std::make_shared<const Node>(Node{HoloScale{c, std::move(inner)}}));
}
HoloExpr HoloExpr::reverse(HoloExpr inner) {
  return HoloExpr(std::make_shared<const Node>(Node{HoloReverse{std::move(inner)}}));
}
HoloExpr HoloExpr::sum(std::vector<HoloExpr> parts) {
  return HoloExpr(std::make_shared<const Node>(Node{HoloSum{std::move(parts)}}));
}
HoloExpr HoloExpr::zero() { return sum({}); }
HoloExpr HoloExpr::constant(double c) { return scale(c, power(0)); }

MeridianValue holo_eval(const HoloExpr& e, MeridianValue m) {
  return std::visit(
      Overloaded{
          [&](const HoloPower& p) { return power_eval(p.n, m); },
          [&](const HoloExp& x) {
            const double amp = std::exp(x.beta * m.s);
            return MeridianValue{amp * std::cos(x.beta * m.t), amp * std::sin(x.beta * m.t)};
          },
          [&](const HoloCos&) {
            return MeridianValue{std::cos(m.s) * std::cosh(m.t), -std::sin(m.s) * std::sinh(m.t)};
          },
          [&](const HoloSin&) {
            return MeridianValue{std::sin(m.s) * std::cosh(m.t), std::cos(m.s) * std::sinh(m.t)};
          },
          [&](const HoloLog&) {
            if (!(m.t > 0.0)) {
              throw DomainError("holo_eval: ln x needs rho > 0 (phi in (0, pi))");
            }
            return MeridianValue{std::log(m.norm()), std::atan2(m.t, m.s)};
          },
          [&](const HoloJoukowski& j) {
            if (m.norm_squared() == 0.0) {
              throw DomainError("holo_eval: Joukowski transform undefined at x = 0");
            }
            const MeridianValue inv = inv_meridian(m);
            return MeridianValue{j.b * (m.s + j.gamma * j.gamma * inv.s),
                                 j.b * (m.t + j.gamma * j.gamma * inv.t)};
          },
          [&](const HoloScale& s) { return s.c * holo_eval(s.inner, m); },
          [&](const HoloReverse& r) {
            const MeridianValue v = holo_eval(r.inner, m);
            return MeridianValue{-v.t, v.s};
          },
          [&](const HoloSum& s) {
            MeridianValue acc{0.0, 0.0};
            for (const auto& part : s.parts) acc = acc + holo_eval(part, m);
            return acc;
          },
      },
      e.node().v);
}

HoloExpr holo_derivative(const HoloExpr& e) {
  return std::visit(
      Overloaded{
          [&](const HoloPower& p) {
            if (p.n == 0) return HoloExpr::zero();
            return HoloExpr::scale(p.n, HoloExpr::power(p.n - 1));
          },
          [&](const HoloExp& x) { return HoloExpr::scale(x.beta, HoloExpr::exponential(x.beta)); },
          [&](const HoloCos&) { return HoloExpr::scale(-1.0, HoloExpr::sine()); },
          [&](const HoloSin&) { return HoloExpr::cosine(); },
          [&](const HoloLog&) { return HoloExpr::power(-1); },
          [&](const HoloJoukowski& j) {
            // [B(x + gamma^2 x^-1)]' = B(1 - gamma^2 x^-2)
            return HoloExpr::scale(
                j.b, HoloExpr::sum({HoloExpr::power(0),
                                    HoloExpr::scale(-j.gamma * j.gamma, HoloExpr::power(-2))}));
          },
          [&](const HoloScale& s) { return HoloExpr::scale(s.c, holo_derivative(s.inner)); },
          [&](const HoloReverse& r) { return HoloExpr::reverse(holo_derivative(r.inner)); },
          [&](const HoloSum& s) {
            std::vector<HoloExpr> parts;
            parts.reserve(s.parts.size());
            for (const auto& part : s.parts) parts.push_back(holo_derivative(part));
            return HoloExpr::sum(std::move(parts));
          },
      },
      e.node().v);
}

HoloExpr holo_reverse(HoloExpr e) { return HoloExpr::reverse(std::move(e)); }

std::optional<HoloExpr> holo_primitive(const HoloExpr& e) {
  return std::visit(
      Overloaded{
          [&](const HoloPower& p) -> std::optional<HoloExpr> {
            if (p.n == -1) return HoloExpr::logarithm();
            return HoloExpr::scale(1.0 / (p.n + 1.0), HoloExpr::power(p.n + 1));
          },
          [&](const HoloExp& x) -> std::optional<HoloExpr> {
            if (x.beta == 0.0) return HoloExpr::power(1);  // e^(0 x) = 1
            return HoloExpr::scale(1.0 / x.beta, HoloExpr::exponential(x.beta));
          },
          [&](const HoloCos&) -> std::optional<HoloExpr> { return HoloExpr::sine(); },
          [&](const HoloSin&) -> std::optional<HoloExpr> {
            return HoloExpr::scale(-1.0, HoloExpr::cosine());
          },
          [&](const HoloLog&) -> std::optional<HoloExpr> { return std::nullopt; },
          [&](const HoloJoukowski& j) -> std::optional<HoloExpr> {
            // integral of B(x + gamma^2/x) = B x^2/2 + B gamma^2 ln x
            return HoloExpr::sum({HoloExpr::scale(0.5 * j.b, HoloExpr::power(2)),
                                  HoloExpr::scale(j.b * j.gamma * j.gamma, HoloExpr::logarithm())});
          },
          [&](const HoloScale& s) -> std::optional<HoloExpr> {
            auto inner = holo_primitive(s.inner);
            if (!inner) return std::nullopt;
            return HoloExpr::scale(s.c, std::move(*inner));
          },
          [&](const HoloReverse& r) -> std::optional<HoloExpr> {
            auto inner = holo_primitive(r.inner);
            if (!inner) return std::nullopt;
            return HoloExpr::reverse(std::move(*inner));
          },
          [&](const HoloSum& s) -> std::optional<HoloExpr> {
            std::vector<HoloExpr> parts;
            parts.reserve(s.parts.size());
            for (const auto& part : s.parts) {
              auto inner = holo_primitive(part);
              if (!inner) return std::nullopt;
              parts.push_back(std::move(*inner));
            }
            return HoloExpr::sum(std::move(parts));
          },
      },
      e.node().v);
}

double radial_cr_residual(const HoloExpr& e, MeridianValue m, double step) {
  if (!(step > 0.0)) {
    throw DomainError("radial_cr_residual: step must be positive");
  }
  const MeridianValue gs_p = holo_eval(e, {m.s + step, m.t});
  const MeridianValue gs_m = holo_eval(e, {m.s - step, m.t});
  const MeridianValue gt_p = holo_eval(e, {m.s, m.t + step});
  const MeridianValue gt_m = holo_eval(e, {m.s, m.t - step});
  const MeridianValue d_s = (1.0 / (2.0 * step)) * (gs_p - gs_m);
  const MeridianValue d_t = (1.0 / (2.0 * step)) * (gt_p - gt_m);
  // (1/2)(d/dx0 + I d/drho) G
  const MeridianValue bar = 0.5 * (d_s + MeridianValue{-d_t.t, d_t.s});
  return bar.norm();
}

std::pair<double, double> anti_holo_components(const HoloExpr& e, MeridianValue m) {
  const MeridianValue f = holo_eval(e, m);
  return {f.s, -f.t};
}

}  // namespace meridian
