#include <cmath>
#include <random>

#include "doctest.h"
#include "meridian/dynamics.hpp"
#include "meridian/field.hpp"
#include "meridian/series.hpp"
#include "oracles.hpp"

using namespace meridian;

namespace {

MeridionalField linear_field() {
  // F = x, G = x^2/2, h = (x0^2 - rho^2)/2: V0 = x0, Vrho = -rho
  return make_holo_field(HoloExpr::scale(0.5, HoloExpr::power(2)));
}

MeridionalField xsq_plus_c_field(double c) {
  return make_holo_field_from_derivative(
      HoloExpr::sum({HoloExpr::power(2), HoloExpr::constant(c)}));
}

}  // namespace

TEST_CASE("pathline of the linear field") {
  const GradientSystem sys{linear_field()};
  const auto traj = integrate_pathline(sys, {1.0, 0.5, 0.0}, std::log(2.0), 1e-10);
  REQUIRE(!traj.points.empty());
  const Vec3 end = traj.points.back();
  CHECK(traj.termination == Termination::Completed);
  CHECK(end[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(end[1] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(std::abs(end[2]) < 1e-12);
}

TEST_CASE("pathline flags axis approach") {
  // start on x0 = 0: V0 = 0, rho decays toward the axis
  const GradientSystem sys{linear_field()};
  const auto traj = integrate_pathline(sys, {0.0, 1.0, 0.0}, 50.0, 1e-10);
  CHECK(traj.termination == Termination::AxisReached);
  CHECK(traj.points.back()[1] < 1e-5);
}

TEST_CASE("tiny horizon returns the start point") {
  const GradientSystem sys{xsq_plus_c_field(1.0)};
  const auto traj = integrate_pathline(sys, {0.7, 0.4, 0.3}, 1e-13, 1e-10);
  const Vec3 end = traj.points.back();
  CHECK(end[0] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(end[1] == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(end[2] == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("h is nondecreasing along pathlines") {
  for (const auto& start : {Vec3{1.0, 0.5, 0.0}, Vec3{-0.5, 0.8, 0.6}, Vec3{0.3, 0.0, 1.2}}) {
    const GradientSystem sys{xsq_plus_c_field(1.0)};
    const auto traj = integrate_pathline(sys, start, 1.0, 1e-9);
    for (size_t i = 1; i < traj.h_values.size(); ++i) {
      CHECK(traj.h_values[i] >= traj.h_values[i - 1] - 1e-9);
    }
  }
}

TEST_CASE("invalid integration inputs") {
  const GradientSystem sys{linear_field()};
  CHECK_THROWS_AS(integrate_pathline(sys, {1.0, 0.5, 0.0}, -1.0, 1e-10), DomainError);
  CHECK_THROWS_AS(integrate_pathline(sys, {1.0, 0.0, 0.0}, 1.0, 1e-10), AxisPointError);
}

TEST_CASE("streamline of the uniform field") {
  const auto f = make_uniform_field(1.0, 1.0);  // V = (1, 0, 0)
  const auto traj = trace_streamline(f, {0.0, 1.0, 0.0}, 2.0, 1e-10);
  const Vec3 end = traj.points.back();
  CHECK(end[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(end[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(end[2]) < 1e-14);
}

TEST_CASE("streamline and pathline share the point set for the linear field") {
  const auto f = linear_field();
  const GradientSystem sys{f};
  const double tol = 1e-10;
  const auto path = integrate_pathline(sys, {1.0, 0.5, 0.0}, std::log(2.0), tol);
  const auto stream = trace_streamline(f, {1.0, 0.5, 0.0}, 1.2, tol);
  // Hausdorff-style: every streamline point lies near the exact invariant
  // curve x0 * rho = 0.5 traced by the pathline
  for (const auto& p : stream.points) {
    CHECK(std::abs(p[0] * p[1] - 0.5) <= 1e-6);
  }
  for (const auto& p : path.points) {
    CHECK(std::abs(p[0] * p[1] - 0.5) <= 1e-6);
  }
}

TEST_CASE("streamline flags axis approach") {
  // on x0 = 0 the linear field points straight at the axis
  const auto traj = trace_streamline(linear_field(), {0.0, 1.0, 0.0}, 5.0, 1e-10);
  CHECK(traj.termination == Termination::AxisReached);
}

TEST_CASE("streamline refuses a stagnation start") {
  const auto f = xsq_plus_c_field(1.0);
  CHECK_THROWS_AS(trace_streamline(f, {0.0, 1.0, 0.0}, 1.0, 1e-10), StagnationPointError);
}

TEST_CASE("find_equilibria on F = x^2 + 1") {
  const auto f = xsq_plus_c_field(1.0);
  const auto eqs = find_equilibria(f, {-2.0, 2.0, 0.1, 2.0}, 20, 1e-10);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].s == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(eqs[0].t == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("find_equilibria: empty results") {
  const auto ex = exponential_example(1.0, 0.9, 0.4);
  CHECK(find_equilibria(ex, {-3.0, 3.0, 0.05, 6.0}, 25, 1e-10).empty());

  const auto jk = make_joukowski_field(1.0, 1.0);
  CHECK(find_equilibria(jk, {-2.0, 2.0, 0.1, 2.0}, 20, 1e-10).empty());
}

TEST_CASE("find_equilibria input validation") {
  const auto f = xsq_plus_c_field(1.0);
  CHECK_THROWS_AS(find_equilibria(f, {-2.0, 2.0, 0.0, 2.0}, 10, 1e-10), DomainError);
  CHECK_THROWS_AS(find_equilibria(f, {-2.0, 2.0, 0.1, 2.0}, 1, 1e-10), DomainError);
}

TEST_CASE("classify the x^2 + 1 equilibrium") {
  const auto f = xsq_plus_c_field(1.0);
  const auto rep = classify(f, {0.0, 1.0}, 1e-8);
  CHECK(std::abs(rep.eigenvalues.lambda0) < 1e-10);
  CHECK(rep.eigenvalues.lambda1 == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(rep.eigenvalues.lambda2 == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(rep.degenerate);
  CHECK_FALSE(rep.hyperbolic);
  CHECK(rep.index == 1);
  CHECK(rep.degree_of_instability == 1);

  CHECK_THROWS_AS(classify(f, {0.5, 1.0}, 1e-8), NotAnEquilibriumError);
}

TEST_CASE("fully degenerate equilibrium has index = degree = 0") {
  // g = (x0^2 - rho^2 + 2 ln rho)/2 for alpha = ... use instead an engineered
  // gasp-free profile: F = x^3 has V = 0 only at the excluded origin; build
  // a profile with vanishing gradient and Hessian at an interior point:
  // F = (x - q)^2 (expanded) with q = (0, 1): F(x) = x^2 - 2 q x + q^2.
  // At the zero x = q: F' = 2(x - q) = 0 too, so all sample entries vanish.
  const HoloExpr q2 = HoloExpr::sum(
      {HoloExpr::power(2),
       HoloExpr::scale(-2.0, HoloExpr::reverse(HoloExpr::power(1))),  // -2 I x (q = I)
       HoloExpr::constant(-1.0)});                                    // q^2 = -1
  const auto f = make_holo_field_from_derivative(q2);
  const auto v = f.velocity({0.0, 1.0});
  REQUIRE(std::abs(v[0]) < 1e-12);
  REQUIRE(std::abs(v[1]) < 1e-12);
  const auto rep = classify(f, {0.0, 1.0}, 1e-8);
  CHECK(rep.index == 0);
  CHECK(rep.degree_of_instability == 0);
  CHECK(rep.degenerate);
  CHECK(std::abs(rep.eigenvalues.lambda1) < 1e-8);
  CHECK(std::abs(rep.eigenvalues.lambda2) < 1e-8);
}

TEST_CASE("equilibria are degenerate, with the paired spectrum") {
  const auto f = xsq_plus_c_field(1.0);
  const auto eqs = find_equilibria(f, {-2.0, 2.0, 0.1, 2.0}, 12, 1e-10);
  REQUIRE(eqs.size() == 1);
  const auto d = degenerate_test(f, embed(eqs[0], {1.0, 0.0}), 1e-7);
  CHECK(d.degenerate);
  CHECK(d.vrho_zero);
  const auto rep = classify(f, eqs[0], 1e-8);
  CHECK(std::abs(rep.eigenvalues.lambda0) <= 1e-7);
  CHECK(std::abs(rep.eigenvalues.lambda1 + rep.eigenvalues.lambda2) <= 1e-7);
}

TEST_CASE("rotational invariance: meridian equilibria are 3-D circles") {
  const auto f = xsq_plus_c_field(1.0);
  const auto eqs = find_equilibria(f, {-2.0, 2.0, 0.1, 2.0}, 12, 1e-10);
  REQUIRE(eqs.size() == 1);
  for (double theta = 0.0; theta < 6.2; theta += 0.7) {
    const Vec3 v = field_eval(f, embed(eqs[0], {std::cos(theta), std::sin(theta)}));
    CHECK(std::hypot(v[0], std::hypot(v[1], v[2])) <= 1e-9);
  }
}

TEST_CASE("equilibrium of a Bessel-series field matches the closed-form location") {
  // g = [cosh(x0) + 0.5 sinh(x0)] * 0.7 rho J1(rho):
  //   V0 vanishes where tanh(x0) = -1/2, Vrho where (rho J1)' = rho J0 = 0,
  // so the unique box equilibrium is (atanh(-1/2), j_{0,1}).
  GaspSeries s;
  s.alpha = 2.0;
  s.terms.push_back({1.0, 1.0, 0.5, 0.7, 0.0});
  const auto f = make_gasp_field(s);
  const auto eqs = find_equilibria(f, {-1.5, 0.0, 1.5, 3.0}, 15, 1e-10);
  REQUIRE(eqs.size() == 1);
  const double x0_star = -0.54930614433405484570;  // atanh(-1/2)
  const double rho_star = 2.40482555769577276862;  // first zero of J0
  CHECK(eqs[0].s == doctest::Approx(x0_star).epsilon(1e-9));
  CHECK(eqs[0].t == doctest::Approx(rho_star).epsilon(1e-9));

  // the equilibrium theorem on a non-polynomial family
  const auto rep = classify(f, eqs[0], 1e-8);
  CHECK(rep.degenerate);
  CHECK_FALSE(rep.hyperbolic);
  CHECK(rep.index == 1);
  CHECK(rep.degree_of_instability == 1);
  CHECK(std::abs(rep.eigenvalues.lambda0) <= 1e-8);
  CHECK(std::abs(rep.eigenvalues.lambda1 + rep.eigenvalues.lambda2) <= 1e-8);
  // dVrho/dx0 = Xi' Ups' = 0 there, so lambda_{1,2} = -+ dVrho/drho
  const FieldSample smp = f.sample(eqs[0]);
  CHECK(std::abs(smp.dvrho_dx0) <= 1e-8);
  CHECK(rep.eigenvalues.lambda1 == doctest::Approx(std::abs(smp.dvrho_drho)).epsilon(1e-8));

  // nullcline intersections agree
  const auto nc = nullclines(f, {-1.5, 0.0, 1.5, 3.0}, 40);
  REQUIRE(nc.intersections.size() == 1);
  CHECK(std::hypot(nc.intersections[0].s - eqs[0].s, nc.intersections[0].t - eqs[0].t) <= 1e-6);
}

TEST_CASE("nullcline/Newton agreement on the remaining built-ins") {
  const auto jk = make_joukowski_field(1.0, 1.0);
  const MeridianBox box{-2.0, 2.0, 0.1, 2.0};
  CHECK(nullclines(jk, box, 40).intersections.empty());
  CHECK(find_equilibria(jk, box, 20, 1e-10).empty());

  GaspSeries s3;
  s3.alpha = 3.0;
  s3.terms.push_back({1.0, 1.0, 0.5, 0.7, 0.0});
  s3.terms.push_back({2.0, 0.3, 0.0, 0.0, 0.4});
  const auto g3 = make_gasp_field(s3);
  const auto nc = nullclines(g3, {-1.0, 1.0, 0.25, 2.0}, 40);
  const auto eqs = find_equilibria(g3, {-1.0, 1.0, 0.25, 2.0}, 20, 1e-10);
  REQUIRE(nc.intersections.size() == eqs.size());
  for (size_t i = 0; i < eqs.size(); ++i) {
    CHECK(std::hypot(nc.intersections[i].s - eqs[i].s, nc.intersections[i].t - eqs[i].t) <= 1e-6);
  }
}

TEST_CASE("nullclines of F = x^2 + 1") {
  const auto f = xsq_plus_c_field(1.0);
  const auto nc = nullclines(f, {-2.0, 2.0, 0.1, 2.0}, 40);
  CHECK_FALSE(nc.v0_dense_zero);
  CHECK_FALSE(nc.vrho_dense_zero);
  CHECK(!nc.v0_segments.empty());
  CHECK(!nc.vrho_segments.empty());
  // V0-nullcline: rho^2 - x0^2 = 1; Vrho-nullcline: x0 = 0
  for (const auto& seg : nc.v0_segments) {
    for (const auto& pt : seg) {
      CHECK(std::abs(pt.t * pt.t - pt.s * pt.s - 1.0) <= 0.05);
    }
  }
  for (const auto& seg : nc.vrho_segments) {
    for (const auto& pt : seg) {
      CHECK(std::abs(pt.s) <= 0.05);
    }
  }
  REQUIRE(nc.intersections.size() == 1);
  CHECK(nc.intersections[0].s == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(nc.intersections[0].t == doctest::Approx(1.0).epsilon(1e-6));

  // agreement with the Newton search
  const auto eqs = find_equilibria(f, {-2.0, 2.0, 0.1, 2.0}, 20, 1e-10);
  REQUIRE(eqs.size() == nc.intersections.size());
  CHECK(std::hypot(eqs[0].s - nc.intersections[0].s, eqs[0].t - nc.intersections[0].t) <= 1e-6);
}

TEST_CASE("nullclines of the uniform field flag the dense-zero component") {
  const auto f = make_uniform_field(1.0, 1.0);
  const auto nc = nullclines(f, {-1.0, 1.0, 0.1, 1.0}, 15);
  CHECK(nc.vrho_dense_zero);   // Vrho == 0 everywhere
  CHECK_FALSE(nc.v0_dense_zero);
  CHECK(nc.v0_segments.empty());  // V0 == 1 never crosses zero
  CHECK(nc.intersections.empty());
}

TEST_CASE("nullclines of the exponential field never intersect") {
  const auto f = exponential_example(1.0, 1.0, 0.5);
  const auto nc = nullclines(f, {-2.0, 2.0, 0.1, 6.0}, 50);
  CHECK(!nc.v0_segments.empty());
  CHECK(!nc.vrho_segments.empty());
  CHECK(nc.intersections.empty());
  // nullclines are the horizontal lines of constant rho where the two phase
  // conditions hold; verify one sample from each family
  const auto s0 = nc.v0_segments.front();
  const auto v = f.velocity({s0[0].s, s0[0].t});
  CHECK(std::abs(v[0]) <= 1e-2);
}

TEST_CASE("parameter scan over F = x^2 + c") {
  const auto rows = parameter_scan(
      [](double c) { return xsq_plus_c_field(c); }, -1.0, 1.0, 3, {-2.0, 2.0, 0.1, 2.0}, 15,
      1e-10);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].mu == -1.0);
  CHECK(rows[0].reports.empty());  // V0 = x0^2 - rho^2 - 1 and x0 = 0 give -rho^2 - 1 != 0
  CHECK(rows[1].mu == 0.0);
  CHECK(rows[1].reports.empty());  // zero only on the excluded axis
  CHECK(rows[2].mu == 1.0);
  REQUIRE(rows[2].reports.size() == 1);
  CHECK(rows[2].reports[0].location.t == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(rows[2].reports[0].index == 1);
  CHECK(rows[2].reports[0].degree_of_instability == 1);
}

TEST_CASE("scan of the Joukowski B parameter is empty everywhere") {
  const auto rows = parameter_scan(
      [](double b) { return make_joukowski_field(b, 1.0); }, 1.0, 2.0, 4, {-2.0, 2.0, 0.1, 2.0},
      12, 1e-10);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.error.empty());
    CHECK(row.reports.empty());
  }
}

TEST_CASE("single-step scan reproduces a plain search") {
  const auto rows = parameter_scan(
      [](double c) { return xsq_plus_c_field(c); }, 1.0, 5.0, 1, {-2.0, 2.0, 0.1, 2.0}, 15, 1e-10);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mu == 1.0);
  REQUIRE(rows[0].reports.size() == 1);
}
