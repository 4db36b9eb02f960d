#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "meridian/bessel.hpp"
#include "oracles.hpp"

using namespace meridian;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

double rel_err(double got, double expect) {
  return std::abs(got - expect) / std::max(1e-300, std::abs(expect));
}
}  // namespace

TEST_CASE("reference values (30-digit oracle)") {
  // mpmath (dps = 30), frozen
  struct Case {
    BesselKind k;
    double nu, x, expect;
  };
  const Case cases[] = {
      {BesselKind::J, 0.0, 1.0, 0.765197686557966551449717526103},
      {BesselKind::J, 1.0, 1.0, 0.440050585744933515959682203719},
      {BesselKind::J, 0.0, 2.5, -0.0483837764681979963272877788512},
      {BesselKind::Y, 0.0, 2.5, 0.498070359615231887827472350362},
      {BesselKind::J, 2.5, 7.7, -0.286940767425193610611253775083},
      {BesselKind::Y, 2.5, 7.7, -0.068832851180431998480499807262},
      {BesselKind::J, 0.0, 25.0, 0.096266783275958116173503340754},
      {BesselKind::Y, 0.0, 25.0, -0.127249432268006137834328658699},
      {BesselKind::J, 7.0, 30.0, 0.145185189572328274304503239426},
      {BesselKind::Y, 7.0, 30.0, 0.0272021183952055919818307721553},
      {BesselKind::I, 0.0, 1.0, 1.26606587775200833559824462521},
      {BesselKind::I, 1.0, 1.0, 0.56515910399248502720769602761},
      {BesselKind::K, 1.0, 2.0, 0.139865881816522427284598807035},
      {BesselKind::I, 3.5, 10.0, 1486.64977624615001517171703275},
      {BesselKind::K, 3.5, 10.0, 3.17584888353896420083245276072e-5},
      {BesselKind::J, 25.5, 10.0, 3.24056566507983725257039987419e-9},
      {BesselKind::Y, 25.5, 10.0, -4188300.62942742927928245220579},
      {BesselKind::K, 0.0, 0.1, 2.4270690247020165578186792364},
      {BesselKind::Y, 1.0, 0.5, -1.47147239267024306918858463532},
      {BesselKind::Y, 0.0, 0.5, -0.444518733506706557148398475068},
  };
  for (const auto& c : cases) {
    CHECK(rel_err(bessel(c.k, c.nu, c.x), c.expect) < 1e-10);
  }
}

TEST_CASE("values agree with the long-double series oracle") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 3.25, 7.0}) {
    for (double x : {0.05, 0.4, 1.0, 2.1, 4.0, 8.0, 11.5}) {
      CHECK(rel_err(bessel(BesselKind::J, nu, x), oracles::besselj_series_ld(nu, x)) < 1e-10);
      CHECK(rel_err(bessel(BesselKind::I, nu, x), oracles::besseli_series_ld(nu, x)) < 1e-10);
    }
  }
}

TEST_CASE("spec examples") {
  // J_0 -> 1 as x -> 0+
  CHECK(std::abs(bessel(BesselKind::J, 0.0, 1e-8) - 1.0) < 1e-8);
  // half-integer closed forms
  CHECK(rel_err(bessel(BesselKind::J, 0.5, kPi / 2.0), 2.0 / kPi) < 1e-12);
  CHECK(rel_err(bessel(BesselKind::Y, 0.5, kPi), std::sqrt(2.0) / kPi) < 1e-12);
}

TEST_CASE("bessel_half") {
  CHECK(std::abs(bessel_half(BesselKind::J, kPi)) < 1e-14);
  CHECK(std::abs(bessel_half(BesselKind::Y, kPi / 2.0)) < 1e-14);
  CHECK(rel_err(bessel_half(BesselKind::J, 1.0), 0.671396707141803090416364012041) < 1e-12);
  CHECK_THROWS_AS(bessel_half(BesselKind::I, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_half(BesselKind::J, -1.0), DomainError);
}

TEST_CASE("half-integer agreement across the evaluation branches") {
  for (double x = 0.1; x <= 30.0; x += 0.13) {
    CHECK(rel_err(bessel(BesselKind::J, 0.5, x), bessel_half(BesselKind::J, x)) < 1e-10);
    CHECK(rel_err(bessel(BesselKind::Y, 0.5, x), bessel_half(BesselKind::Y, x)) < 1e-10);
  }
}

TEST_CASE("Wronskian identities") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (double x = 0.1; x <= 30.0; x += 0.31) {
      const BesselJY jy = bessel_jy(nu, x);
      const double w = jy.j * jy.yp - jy.jp * jy.y;
      CHECK(rel_err(w, 2.0 / (kPi * x)) < 1e-8);

      const double iv = bessel(BesselKind::I, nu, x);
      const double kv = bessel(BesselKind::K, nu, x);
      const double ivp = bessel_derivative(BesselKind::I, nu, x);
      const double kvp = bessel_derivative(BesselKind::K, nu, x);
      CHECK(rel_err(iv * kvp - ivp * kv, -1.0 / x) < 1e-8);
    }
  }
}

TEST_CASE("derivatives: identities and finite differences") {
  CHECK(rel_err(bessel_derivative(BesselKind::J, 0.0, 1.0), -0.440050585744933515959682203719) <
        1e-12);
  CHECK(rel_err(bessel_derivative(BesselKind::I, 0.0, 1.0), 0.56515910399248502720769602761) <
        1e-12);
  // d/dx of the half-integer closed form at pi
  const double x = kPi;
  const double expect =
      std::sqrt(2.0 / (kPi * x)) * (std::cos(x) - 0.5 * std::sin(x) / x);
  CHECK(rel_err(bessel_derivative(BesselKind::J, 0.5, x), expect) < 1e-12);

  for (BesselKind k : {BesselKind::J, BesselKind::Y, BesselKind::I, BesselKind::K}) {
    for (double nu : {0.0, 0.5, 1.5, 3.0}) {
      for (double x2 : {0.7, 2.3, 9.1}) {
        const double h = 1e-6 * std::max(1.0, x2);
        const double fd = (bessel(k, nu, x2 + h) - bessel(k, nu, x2 - h)) / (2.0 * h);
        CHECK(rel_err(bessel_derivative(k, nu, x2), fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("ODE residual with finite-difference second derivatives") {
  // x^2 y'' + x y' + (x^2 - nu^2) y = 0 (ordinary), minus sign for modified
  for (BesselKind k : {BesselKind::J, BesselKind::Y, BesselKind::I, BesselKind::K}) {
    const double sign = (k == BesselKind::J || k == BesselKind::Y) ? 1.0 : -1.0;
    for (double nu : {0.0, 0.5, 1.0, 2.5}) {
      for (double x : {0.5, 1.7, 5.0, 12.0}) {
        const double h = 1e-4 * std::max(1.0, x);
        const double y0 = bessel(k, nu, x);
        const double yp = bessel(k, nu, x + h);
        const double ym = bessel(k, nu, x - h);
        const double d1 = (yp - ym) / (2.0 * h);
        const double d2 = (yp - 2.0 * y0 + ym) / (h * h);
        const double res = x * x * d2 + x * d1 + (sign * x * x - nu * nu) * y0;
        const double scale = std::max({std::abs(x * x * d2), std::abs(x * d1),
                                       std::abs((sign * x * x - nu * nu) * y0), 1e-30});
        CHECK(std::abs(res) / scale < 1e-5);
      }
    }
  }
}

TEST_CASE("dense reference sweep across the branch boundaries") {
  // 25-digit reference table covering both evaluation branches, the x = 2
  // switch point, and orders up to 50
  std::ifstream in(std::string(MERIDIAN_TEST_DATA_DIR) + "/bessel_reference.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  int rows = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double nu, x, j, y, iv, kv;
    REQUIRE((ls >> nu >> x >> j >> y >> iv >> kv));
    worst = std::max(worst, rel_err(bessel(BesselKind::J, nu, x), j));
    worst = std::max(worst, rel_err(bessel(BesselKind::Y, nu, x), y));
    worst = std::max(worst, rel_err(bessel(BesselKind::I, nu, x), iv));
    worst = std::max(worst, rel_err(bessel(BesselKind::K, nu, x), kv));
    ++rows;
  }
  CHECK(rows > 200);
  CHECK(worst < 1e-10);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel(BesselKind::J, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel(BesselKind::J, 0.0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel(BesselKind::Y, -0.5, 1.0), DomainError);
  CHECK_THROWS_AS(bessel(BesselKind::J, 50.5, 1.0), UnsupportedOrderError);
  CHECK_NOTHROW(bessel(BesselKind::J, 50.0, 1.0));
}
