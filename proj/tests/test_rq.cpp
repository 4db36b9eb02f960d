#include <cmath>
#include <random>

#include "doctest.h"
#include "meridian/rq.hpp"

using namespace meridian;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("to_cylindrical examples") {
  const auto a = to_cylindrical({0.0, 1.0, 0.0});
  CHECK(a.x0 == 0.0);
  CHECK(a.rho == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.theta == 0.0);
  CHECK_FALSE(a.degenerate);

  const auto b = to_cylindrical({1.0, 0.0, -2.0});
  CHECK(b.rho == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b.theta == doctest::Approx(1.5 * kPi).epsilon(1e-14));

  const auto c = to_cylindrical({5.0, 0.0, 0.0});
  CHECK(c.theta == 0.0);
  CHECK(c.rho == 0.0);
  CHECK(c.degenerate);
}

TEST_CASE("to_cylindrical reconstruction property") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const ReducedQuaternion p{u(gen), u(gen), u(gen)};
    const auto c = to_cylindrical(p);
    CHECK(c.theta >= 0.0);
    CHECK(c.theta < 2.0 * kPi);
    CHECK(c.rho * std::cos(c.theta) == doctest::Approx(p.x1).epsilon(1e-12));
    CHECK(c.rho * std::sin(c.theta) == doctest::Approx(p.x2).epsilon(1e-12));
  }
}

TEST_CASE("meridian_of and embed") {
  const auto d = meridian_of({1.0, 3.0, 4.0});
  CHECK(d.m.s == 1.0);
  CHECK(d.m.t == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(d.az.a1 == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(d.az.a2 == doctest::Approx(0.8).epsilon(1e-15));

  const auto e = meridian_of({0.0, 0.0, 1.0});
  CHECK(e.m.t == 1.0);
  CHECK(e.az.a2 == 1.0);

  CHECK_THROWS_AS(meridian_of({2.0, 0.0, 0.0}), AxisPointError);

  const ReducedQuaternion back = embed({1.0, 5.0}, {0.6, 0.8});
  CHECK(back.x0 == 1.0);
  CHECK(back.x1 == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(back.x2 == doctest::Approx(4.0).epsilon(1e-15));

  const ReducedQuaternion zero = embed({0.0, 0.0}, {0.0, 1.0});
  CHECK(zero == ReducedQuaternion{0.0, 0.0, 0.0});

  CHECK_THROWS_AS(embed({1.0, 1.0}, {1.0, 1.0}), NonUnitAzimuthError);
}

TEST_CASE("embed round trip property") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const ReducedQuaternion p{u(gen), u(gen), u(gen)};
    if (p.rho() == 0.0) continue;
    const auto d = meridian_of(p);
    const ReducedQuaternion q = embed(d.m, d.az);
    CHECK(q.x0 == doctest::Approx(p.x0).epsilon(1e-12));
    CHECK(q.x1 == doctest::Approx(p.x1).epsilon(1e-12));
    CHECK(q.x2 == doctest::Approx(p.x2).epsilon(1e-12));
  }
}

TEST_CASE("meridian arithmetic") {
  const MeridianValue sq = mul_meridian({1.0, 1.0}, {1.0, 1.0});
  CHECK(sq.s == 0.0);
  CHECK(sq.t == 2.0);

  const MeridianValue ii = mul_meridian({0.0, 1.0}, {0.0, 1.0});
  CHECK(ii.s == -1.0);
  CHECK(ii.t == 0.0);

  const MeridianValue sc = mul_meridian({2.0, 0.0}, {3.0, -1.0});
  CHECK(sc.s == 6.0);
  CHECK(sc.t == -2.0);

  const MeridianValue inv_i = inv_meridian({0.0, 1.0});
  CHECK(inv_i.s == 0.0);
  CHECK(inv_i.t == -1.0);

  const MeridianValue inv = inv_meridian({1.0, 1.0});
  CHECK(inv.s == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(inv.t == doctest::Approx(-0.5).epsilon(1e-15));

  CHECK_THROWS_AS(inv_meridian({0.0, 0.0}), DivisionByZeroError);
}

TEST_CASE("meridian arithmetic is a field (random triples)") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  auto close = [](MeridianValue a, MeridianValue b) {
    return std::abs(a.s - b.s) <= 1e-12 * (1.0 + std::abs(a.s)) &&
           std::abs(a.t - b.t) <= 1e-12 * (1.0 + std::abs(a.t));
  };
  for (int i = 0; i < 200; ++i) {
    const MeridianValue a{u(gen), u(gen)}, b{u(gen), u(gen)}, c{u(gen), u(gen)};
    CHECK(close(a * b, b * a));
    CHECK(close((a * b) * c, a * (b * c)));
    CHECK(close(a * (b + c), a * b + a * c));
    if (a.norm() > 1e-6) {
      CHECK(close(a * inv_meridian(a), MeridianValue{1.0, 0.0}));
    }
  }
}

TEST_CASE("conjugation") {
  CHECK(conj({1.0, 2.0, 3.0}) == ReducedQuaternion{1.0, -2.0, -3.0});
  CHECK(conj({0.0, 0.0, 0.0}) == ReducedQuaternion{0.0, 0.0, 0.0});
  CHECK(conj({-1.0, 0.0, 5.0}) == ReducedQuaternion{-1.0, 0.0, -5.0});

  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const ReducedQuaternion p{u(gen), u(gen), u(gen)};
    CHECK(conj(conj(p)) == p);
    // norm^2 equals the scalar part of conj(q) * q
    const double n2 = p.norm_squared();
    CHECK(n2 >= 0.0);
    const double scalar_of_product = p.x0 * p.x0 + p.x1 * p.x1 + p.x2 * p.x2;
    CHECK(n2 == doctest::Approx(scalar_of_product).epsilon(1e-15));
  }
}
