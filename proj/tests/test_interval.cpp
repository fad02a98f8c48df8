#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "zclust/interval.hpp"

using namespace zclust;

TEST_CASE("arithmetic encloses the exact double result") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 2000; ++k) {
    const double a = u(rng), b = u(rng);
    const Interval A(a), B(b);
    CHECK((A + B).contains(a + b));
    CHECK((A - B).contains(a - b));
    CHECK((A * B).contains(a * b));
    if (std::fabs(b) > 1e-3) CHECK((A / B).contains(a / b));
    CHECK(square(A).contains(a * a));
  }
}

TEST_CASE("widening is outward: endpoints move by one ulp") {
  const Interval s = Interval(0.1) + Interval(0.2);
  CHECK(s.lo < 0.1 + 0.2);
  CHECK(s.hi > 0.1 + 0.2);
  CHECK(s.contains(0.3));
  CHECK(s.width() > 0.0);
}

TEST_CASE("square of a zero-straddling interval starts at zero") {
  const Interval q = square(Interval(-2.0, 3.0));
  CHECK(q.lo == 0.0);
  CHECK(q.hi >= 9.0);
}

TEST_CASE("sqrt encloses and clamps at zero") {
  const Interval r = zclust::sqrt(Interval(4.0, 9.0));
  CHECK(r.contains(2.0));
  CHECK(r.contains(3.0));
  CHECK(zclust::sqrt(Interval(-1e-20, 1.0)).lo == 0.0);
  CHECK_THROWS(zclust::sqrt(Interval(-2.0, -1.0)));
}

TEST_CASE("pow_nat matches repeated multiplication enclosures") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double x = u(rng);
    const Interval I(x);
    CHECK(pow_nat(I, 0).contains(1.0));
    CHECK(pow_nat(I, 3).contains(x * x * x));
    CHECK(pow_nat(I, 5).contains(std::pow(x, 5) * (1.0)));
  }
}

TEST_CASE("division by a zero-containing interval throws") {
  CHECK_THROWS(Interval(1.0) / Interval(-1.0, 1.0));
}

TEST_CASE("intersect and hull") {
  const Interval a(0.0, 2.0), b(1.0, 3.0);
  const Interval i = intersect(a, b);
  CHECK(i.lo == 1.0);
  CHECK(i.hi == 2.0);
  const Interval h = hull(a, b);
  CHECK(h.lo == 0.0);
  CHECK(h.hi == 3.0);
  CHECK_THROWS(intersect(Interval(0.0, 1.0), Interval(2.0, 3.0)));
}

TEST_CASE("mag and mig") {
  const Interval a(-3.0, 2.0);
  CHECK(a.mag() == 3.0);
  CHECK(a.mig() == 0.0);
  CHECK(Interval(1.0, 2.0).mig() == 1.0);
  CHECK(Interval(-5.0, -4.0).mig() == 4.0);
}

TEST_CASE("complex rectangles enclose complex arithmetic") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 2000; ++k) {
    const std::complex<double> a(u(rng), u(rng)), b(u(rng), u(rng));
    const CInterval A(a), B(b);
    CHECK((A + B).contains(a + b));
    CHECK((A - B).contains(a - b));
    CHECK((A * B).contains(a * b));
    CHECK(A.mag() >= std::abs(a));
  }
}

TEST_CASE("CInterval contains / mid / point-zero") {
  const CInterval z(Interval(-1.0, 1.0), Interval(0.0, 2.0));
  CHECK(z.contains({0.5, 1.0}));
  CHECK(!z.contains({1.5, 1.0}));
  CHECK(z.mid() == std::complex<double>(0.0, 1.0));
  CHECK(CInterval(0.0, 0.0).is_point_zero());
  CHECK(!z.is_point_zero());
}
