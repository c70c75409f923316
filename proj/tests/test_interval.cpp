#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cesorl/interval.hpp"
#include "oracles.hpp"

using cesorl::Interval;

TEST_CASE("construction and infinite flag") {
  Interval v(1.0, 2.0);
  CHECK(v.lo == 1.0);
  CHECK(v.hi == 2.0);
  CHECK(v.width() == doctest::Approx(1.0));
  CHECK(!v.is_infinite());
  CHECK(Interval::infinite().is_infinite());
  CHECK(Interval(3.0).contains(3.0));
}

TEST_CASE("widen pushes both bounds outward") {
  const Interval v = widen(Interval(1.0));
  CHECK(v.lo < 1.0);
  CHECK(v.hi > 1.0);
  CHECK(v.hi - v.lo < 1e-14);
  const Interval z = widen(Interval(0.0));
  CHECK(z.lo < 0.0);
  CHECK(z.hi > 0.0);
}

TEST_CASE("arithmetic encloses exact results") {
  oracles::TestRng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.uniform(-10.0, 10.0);
    const double b = rng.uniform(-10.0, 10.0);
    const double c = rng.uniform(0.3, 10.0);
    const Interval ia(a), ib(b), ic(c);
    CHECK((ia + ib).contains(a + b));
    CHECK((ia - ib).contains(a - b));
    CHECK((ia * ib).contains(a * b));
    CHECK((ia / ic).contains(a / c));
    const double p = rng.uniform(1.0, 4.0);
    const double u = rng.uniform(0.0, 5.0);
    CHECK(pow_nonneg(Interval(u), p)
              .contains(static_cast<double>(
                  std::pow(static_cast<long double>(u),
                           static_cast<long double>(p)))));
  }
}

TEST_CASE("interval operands propagate endpoints") {
  const Interval a(1.0, 2.0), b(-3.0, 4.0);
  const Interval prod = a * b;
  CHECK(prod.contains(-6.0));
  CHECK(prod.contains(8.0));
  CHECK(prod.contains(1.7 * 0.5));
  const Interval sum = a + b;
  CHECK(sum.contains(-2.0));
  CHECK(sum.contains(6.0));
}

TEST_CASE("pow with negative exponents still encloses") {
  // n^(1-p) and n^-p appear in the tail formulas.
  const Interval n(100.0);
  const Interval v = pow_nonneg(n, -2.0);
  CHECK(v.contains(1e-4));
  const Interval w = pow_nonneg(Interval(99.0, 101.0), -1.5);
  CHECK(w.contains(std::pow(100.0, -1.5)));
  CHECK(w.lo < w.hi);
}

TEST_CASE("infinity propagates through + and *") {
  const Interval inf = Interval::infinite();
  CHECK((inf + Interval(1.0)).is_infinite());
  CHECK((Interval(2.0) * inf).is_infinite());
}

TEST_CASE("hull and intersect") {
  const Interval a(0.0, 2.0), b(1.0, 3.0);
  const Interval h = hull(a, b);
  CHECK(h.lo == 0.0);
  CHECK(h.hi == 3.0);
  const Interval i = intersect(a, b);
  CHECK(i.lo == 1.0);
  CHECK(i.hi == 2.0);
  CHECK(intersect(Interval::infinite(), a).lo == a.lo);
}

TEST_CASE("to_string renders nine significant digits") {
  CHECK(cesorl::to_string(Interval(1.0, 2.0)) == "[1, 2]");
  CHECK(cesorl::to_string(Interval::infinite()) == "INFINITE");
  const std::string s = cesorl::to_string(Interval(1.282549830, 1.282549831));
  CHECK(s.find("1.28254983") != std::string::npos);
}
