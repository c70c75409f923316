#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cesorl/errors.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/sequence.hpp"
#include "oracles.hpp"

using namespace cesorl;

TEST_CASE("finite prefix sums") {
  const Sequence x({1.0, -1.0, 1.0});
  CHECK(x.abs_prefix_sum(2).contains(2.0));
  CHECK(x.abs_prefix_sum(5).contains(3.0));
  CHECK(x.abs_total().contains(3.0));
  CHECK(x.abs_prefix_sum(0).contains(0.0));
  CHECK(x.first_nonzero() == 1);
  CHECK(x.finite_support());
}

TEST_CASE("geometric prefix sums match brute-force summation") {
  const Sequence x({1.0}, GeometricTail{1.0, 0.5});
  CHECK(x.abs_prefix_sum(3).contains(1.75));
  CHECK(x.abs_total().contains(2.0));

  const Sequence y({0.3, -0.7}, GeometricTail{-0.4, 0.63});
  for (size_t n : {1u, 2u, 3u, 10u, 50u, 200u}) {
    long double brute = 0.0L;
    for (size_t i = 1; i <= n; ++i) brute += std::fabs(y.coord(i));
    CHECK(y.abs_prefix_sum(n).contains(static_cast<double>(brute)));
  }
  long double total = 0.0L;
  for (size_t i = 1; i <= 4000; ++i) total += std::fabs(y.coord(i));
  CHECK(y.abs_total().hi >= static_cast<double>(total));
  CHECK(y.abs_total().lo <= static_cast<double>(total) + 1e-12);
}

TEST_CASE("cesaro mean examples") {
  CHECK(cesaro_mean(Sequence({1.0, 1.0, 1.0}), 3) == doctest::Approx(1.0));
  CHECK(cesaro_mean(Sequence({3.0}), 2) == doctest::Approx(1.5));
  const Sequence geom({1.0}, GeometricTail{1.0, 0.5});
  CHECK(cesaro_mean(geom, 3) == doctest::Approx(1.75 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(cesaro_mean(geom, 0), Error);
}

TEST_CASE("zero detection") {
  CHECK(Sequence({0.0, 0.0}).is_zero());
  CHECK(Sequence({}).is_zero());
  CHECK(!Sequence({0.0, 1e-9}).is_zero());
  CHECK(!Sequence({0.0}, GeometricTail{0.5, 0.5}).is_zero());
  // A zero tail coefficient is dropped.
  CHECK(Sequence({0.0}, GeometricTail{0.0, 0.5}).is_zero());
  CHECK(Sequence({0.0, 0.0}).first_nonzero() == 0);
}

TEST_CASE("scaling is coordinatewise") {
  const Sequence x({1.0, -2.0}, GeometricTail{0.5, 0.25});
  const Sequence y = x.scaled(-3.0);
  for (size_t i = 1; i <= 10; ++i)
    CHECK(y.coord(i) == doctest::Approx(-3.0 * x.coord(i)).epsilon(1e-14));
}

TEST_CASE("truncation materializes coordinates") {
  const Sequence x({1.0, 2.0}, GeometricTail{1.0, 0.5});
  const Sequence t = x.truncated(4);
  CHECK(t.finite_support());
  CHECK(t.head_size() == 4);
  CHECK(t.coord(3) == doctest::Approx(0.5));
  CHECK(t.coord(4) == doctest::Approx(0.25));
  CHECK(t.coord(5) == 0.0);
}

TEST_CASE("drop_first keeps absolute positions") {
  const Sequence x({1.0, 2.0, 3.0}, GeometricTail{1.0, 0.5});
  const Sequence a = x.drop_first(2);
  CHECK(a.coord(1) == 0.0);
  CHECK(a.coord(2) == 0.0);
  CHECK(a.coord(3) == 3.0);
  CHECK(a.coord(5) == doctest::Approx(x.coord(5)).epsilon(1e-14));
  // Dropping past the head re-anchors the tail.
  const Sequence b = x.drop_first(5);
  for (size_t i = 1; i <= 5; ++i) CHECK(b.coord(i) == 0.0);
  CHECK(b.coord(6) == doctest::Approx(x.coord(6)).epsilon(1e-13));
  CHECK(b.coord(9) == doctest::Approx(x.coord(9)).epsilon(1e-13));
}

TEST_CASE("sum and midpoint") {
  const Sequence x({1.0, 2.0});
  const Sequence y({0.5}, GeometricTail{1.0, 0.5});
  const Sequence s = x.plus(y);
  for (size_t i = 1; i <= 8; ++i)
    CHECK(s.coord(i) == doctest::Approx(x.coord(i) + y.coord(i)).epsilon(1e-13));
  const Sequence m = Sequence::midpoint(x, y);
  for (size_t i = 1; i <= 8; ++i)
    CHECK(m.coord(i) ==
          doctest::Approx(0.5 * (x.coord(i) + y.coord(i))).epsilon(1e-13));

  const Sequence z1({1.0}, GeometricTail{1.0, 0.5});
  const Sequence z2({1.0}, GeometricTail{1.0, 0.25});
  CHECK_THROWS_AS(z1.plus(z2), Error);
  const Sequence z3 = z1.plus(z1);
  CHECK(z3.coord(4) == doctest::Approx(2.0 * z1.coord(4)).epsilon(1e-14));
}

TEST_CASE("text round trip") {
  const Sequence x({1.0, -0.3333333333333333, 2e-7},
                   GeometricTail{0.1234567890123, 0.875});
  const Sequence back = parse_sequence(x.to_text());
  REQUIRE(back.head_size() == x.head_size());
  for (size_t i = 1; i <= 6; ++i) CHECK(back.coord(i) == x.coord(i));
  REQUIRE(back.tail().has_value());
  CHECK(back.tail()->c == x.tail()->c);
  CHECK(back.tail()->gamma == x.tail()->gamma);
}

TEST_CASE("parse accepts comments and rejects malformed input") {
  const Sequence x = parse_sequence("# comment\nhead 1 2 3 # trailing\n");
  CHECK(x.head_size() == 3);
  const Sequence y = parse_sequence("head 1\ntail c=0.5 gamma=2.5e-1\n");
  REQUIRE(y.tail().has_value());
  CHECK(y.tail()->gamma == 0.25);

  CHECK_THROWS_AS(parse_sequence(""), Error);
  CHECK_THROWS_AS(parse_sequence("tail c=1 gamma=0.5\n"), Error);
  CHECK_THROWS_AS(parse_sequence("head 1\ntail c=1 gamma=1.5\n"), Error);
  CHECK_THROWS_AS(parse_sequence("head 1\ntail c=1\n"), Error);
  CHECK_THROWS_AS(parse_sequence("head one\n"), Error);
  CHECK_THROWS_AS(parse_sequence("head 1\nhead 2\n"), Error);
}

TEST_CASE("unit sequences") {
  const Sequence e3 = Sequence::unit(3);
  CHECK(e3.coord(1) == 0.0);
  CHECK(e3.coord(3) == 1.0);
  CHECK(e3.first_nonzero() == 3);
}

TEST_CASE("prefix sums are nondecreasing and bounded by the total") {
  oracles::TestRng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> head;
    const int m = 1 + static_cast<int>(rng.next() % 6);
    for (int i = 0; i < m; ++i) head.push_back(rng.uniform(-2.0, 2.0));
    std::optional<GeometricTail> tail;
    if (rng.uniform01() < 0.5)
      tail = GeometricTail{rng.uniform(-1.0, 1.0), rng.uniform(0.1, 0.8)};
    const Sequence x(head, tail);
    Interval prev(0.0);
    for (size_t n = 1; n <= 40; ++n) {
      const Interval s = x.abs_prefix_sum(n);
      CHECK(s.hi >= prev.lo);
      CHECK(x.abs_total().hi >= s.lo);
      prev = s;
    }
  }
}
