#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cesorl/errors.hpp"
#include "cesorl/orlicz_function.hpp"
#include "oracles.hpp"

using namespace cesorl;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(CESORL_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

OrliczFunction fixture(const std::string& name) {
  return parse_phi(read_fixture(name));
}

}  // namespace

TEST_CASE("parse and evaluate the power fixtures") {
  const OrliczFunction p2 = fixture("phi_p2.txt");
  CHECK(p2.value(0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(p2.value(-0.5) == doctest::Approx(0.25).epsilon(1e-14));  // even
  CHECK(p2.value(0.0) == 0.0);
  CHECK(p2.a_phi() == 0.0);
  CHECK(p2.sais().empty());

  const OrliczFunction maxsq = fixture("phi_maxsq.txt");
  CHECK(maxsq.value(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(maxsq.value(0.7) == 0.0);
  CHECK(maxsq.a_phi() == 1.0);
  REQUIRE(maxsq.sais().size() == 1);
  CHECK(maxsq.sais()[0].lo == 0.0);
  CHECK(maxsq.sais()[0].hi == 1.0);
}

TEST_CASE("phi_rot piecewise values") {
  const OrliczFunction rot = fixture("phi_rot.txt");
  CHECK(rot.value(0.3) == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(rot.value(0.05) == doctest::Approx(0.0025).epsilon(1e-14));
  CHECK(rot.value(0.2) == doctest::Approx(0.01 + 0.2 * 0.1).epsilon(1e-14));
  CHECK(rot.value(0.4) ==
        doctest::Approx(0.05 + 0.2 * 0.1 + 0.01).epsilon(1e-13));
  CHECK(rot.a_phi() == 0.0);
  REQUIRE(rot.sais().size() == 1);
  CHECK(rot.sais()[0].lo == doctest::Approx(0.1));
  CHECK(rot.sais()[0].hi == doctest::Approx(0.3));
}

TEST_CASE("right derivatives") {
  const OrliczFunction p2 = fixture("phi_p2.txt");
  CHECK(p2.right_derivative(0.1) == doctest::Approx(0.2).epsilon(1e-13));
  const OrliczFunction maxsq = fixture("phi_maxsq.txt");
  CHECK(maxsq.right_derivative(0.5) == 0.0);
  const OrliczFunction rot = fixture("phi_rot.txt");
  CHECK(rot.right_derivative(0.2) == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("strict convexity against affine intervals") {
  const OrliczFunction p2 = fixture("phi_p2.txt");
  CHECK(p2.is_strictly_convex_on(0.0, 10.0));
  const OrliczFunction rot = fixture("phi_rot.txt");
  CHECK(!rot.is_strictly_convex_on(0.0, 0.65));
  CHECK(rot.is_strictly_convex_on(0.0, 0.05));
  CHECK(rot.is_strictly_convex_on(0.3, 0.65));
}

TEST_CASE("delta2 at zero") {
  const Certificate p2 = fixture("phi_p2.txt").delta2_at_zero();
  CHECK(p2.verdict == Verdict::HOLDS);
  CHECK(p2.at("K") == doctest::Approx(4.0));

  const Certificate maxsq = fixture("phi_maxsq.txt").delta2_at_zero();
  CHECK(maxsq.verdict == Verdict::FAILS);
  CHECK(maxsq.at("witness_u") == doctest::Approx(0.75));
  CHECK(maxsq.at("phi_u") == 0.0);
  CHECK(maxsq.at("phi_2u") == doctest::Approx(0.25).epsilon(1e-13));

  const Certificate rot = fixture("phi_rot.txt").delta2_at_zero();
  CHECK(rot.verdict == Verdict::HOLDS);
  CHECK(rot.at("K") == doctest::Approx(4.0));
}

TEST_CASE("delta2 HOLDS constants re-verify on samples") {
  oracles::TestRng rng(11);
  for (const char* name : {"phi_p2.txt", "phi_p15.txt", "phi_rot.txt",
                           "phi_abs.txt"}) {
    const OrliczFunction phi = fixture(name);
    const Certificate cert = phi.delta2_at_zero();
    REQUIRE(cert.verdict == Verdict::HOLDS);
    const double K = cert.at("K");
    const double a = cert.at("a");
    for (int i = 0; i < 500; ++i) {
      const double u = rng.uniform(0.0, a);
      CHECK(phi.value(2.0 * u) <= K * phi.value(u) * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("lower index certificates") {
  const Certificate p2 = fixture("phi_p2.txt").lower_index_exceeds_one();
  CHECK(p2.verdict == Verdict::HOLDS);
  CHECK(p2.at("epsilon") == doctest::Approx(1.0));
  CHECK(p2.at("A") == doctest::Approx(1.0));

  const Certificate abs = fixture("phi_abs.txt").lower_index_exceeds_one();
  CHECK(abs.verdict == Verdict::FAILS);
  CHECK(abs.at("index") == doctest::Approx(1.0));

  const Certificate rot = fixture("phi_rot.txt").lower_index_exceeds_one();
  CHECK(rot.verdict == Verdict::HOLDS);
  CHECK(rot.at("epsilon") == doctest::Approx(1.0));
  CHECK(rot.at("u0") == doctest::Approx(0.1));

  const Certificate maxsq = fixture("phi_maxsq.txt").lower_index_exceeds_one();
  CHECK(maxsq.verdict == Verdict::NOT_APPLICABLE);
}

TEST_CASE("lower index HOLDS implies the power bound on samples") {
  oracles::TestRng rng(13);
  for (const char* name : {"phi_p2.txt", "phi_p15.txt", "phi_p3.txt",
                           "phi_rot.txt"}) {
    const OrliczFunction phi = fixture(name);
    const Certificate cert = phi.lower_index_exceeds_one();
    REQUIRE(cert.verdict == Verdict::HOLDS);
    const double eps = cert.at("epsilon");
    const double A = cert.at("A");
    const double u0 = cert.at("u0");
    for (int i = 0; i < 500; ++i) {
      const double u = rng.uniform(0.0, u0);
      CHECK(phi.value(u) <=
            A * std::pow(u, 1.0 + eps) * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("parse errors carry the piece index and invariant") {
  // Slope drops across the boundary.
  const std::string bad_convex =
      "piece start=0 slope=1 coeff=0 exp=1\n"
      "piece start=1 slope=0.5 coeff=0 exp=1\n";
  CHECK_THROWS_WITH_AS(parse_phi(bad_convex),
                       "PARSE: convexity violated at piece 2", Error);

  CHECK_THROWS_AS(parse_phi(""), Error);
  CHECK_THROWS_AS(parse_phi("piece start=0 slope=0 coeff=1 exp=0.5\n"), Error);
  CHECK_THROWS_AS(parse_phi("piece start=1 slope=1 coeff=0 exp=1\n"), Error);
  CHECK_THROWS_AS(  // starts not increasing
      parse_phi("piece start=0 slope=0 coeff=1 exp=2\n"
                "piece start=0 slope=1 coeff=0 exp=1\n"),
      Error);
  CHECK_THROWS_AS(  // redundant p=1 power term
      parse_phi("piece start=0 slope=0 coeff=1 exp=1\n"), Error);
  CHECK_THROWS_AS(  // last piece flat: phi would not grow
      parse_phi("piece start=0 slope=0 coeff=0 exp=1\n"), Error);
  CHECK_THROWS_AS(parse_phi("piece start=0 slope=0 coeff=1\n"), Error);
  CHECK_THROWS_AS(parse_phi("piece start=0 slope=0 coeff=1 exp=oops\n"),
                  Error);
  CHECK_THROWS_AS(parse_phi("noise start=0 slope=0 coeff=1 exp=2\n"), Error);
}

TEST_CASE("monotone and convex on sampled triples") {
  oracles::TestRng rng(17);
  for (const char* name : {"phi_p2.txt", "phi_p15.txt", "phi_maxsq.txt",
                           "phi_rot.txt", "phi_zero_half_sq.txt"}) {
    const OrliczFunction phi = fixture(name);
    for (int i = 0; i < 1000; ++i) {
      double u = rng.uniform(0.0, 3.0);
      double v = rng.uniform(0.0, 3.0);
      if (u > v) std::swap(u, v);
      CHECK(phi.value(u) <= phi.value(v) * (1.0 + 1e-12) + 1e-300);
      const double lambda = rng.uniform01();
      const double mix = lambda * u + (1.0 - lambda) * v;
      const double chord = lambda * phi.value(u) + (1.0 - lambda) * phi.value(v);
      CHECK(phi.value(mix) <= chord * (1.0 + 1e-10) + 1e-300);
    }
  }
}

TEST_CASE("finite differences converge to the right derivative") {
  oracles::TestRng rng(19);
  for (const char* name :
       {"phi_p2.txt", "phi_p15.txt", "phi_rot.txt", "phi_maxsq.txt"}) {
    const OrliczFunction phi = fixture(name);
    int checked = 0;
    for (int i = 0; i < 4000 && checked < 1000; ++i) {
      const double u = rng.uniform(0.0, 2.0);
      // Stay clear of junctions, where one-sided slopes differ.
      bool near_boundary = false;
      for (const PhiPiece& piece : phi.pieces())
        if (std::fabs(u - piece.start) < 1e-3) near_boundary = true;
      if (near_boundary) continue;
      const double d = phi.right_derivative(u);
      for (const double h : {1e-4, 1e-6}) {
        const double fd = (phi.value(u + h) - phi.value(u)) / h;
        if (d < 1e-9) {
          CHECK(fd <= 1e-6);  // inside the zero run
        } else {
          CHECK(std::fabs(fd / d - 1.0) < 1e-2);
        }
      }
      ++checked;
    }
    CHECK(checked == 1000);
  }
}

TEST_CASE("right derivative is nondecreasing") {
  oracles::TestRng rng(23);
  for (const char* name : {"phi_p2.txt", "phi_rot.txt", "phi_maxsq.txt"}) {
    const OrliczFunction phi = fixture(name);
    for (int i = 0; i < 1000; ++i) {
      double u = rng.uniform(0.0, 3.0);
      double v = rng.uniform(0.0, 3.0);
      if (u > v) std::swap(u, v);
      CHECK(phi.right_derivative(u) <=
            phi.right_derivative(v) * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("a_phi agrees with sampled positivity") {
  oracles::TestRng rng(29);
  for (const char* name : {"phi_p2.txt", "phi_p15.txt", "phi_maxsq.txt",
                           "phi_rot.txt", "phi_zero_half_sq.txt"}) {
    const OrliczFunction phi = fixture(name);
    bool positive_everywhere = true;
    for (int i = 0; i < 2000; ++i) {
      const double u = rng.uniform(1e-6, 3.0);
      if (phi.value(u) == 0.0) positive_everywhere = false;
    }
    if (phi.a_phi() == 0.0) CHECK(positive_everywhere);
  }
  CHECK(fixture("phi_maxsq.txt").value(0.5) == 0.0);
}

TEST_CASE("midpoint strict convexity matches the affine-interval answer") {
  const OrliczFunction rot = fixture("phi_rot.txt");
  // Pairs inside the affine interval: exact chord equality.
  oracles::TestRng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double v = rng.uniform(0.11, 0.29);
    const double w = rng.uniform(0.11, 0.29);
    const double mid = rot.value(0.5 * (v + w));
    const double chord = 0.5 * (rot.value(v) + rot.value(w));
    CHECK(std::fabs(mid - chord) <= 1e-15);
  }
  // Pairs straddling strictly convex territory: strict midpoint drop.
  for (int i = 0; i < 200; ++i) {
    const double v = rng.uniform(0.31, 0.6);
    const double w = rng.uniform(0.62, 0.9);
    const double mid = rot.value(0.5 * (v + w));
    const double chord = 0.5 * (rot.value(v) + rot.value(w));
    CHECK(mid < chord);
  }
  CHECK(!rot.is_strictly_convex_on(0.11, 0.29));
  CHECK(rot.is_strictly_convex_on(0.31, 0.9));
}

TEST_CASE("interval evaluation encloses point values") {
  oracles::TestRng rng(37);
  const OrliczFunction rot = fixture("phi_rot.txt");
  for (int i = 0; i < 1000; ++i) {
    double lo = rng.uniform(0.0, 2.0);
    double hi = rng.uniform(0.0, 2.0);
    if (lo > hi) std::swap(lo, hi);
    const Interval v = rot.value(Interval(lo, hi));
    const double inner = rng.uniform(lo, hi);
    CHECK(v.lo <= rot.value(inner));
    CHECK(v.hi >= rot.value(inner));
  }
}
