#ifndef CESORL_TESTS_ORACLES_HPP
#define CESORL_TESTS_ORACLES_HPP

// Independent reference computations for the expected values asserted in
// the tests.  Everything here works by direct high-precision summation
// plus elementary integral-test remainders, never through the library's
// certified evaluation paths.

#include <cmath>
#include <cstdint>
#include <vector>

#include "cesorl/interval.hpp"
#include "cesorl/orlicz_function.hpp"
#include "cesorl/sequence.hpp"

namespace oracles {

// Bracket for sum_{n>=1} n^-p from a long-double partial sum and the
// integral-test remainder  int_{N+1}^inf <= tail <= (N+1)^-p + int.
inline cesorl::Interval p_series(double p, long terms = 1000000) {
  long double sum = 0.0L;
  for (long n = 1; n <= terms; ++n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(p));
  const long double next = static_cast<long double>(terms + 1);
  const long double integral = std::pow(next, 1.0L - p) / (p - 1.0L);
  const long double tail_lo = integral;
  const long double tail_hi = std::pow(next, -static_cast<long double>(p)) + integral;
  return cesorl::Interval(static_cast<double>(sum + tail_lo) * (1.0 - 1e-13),
                          static_cast<double>(sum + tail_hi) * (1.0 + 1e-13));
}

inline double zeta2() { return p_series(2.0).mid(); }  // pi^2/6

// Brute-force modular for a finite-support sequence under phi = u^p:
// 10^6 explicit terms plus the analytic p-series tail for the constant
// partial-sum region.
inline cesorl::Interval brute_modular_power(const cesorl::Sequence& x,
                                            double p, long terms = 1000000) {
  long double sum = 0.0L;
  long double S = 0.0L;
  const size_t m = x.head_size();
  for (long n = 1; n <= terms; ++n) {
    if (static_cast<size_t>(n) <= m) S += std::fabs(x.coord(n));
    sum += std::pow(S / static_cast<long double>(n), static_cast<long double>(p));
  }
  const long double next = static_cast<long double>(terms + 1);
  const long double integral = std::pow(next, 1.0L - p) / (p - 1.0L);
  const long double Sp = std::pow(S, static_cast<long double>(p));
  const long double lo = sum + Sp * integral;
  const long double hi = sum + Sp * (std::pow(next, -static_cast<long double>(p)) + integral);
  return cesorl::Interval(static_cast<double>(lo) * (1.0 - 1e-11),
                          static_cast<double>(hi) * (1.0 + 1e-11));
}

// Direct evaluation of f(a) = 2 phi(a) + sum_{i>=3} phi(2a/i) by explicit
// summation; valid brackets need the remainder handled by the caller, so
// this returns the partial sum over i in [3, terms] plus 2 phi(a).
inline double alpha_function_partial(const cesorl::OrliczFunction& phi,
                                     double a, long terms) {
  long double sum = 2.0L * phi.value(a);
  for (long i = 3; i <= terms; ++i)
    sum += phi.value(2.0 * a / static_cast<double>(i));
  return static_cast<double>(sum);
}

// Deterministic xorshift-style generator for test sampling, independent of
// the library's harness generator.
struct TestRng {
  uint64_t state;
  explicit TestRng(uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
};

}  // namespace oracles

#endif
