#ifndef CESORL_INTERVAL_HPP
#define CESORL_INTERVAL_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

namespace cesorl {

// Closed interval [lo, hi] certifying that an exact real quantity lies
// inside it.  All arithmetic is plain double with an outward slack of at
// least 4 ulps folded into every result, so the enclosure survives
// round-to-nearest without directed rounding.  The distinguished value
// INFINITE (lo == hi == +inf) marks a quantity proven to diverge; it
// propagates through + and * with nonnegative operands.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) { assert(l <= h); }

  static Interval infinite() {
    const double inf = std::numeric_limits<double>::infinity();
    return Interval(inf, inf);
  }

  bool is_infinite() const { return std::isinf(lo); }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

namespace detail {

// Outward nudge of >= 4 ulps per bound.  4*eps*|x| dominates 4 ulp(x) for
// normalized doubles; the additive term covers the denormal range.
inline double nudge_down(double x) {
  if (std::isinf(x)) return x;
  return x - 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x) -
         4.0 * std::numeric_limits<double>::denorm_min();
}

inline double nudge_up(double x) {
  if (std::isinf(x)) return x;
  return x + 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x) +
         4.0 * std::numeric_limits<double>::denorm_min();
}

}  // namespace detail

inline Interval widen(const Interval& a) {
  if (a.is_infinite()) return a;
  return Interval(detail::nudge_down(a.lo), detail::nudge_up(a.hi));
}

inline Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_infinite() || b.is_infinite()) return Interval::infinite();
  return widen(Interval(a.lo + b.lo, a.hi + b.hi));
}

inline Interval operator-(const Interval& a, const Interval& b) {
  assert(!a.is_infinite() && !b.is_infinite());
  return widen(Interval(a.lo - b.hi, a.hi - b.lo));
}

inline Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_infinite() || b.is_infinite()) {
    assert(a.lo >= 0.0 && b.lo >= 0.0);
    return Interval::infinite();
  }
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return widen(Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                        std::max(std::max(p1, p2), std::max(p3, p4))));
}

inline Interval operator*(double s, const Interval& a) { return Interval(s) * a; }

// Division by an interval bounded away from zero.
inline Interval operator/(const Interval& a, const Interval& b) {
  assert(!b.is_infinite() && (b.lo > 0.0 || b.hi < 0.0));
  if (a.is_infinite()) {
    assert(b.lo > 0.0);
    return Interval::infinite();
  }
  const double p1 = a.lo / b.lo, p2 = a.lo / b.hi;
  const double p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  return widen(Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                        std::max(std::max(p1, p2), std::max(p3, p4))));
}

// u^p for u >= 0; monotone in u either way depending on the sign of p.
inline Interval pow_nonneg(const Interval& u, double p) {
  assert(u.lo >= 0.0);
  if (u.is_infinite()) return p > 0.0 ? Interval::infinite() : Interval(0.0);
  const double a = std::pow(u.lo, p);
  const double b = std::pow(u.hi, p);
  return widen(Interval(std::min(a, b), std::max(a, b)));
}

inline Interval hull(const Interval& a, const Interval& b) {
  if (a.is_infinite() || b.is_infinite()) return Interval::infinite();
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// Both arguments must certify the same quantity; the intersection is then a
// valid (tighter) certificate.
inline Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  assert(lo <= hi && "intersecting certificates of different quantities");
  if (lo > hi) return a.width() <= b.width() ? a : b;
  return Interval(lo, hi);
}

inline Interval max_zero(const Interval& a) {
  if (a.is_infinite()) return a;
  return Interval(std::max(a.lo, 0.0), std::max(a.hi, 0.0));
}

// "[lo, hi]" with 9 significant digits, or "INFINITE".
std::string to_string(const Interval& v);

}  // namespace cesorl

#endif
