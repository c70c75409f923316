#ifndef CESORL_ROOT_FIND_HPP
#define CESORL_ROOT_FIND_HPP

#include <limits>

#include "cesorl/interval.hpp"

namespace cesorl {

enum class RootSide { BELOW, ABOVE, AT };

// Certified side of eval(arg, eps) relative to 1, tightening eps by factors
// of 10 down to 1e-14 while the enclosure straddles the threshold.  AT means
// the value cannot be separated from 1 at the working-precision floor.
template <typename Eval>
RootSide side_of_one(const Eval& eval, double arg) {
  double eps = 1e-6;
  for (;;) {
    const Interval v = eval(arg, eps);
    if (v.is_infinite() || v.lo > 1.0) return RootSide::ABOVE;
    if (v.hi <= 1.0) return RootSide::BELOW;
    // width > eps means the evaluator hit its own precision floor.
    if (eps <= 1e-14 || v.width() > eps) return RootSide::AT;
    eps *= 0.1;
  }
}

// Bisection for the root of a nondecreasing certified map against 1 from a
// certified bracket (eval below 1 at lo, above 1 at hi).  Returns false if
// an undecidable midpoint was hit; lo == hi == mid then.
template <typename Eval>
bool bisect_to_one(const Eval& eval, double& lo, double& hi, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    switch (side_of_one(eval, mid)) {
      case RootSide::BELOW: lo = mid; break;
      case RootSide::ABOVE: hi = mid; break;
      case RootSide::AT: lo = hi = mid; return false;
    }
  }
  return true;
}

}  // namespace cesorl

#endif
