#ifndef CESORL_CERTIFY_HPP
#define CESORL_CERTIFY_HPP

#include <string>

#include "cesorl/certificate.hpp"
#include "cesorl/interval.hpp"
#include "cesorl/orlicz_function.hpp"

namespace cesorl {

// Nontriviality of ces_phi, decided exactly from the first piece: a zero
// run or power start gives sum phi(1/n) < inf with n1 = 1, a positive
// slope at the origin gives harmonic divergence and a trivial space.
Certificate certify_nontrivial(const OrliczFunction& phi);

// Smallest n with a certifiably finite tail sum_{n >= n_k} phi(k/n).
// Throws Error(TRIVIAL_SPACE) for a trivial space.
size_t nontrivial_n_k(const OrliczFunction& phi, double k);

// The implication chain: lower index > 1  =>  power bound
// phi(u) <= A u^(1+eps) near 0  =>  nontriviality.
struct SufficientChainReport {
  Certificate lower_index;   // (a)
  Certificate power_bound;   // (b), carries (eps, A, u0) when derivable
  Certificate nontrivial;    // (c)
  bool chain_consistent = false;
  std::string to_text() const;
};

SufficientChainReport check_sufficient_conditions(const OrliczFunction& phi);

Certificate certify_order_continuity(const OrliczFunction& phi);
Certificate certify_strict_monotonicity(const OrliczFunction& phi,
                                        double tol = 1e-8);
Certificate certify_uniform_monotonicity(const OrliczFunction& phi);

// f(a) = 2 phi(a) + sum_{i>=3} phi(2a/i), certified.
Interval eval_alpha_function(const OrliczFunction& phi, double a, double eps);

// The root of f(alpha) = 1 bracketed to width <= tol, with
// f(result.lo) < 1 < f(result.hi) certified.
Interval solve_alpha(const OrliczFunction& phi, double tol);

// Rotundity per the strict-convexity-on-[0,alpha] criterion.  Requires
// Delta2(0) (throws Error(DELTA2_REQUIRED) otherwise); FAILS carries the
// offending affine interval and a verified witness pair.
Certificate certify_rotundity(const OrliczFunction& phi, double tol = 1e-8);

}  // namespace cesorl

#endif
