#ifndef CESORL_MODULAR_HPP
#define CESORL_MODULAR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cesorl/interval.hpp"
#include "cesorl/orlicz_function.hpp"
#include "cesorl/sequence.hpp"

namespace cesorl {

// sigma x(n) = S_n / n from the closed-form partial sums.
double cesaro_mean(const Sequence& x, size_t n);

// Integral-test bracket for sum_{n>=N} phi(s_n/n) when every per-term
// partial sum s_n lies in [s_lo, s_hi] and s_hi/N falls inside the first
// piece of phi.  Power first piece a u^p: the p-series bracket
// [a s_lo^p N^(1-p)/(p-1), a s_hi^p (N^-p + N^(1-p)/(p-1))]; zero first
// run with s_hi/N <= a_phi: exactly [0,0]; positive slope at the origin
// with s_lo > 0: INFINITE by harmonic comparison.
Interval modular_tail_bound(const OrliczFunction& phi, double s_lo,
                            double s_hi, size_t N);

// rho_phi(x) = sum_n phi(sigma x(n)) with certified width <= eps, or
// INFINITE when divergence is proven.
Interval modular(const OrliczFunction& phi, const Sequence& x, double eps);

// rho_phi(x / lambda) for every lambda in the given interval.
Interval modular_scaled(const OrliczFunction& phi, const Sequence& x,
                        const Interval& lambda, double eps);

// sum_{n>=from_n} phi(sigma x(n)), the tail of the modular series.
Interval modular_from(const OrliczFunction& phi, const Sequence& x,
                      size_t from_n, double eps);

// Why rho_phi(kx) = INFINITE for every k > 0: phi(u) >= slope*u globally,
// so the terms dominate a harmonic tail once the partial sums reach s_lower.
struct DivergenceProof {
  double slope = 0.0;
  size_t from_n = 1;
  double s_lower = 0.0;
  std::string to_text() const;
};

std::optional<DivergenceProof> divergence_proof(const OrliczFunction& phi,
                                                const Sequence& x);

// Certified Luxemburg norm inf{lambda > 0 : rho_phi(x/lambda) <= 1} via
// bracketing bisection; [0,0] for x = 0.  Throws Error(NO_FINITE_SCALING)
// when no scaling has a finite modular.
Interval luxemburg_norm(const OrliczFunction& phi, const Sequence& x,
                        double tol);

struct GapCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// The norm/modular bridge inequalities, each checked against the certified
// intervals (a check fails only when the intervals refute it).
struct NormModularGap {
  Interval modular_value;
  Interval norm_value;
  std::vector<GapCheck> checks;
  bool all_pass() const;
};

NormModularGap norm_modular_gap(const OrliczFunction& phi, const Sequence& x,
                                double tol = 1e-8);

}  // namespace cesorl

#endif
