#ifndef CESORL_WITNESS_HPP
#define CESORL_WITNESS_HPP

#include <string>
#include <vector>

#include "cesorl/interval.hpp"
#include "cesorl/orlicz_function.hpp"
#include "cesorl/sequence.hpp"

namespace cesorl {

enum class WitnessKind { SM_FAILURE, ROTUNDITY_FAILURE };

struct WitnessCheck {
  std::string name;
  double target = 0.0;
  Interval achieved;
  bool pass = false;
};

// Two concrete sequences exhibiting a property failure, together with the
// verified relations between them.
struct WitnessPair {
  Sequence x;
  Sequence y;
  WitnessKind kind = WitnessKind::SM_FAILURE;
  std::vector<WitnessCheck> checks;
  std::string branch_note;

  bool all_pass() const;
  std::string to_text() const;
};

// Strict-monotonicity failure for a_phi > 0: x = (c,0,...) with
// sum phi(c/n) = 1, y = x plus a 1 at the first slot n0 where
// (c+1)/n0 <= a_phi, so both modulars (and norms) equal 1.
WitnessPair sm_failure_witness(const OrliczFunction& phi, double tol);

// Rotundity failure from an affine interval inside (0, alpha): the
// four-point construction whose x, y and midpoint all have modular 1.
WitnessPair rotundity_failure_witness(const OrliczFunction& phi,
                                      const AffineInterval& sai,
                                      const Interval& alpha, double tol);

struct VerifyReport {
  std::vector<WitnessCheck> checks;
  bool all_pass() const;
  std::string to_text() const;
};

// Recomputes every witness relation with fresh certified modulars and
// norms; failures are report entries, not errors.
VerifyReport verify_witness(const OrliczFunction& phi, const WitnessPair& w,
                            double tol);

}  // namespace cesorl

#endif
