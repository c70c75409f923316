#ifndef CESORL_ORLICZ_FUNCTION_HPP
#define CESORL_ORLICZ_FUNCTION_HPP

#include <limits>
#include <string>
#include <vector>

#include "cesorl/certificate.hpp"
#include "cesorl/interval.hpp"

namespace cesorl {

// One piece of a piecewise convex specification, valid on [start, next start).
// Piece value: base + slope*(u - start) + coeff*(u - start)^exponent, with
// base fixed by continuity from the previous piece (0 for the first).
struct PhiPiece {
  double start = 0.0;
  double slope = 0.0;     // right slope carried into the piece
  double coeff = 0.0;     // a >= 0; power term disabled when 0
  double exponent = 1.0;  // p >= 1; p > 1 whenever coeff > 0
  double base = 0.0;      // derived, not part of the input format
};

// Maximal interval on which phi is affine; hi may be +inf.
struct AffineInterval {
  double lo = 0.0;
  double hi = 0.0;
  double slope = 0.0;
  bool unbounded() const { return std::isinf(hi); }
};

// An even convex function on R+, phi(0) = 0, phi(u) -> inf, represented as
// validated pieces.  Immutable after construction; all operations are pure.
class OrliczFunction {
 public:
  // Validates the piece list; throws Error(PARSE) naming the 1-based piece
  // index and the violated invariant.
  explicit OrliczFunction(std::vector<PhiPiece> pieces);

  double value(double u) const;            // takes |u|
  Interval value(const Interval& u) const; // u.lo >= 0, certified enclosure
  double right_derivative(double u) const; // takes |u|

  double a_phi() const { return a_phi_; }
  const std::vector<AffineInterval>& sais() const { return sais_; }
  const std::vector<PhiPiece>& pieces() const { return pieces_; }

  // True iff no structurally affine interval's interior meets (l, r).
  bool is_strictly_convex_on(double l, double r) const;

  Certificate delta2_at_zero() const;
  Certificate lower_index_exceeds_one() const;

  // First-piece shape, which decides nontriviality and tail behavior.
  bool starts_with_zero_piece() const { return a_phi_ > 0.0; }
  bool starts_with_power_piece() const;  // a > 0, slope 0 at the origin
  bool starts_with_positive_slope() const { return pieces_.front().slope > 0.0; }

  // Right endpoint of the first piece (+inf for a single piece).
  double first_boundary() const;
  // For a zero first run, the end of the run (== a_phi); otherwise the
  // first boundary.  Arguments below this are governed by the origin piece.
  double origin_domain_end() const;

 private:
  const PhiPiece& piece_at(double u) const;

  std::vector<PhiPiece> pieces_;
  double a_phi_ = 0.0;
  std::vector<AffineInterval> sais_;
};

// Parses the phi file format: one `piece start=... slope=... coeff=... exp=...`
// per line, '#' comments, lines sorted by start, first start 0.
OrliczFunction parse_phi(const std::string& spec_text);

}  // namespace cesorl

#endif
