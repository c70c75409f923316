#ifndef CESORL_SEQUENCE_HPP
#define CESORL_SEQUENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cesorl/interval.hpp"

namespace cesorl {

// Geometric continuation x(i) = c * gamma^(i-m) for i > m, 0 < gamma < 1,
// anchored at the head length m.
struct GeometricTail {
  double c = 0.0;
  double gamma = 0.5;
};

// A real sequence with finite head plus optional geometric tail.  Partial
// sums of |x(i)| are available in closed form for every n, which is what
// keeps the modular computable.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<double> head,
                    std::optional<GeometricTail> tail = std::nullopt);

  static Sequence unit(size_t position);  // e_position

  const std::vector<double>& head() const { return head_; }
  const std::optional<GeometricTail>& tail() const { return tail_; }
  size_t head_size() const { return head_.size(); }
  bool finite_support() const { return !tail_.has_value(); }
  bool is_zero() const;

  double coord(size_t i) const;  // 1-based

  // S_n = sum_{i<=n} |x(i)| and S_inf, as certified enclosures.
  Interval abs_prefix_sum(size_t n) const;
  Interval abs_total() const;
  // Plain-double S_n from the same closed forms.
  double abs_prefix_sum_value(size_t n) const;
  // Smallest i with x(i) != 0, or 0 for the zero sequence.
  size_t first_nonzero() const;

  Sequence scaled(double s) const;
  Sequence truncated(size_t k) const;  // first k coordinates, finite support
  Sequence drop_first(size_t n) const; // (0,...,0, x(n+1), x(n+2), ...)
  // Coordinatewise sum; requires finite supports or equal gammas.
  Sequence plus(const Sequence& other) const;
  // (x + y) / 2 under the same representability constraint.
  static Sequence midpoint(const Sequence& x, const Sequence& y);

  std::string to_text() const;

 private:
  std::vector<double> head_;
  std::optional<GeometricTail> tail_;
  std::vector<Interval> prefix_;  // prefix_[i] = S_{i+1} over the head
};

// Parses the sequence file format: `head <real> ...` plus an optional
// `tail c=<real> gamma=<real>` line; '#' comments.
Sequence parse_sequence(const std::string& text);

}  // namespace cesorl

#endif
