#ifndef CESORL_CERTIFICATE_HPP
#define CESORL_CERTIFICATE_HPP

#include <map>
#include <memory>
#include <string>

namespace cesorl {

struct WitnessPair;

enum class Property {
  DELTA2_ZERO,
  LOWER_INDEX,
  NONTRIVIAL,
  SUFFICIENT_CHAIN,
  ORDER_CONTINUOUS,
  STRICT_MONOTONE,
  UNIFORM_MONOTONE,
  ROTUND,
};

enum class Verdict { HOLDS, FAILS, UNKNOWN, NOT_APPLICABLE };

const char* property_name(Property p);
const char* verdict_name(Verdict v);

// Verdict for one space property together with the data that justifies it.
// Every HOLDS/FAILS constant is chosen so that re-checking its defining
// inequality numerically succeeds (the test suites do exactly that).
struct Certificate {
  Property property;
  Verdict verdict;
  std::map<std::string, double> constants;
  std::string note;
  std::shared_ptr<const WitnessPair> witness;

  bool holds() const { return verdict == Verdict::HOLDS; }
  double at(const std::string& key) const;

  // Stable text form: property/verdict lines, sorted name=value constants,
  // optional note and inline witness block.
  std::string to_text() const;
};

}  // namespace cesorl

#endif
