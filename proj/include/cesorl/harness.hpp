#ifndef CESORL_HARNESS_HPP
#define CESORL_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cesorl/orlicz_function.hpp"

namespace cesorl {

struct GeneratorParams {
  size_t support_min = 1;
  size_t support_max = 12;
  double magnitude = 2.0;         // head coordinates drawn in [-m, m]
  double tail_probability = 0.35;
  double tail_c_max = 1.0;
  double gamma_lo = 0.2;
  double gamma_hi = 0.7;
};

// Seeded trial configuration; the same config reproduces the same report
// byte for byte.
struct SuiteConfig {
  uint64_t seed = 0;
  int trials = 200;
  double tol = 1e-6;
  std::vector<OrliczFunction> pool;
  std::vector<std::string> pool_names;  // parallel to pool; optional
  GeneratorParams gen;

  int fatou_ladder_max = 64;    // truncation sizes 1, 2, 4, ..., max
  int oc_ladder_max = 64;       // dropped prefixes 1, 2, 4, ..., max
  int scaling_steps = 10;       // halving/doubling ladder length

  // Self-check knob: flips the superadditivity check direction so the
  // mutation test can confirm the suite is not vacuous.
  bool invert_superadditivity = false;
};

struct SuiteFailure {
  std::string suite;
  std::string phi;
  int trial = 0;
  uint64_t trial_seed = 0;
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  int trials = 0;
  std::vector<SuiteFailure> failures;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
  std::string to_text() const;
};

SuiteReport run_koethe_suite(const SuiteConfig& cfg);
SuiteReport run_fatou_suite(const SuiteConfig& cfg);
SuiteReport run_order_continuity_suite(const SuiteConfig& cfg);
SuiteReport run_norm_modular_suite(const SuiteConfig& cfg);
SuiteReport run_monotonicity_suite(const SuiteConfig& cfg);

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg);

}  // namespace cesorl

#endif
