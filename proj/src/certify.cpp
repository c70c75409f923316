#include "cesorl/certify.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include "cesorl/errors.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/root_find.hpp"
#include "cesorl/witness.hpp"

namespace cesorl {

const char* property_name(Property p) {
  switch (p) {
    case Property::DELTA2_ZERO: return "DELTA2_ZERO";
    case Property::LOWER_INDEX: return "LOWER_INDEX";
    case Property::NONTRIVIAL: return "NONTRIVIAL";
    case Property::SUFFICIENT_CHAIN: return "SUFFICIENT_CHAIN";
    case Property::ORDER_CONTINUOUS: return "ORDER_CONTINUOUS";
    case Property::STRICT_MONOTONE: return "STRICT_MONOTONE";
    case Property::UNIFORM_MONOTONE: return "UNIFORM_MONOTONE";
    case Property::ROTUND: return "ROTUND";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::HOLDS: return "HOLDS";
    case Verdict::FAILS: return "FAILS";
    case Verdict::UNKNOWN: return "UNKNOWN";
    case Verdict::NOT_APPLICABLE: return "NOT_APPLICABLE";
  }
  return "?";
}

double Certificate::at(const std::string& key) const {
  const auto it = constants.find(key);
  if (it == constants.end())
    throw Error(ErrorCode::PRECONDITION, "missing certificate constant " + key);
  return it->second;
}

std::string Certificate::to_text() const {
  std::ostringstream out;
  out << "property: " << property_name(property) << "\n";
  out << "verdict: " << verdict_name(verdict) << "\n";
  if (!constants.empty()) {
    out << "constants:";
    for (const auto& [k, v] : constants) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " %s=%.9g", k.c_str(), v);
      out << buf;
    }
    out << "\n";
  }
  if (!note.empty()) out << "note: " << note << "\n";
  if (witness) {
    std::istringstream lines(witness->to_text());
    std::string line;
    while (std::getline(lines, line)) out << "witness: " << line << "\n";
  }
  return out.str();
}

Certificate certify_nontrivial(const OrliczFunction& phi) {
  Certificate cert;
  cert.property = Property::NONTRIVIAL;
  if (phi.starts_with_positive_slope()) {
    const auto proof = divergence_proof(phi, Sequence::unit(1));
    cert.verdict = Verdict::FAILS;
    cert.constants["slope"] = phi.pieces().front().slope;
    cert.note = "sum phi(1/n) diverges: " + proof->to_text() +
                "; ces_phi = {0}";
    return cert;
  }
  // Zero run or power start: sum_{n>=1} phi(1/n) is certifiably finite.
  const Interval sum = modular(phi, Sequence::unit(1), 1e-10);
  cert.verdict = Verdict::HOLDS;
  cert.constants["n1"] = 1.0;
  cert.constants["sum_lo"] = sum.lo;
  cert.constants["sum_hi"] = sum.hi;
  return cert;
}

size_t nontrivial_n_k(const OrliczFunction& phi, double k) {
  if (!(k > 0.0))
    throw Error(ErrorCode::PRECONDITION, "n_k needs k > 0");
  if (phi.starts_with_positive_slope())
    throw Error(ErrorCode::TRIVIAL_SPACE, "sum phi(k/n) diverges for all k");
  const double boundary = phi.origin_domain_end();
  if (std::isinf(boundary)) return 1;
  size_t n = static_cast<size_t>(std::max(1.0, std::ceil(k / boundary)));
  while (k / static_cast<double>(n) > boundary) ++n;
  return n;
}

SufficientChainReport check_sufficient_conditions(const OrliczFunction& phi) {
  SufficientChainReport report;
  report.lower_index = phi.lower_index_exceeds_one();
  report.nontrivial = certify_nontrivial(phi);

  Certificate& b = report.power_bound;
  b.property = Property::SUFFICIENT_CHAIN;
  switch (report.lower_index.verdict) {
    case Verdict::HOLDS:
      b.verdict = Verdict::HOLDS;
      b.constants["epsilon"] = report.lower_index.at("epsilon");
      b.constants["A"] = report.lower_index.at("A");
      b.constants["u0"] = report.lower_index.at("u0");
      break;
    case Verdict::NOT_APPLICABLE:
      // phi = 0 on [0, a_phi], so any power bound holds vacuously there.
      b.verdict = Verdict::HOLDS;
      b.constants["epsilon"] = 1.0;
      b.constants["A"] = 1.0;
      b.constants["u0"] = phi.a_phi();
      b.note = "vacuous on the zero run";
      break;
    case Verdict::FAILS:
    case Verdict::UNKNOWN:
      // A positive slope at 0 defeats phi(u) <= A u^(1+eps) as u -> 0.
      b.verdict = Verdict::FAILS;
      b.constants["slope"] = phi.pieces().front().slope;
      break;
  }

  const bool a_holds = report.lower_index.holds();
  const bool b_holds = b.holds();
  const bool c_holds = report.nontrivial.holds();
  report.chain_consistent = (!a_holds || b_holds) && (!b_holds || c_holds);
  return report;
}

std::string SufficientChainReport::to_text() const {
  std::ostringstream out;
  out << "(a) lower index > 1\n" << lower_index.to_text();
  out << "(b) power bound near 0\n" << power_bound.to_text();
  out << "(c) nontriviality\n" << nontrivial.to_text();
  out << "chain (a)=>(b)=>(c): "
      << (chain_consistent ? "consistent" : "VIOLATED") << "\n";
  return out.str();
}

namespace {

void require_nontrivial(const OrliczFunction& phi) {
  if (phi.starts_with_positive_slope())
    throw Error(ErrorCode::TRIVIAL_SPACE,
                "ces_phi = {0}: sum phi(1/n) diverges");
}

}  // namespace

Certificate certify_order_continuity(const OrliczFunction& phi) {
  require_nontrivial(phi);
  const Certificate d2 = phi.delta2_at_zero();
  Certificate cert;
  cert.property = Property::ORDER_CONTINUOUS;
  if (d2.holds()) {
    cert.verdict = Verdict::HOLDS;
    cert.constants["K"] = d2.at("K");
    cert.constants["a"] = d2.at("a");
    cert.note = "Delta2(0) holds, so A_phi = ces_phi and the space is "
                "order continuous";
  } else {
    cert.verdict = Verdict::UNKNOWN;
    cert.note = "Delta2(0) fails; only sufficiency is available";
  }
  return cert;
}

Certificate certify_strict_monotonicity(const OrliczFunction& phi,
                                        double tol) {
  require_nontrivial(phi);
  Certificate cert;
  cert.property = Property::STRICT_MONOTONE;
  if (phi.a_phi() == 0.0) {
    cert.verdict = Verdict::HOLDS;
    cert.constants["a_phi"] = 0.0;
    cert.note = phi.delta2_at_zero().holds()
                    ? "phi > 0; holds for A_phi = ces_phi under Delta2(0)"
                    : "phi > 0; stated for A_phi";
    return cert;
  }
  cert.verdict = Verdict::FAILS;
  cert.constants["a_phi"] = phi.a_phi();
  auto w = std::make_shared<WitnessPair>(sm_failure_witness(phi, tol));
  cert.constants["c"] = w->checks[2].target;
  cert.constants["n0"] = w->checks[3].target;
  cert.witness = w;
  return cert;
}

Certificate certify_uniform_monotonicity(const OrliczFunction& phi) {
  require_nontrivial(phi);
  const Certificate d2 = phi.delta2_at_zero();
  Certificate cert;
  cert.property = Property::UNIFORM_MONOTONE;
  if (d2.holds()) {
    cert.verdict = Verdict::HOLDS;
    cert.constants["K"] = d2.at("K");
    cert.constants["a"] = d2.at("a");
    cert.note = "delta(eps) exists but is not constructed; "
                "run_monotonicity_suite estimates it empirically";
  } else {
    cert.verdict = Verdict::UNKNOWN;
    cert.note = "Delta2(0) fails; only sufficiency is available";
  }
  return cert;
}

Interval eval_alpha_function(const OrliczFunction& phi, double a, double eps) {
  if (a < 0.0)
    throw Error(ErrorCode::PRECONDITION, "alpha function needs a >= 0");
  if (a == 0.0) return Interval(0.0);
  return 2.0 * phi.value(Interval(a)) +
         modular_from(phi, Sequence({2.0 * a}), 3, eps);
}

Interval solve_alpha(const OrliczFunction& phi, double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::PRECONDITION, "tolerance must be positive");
  require_nontrivial(phi);
  auto f_at = [&](double a, double eps) {
    return eval_alpha_function(phi, a, eps);
  };
  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * phi.a_phi());
  for (int i = 0; side_of_one(f_at, hi) != RootSide::ABOVE; ++i) {
    hi *= 2.0;
    if (i > 200)
      throw Error(ErrorCode::PRECONDITION, "could not bracket f(alpha) = 1");
  }
  if (!bisect_to_one(f_at, lo, hi, tol))
    throw Error(ErrorCode::UNDECIDABLE,
                "f(a) cannot be separated from 1 at the eps floor");
  return Interval(lo, hi);
}

Certificate certify_rotundity(const OrliczFunction& phi, double tol) {
  require_nontrivial(phi);
  if (!phi.delta2_at_zero().holds())
    throw Error(ErrorCode::DELTA2_REQUIRED,
                "the rotundity criterion assumes Delta2(0)");

  Certificate cert;
  cert.property = Property::ROTUND;
  double cur_tol = tol;
  for (;;) {
    const Interval alpha = solve_alpha(phi, cur_tol);
    cert.constants["alpha_lo"] = alpha.lo;
    cert.constants["alpha_hi"] = alpha.hi;

    // Definite failure: an affine interval reaches strictly below alpha
    // with enough room for the witness margins.
    const AffineInterval* offending = nullptr;
    bool boundary_contact = false;
    for (const AffineInterval& sai : phi.sais()) {
      const double room = std::min(sai.hi, alpha.lo) - std::max(sai.lo, 0.0);
      if (sai.lo < alpha.lo && room >= 1e-6) {
        offending = &sai;
        break;
      }
      if (sai.lo <= alpha.hi) boundary_contact = true;
    }
    if (offending != nullptr) {
      cert.verdict = Verdict::FAILS;
      cert.constants["sai_lo"] = offending->lo;
      cert.constants["sai_hi"] = offending->hi;
      cert.witness = std::make_shared<WitnessPair>(
          rotundity_failure_witness(phi, *offending, alpha, tol));
      cert.note = "phi is affine inside (0, alpha)";
      return cert;
    }
    if (!boundary_contact) {
      cert.verdict = Verdict::HOLDS;
      cert.note = "phi strictly convex on [0, alpha]";
      return cert;
    }
    if (cur_tol > 1e-13) {
      cur_tol = std::max(1e-13, cur_tol * 1e-2);
      continue;
    }
    cert.verdict = Verdict::UNKNOWN;
    cert.note = "UNKNOWN_BOUNDARY: an affine interval endpoint falls inside "
                "the alpha bracket at the tolerance floor";
    return cert;
  }
}

}  // namespace cesorl
