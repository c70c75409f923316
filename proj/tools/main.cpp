#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cesorl/certify.hpp"
#include "cesorl/errors.hpp"
#include "cesorl/harness.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/witness.hpp"

namespace {

using namespace cesorl;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::PARSE, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

OrliczFunction load_phi(const std::string& path) {
  return parse_phi(read_file(path));
}

Sequence load_sequence(const std::string& path) {
  return parse_sequence(read_file(path));
}

std::string base_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

int cmd_phi_check(std::ostream& out, const std::string& phi_path) {
  const OrliczFunction phi = load_phi(phi_path);
  char buf[64];
  std::snprintf(buf, sizeof buf, "a_phi: %.9g\n", phi.a_phi());
  out << buf;
  out << "sais:";
  if (phi.sais().empty()) out << " none";
  for (const AffineInterval& s : phi.sais()) {
    if (std::isinf(s.hi))
      std::snprintf(buf, sizeof buf, " [%.9g, inf)", s.lo);
    else
      std::snprintf(buf, sizeof buf, " [%.9g, %.9g]", s.lo, s.hi);
    out << buf;
  }
  out << "\n";
  out << phi.delta2_at_zero().to_text();
  out << phi.lower_index_exceeds_one().to_text();
  return kExitOk;
}

int cmd_certify(std::ostream& out, const std::string& phi_path, double tol) {
  const OrliczFunction phi = load_phi(phi_path);
  bool any_fails = false;

  const Certificate nontrivial = certify_nontrivial(phi);
  out << nontrivial.to_text() << "\n";
  any_fails |= nontrivial.verdict == Verdict::FAILS;

  const SufficientChainReport chain = check_sufficient_conditions(phi);
  Certificate chain_cert;
  chain_cert.property = Property::SUFFICIENT_CHAIN;
  chain_cert.verdict =
      chain.chain_consistent ? Verdict::HOLDS : Verdict::FAILS;
  chain_cert.constants["a_holds"] = chain.lower_index.holds() ? 1.0 : 0.0;
  chain_cert.constants["b_holds"] = chain.power_bound.holds() ? 1.0 : 0.0;
  chain_cert.constants["c_holds"] = chain.nontrivial.holds() ? 1.0 : 0.0;
  if (chain.power_bound.holds()) {
    for (const char* key : {"epsilon", "A", "u0"})
      if (chain.power_bound.constants.count(key))
        chain_cert.constants[key] = chain.power_bound.at(key);
  }
  out << chain_cert.to_text() << "\n";
  any_fails |= !chain.chain_consistent;

  struct Entry {
    Property property;
    Certificate (*run)(const OrliczFunction&, double);
  };
  const Entry entries[] = {
      {Property::ORDER_CONTINUOUS,
       [](const OrliczFunction& f, double) { return certify_order_continuity(f); }},
      {Property::STRICT_MONOTONE,
       [](const OrliczFunction& f, double t) {
         return certify_strict_monotonicity(f, t);
       }},
      {Property::UNIFORM_MONOTONE,
       [](const OrliczFunction& f, double) {
         return certify_uniform_monotonicity(f);
       }},
      {Property::ROTUND,
       [](const OrliczFunction& f, double t) { return certify_rotundity(f, t); }},
  };
  for (const Entry& entry : entries) {
    try {
      const Certificate cert = entry.run(phi, tol);
      out << cert.to_text() << "\n";
      any_fails |= cert.verdict == Verdict::FAILS;
    } catch (const Error& e) {
      out << "property: " << property_name(entry.property) << "\n";
      out << "error: " << e.what() << "\n\n";
      any_fails = true;
    }
  }
  return any_fails ? kExitPropertyFailure : kExitOk;
}

int cmd_norm(std::ostream& out, const std::string& phi_path,
             const std::string& seq_path, double tol) {
  const OrliczFunction phi = load_phi(phi_path);
  const Sequence x = load_sequence(seq_path);
  try {
    out << "norm " << to_string(luxemburg_norm(phi, x, tol)) << "\n";
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PARSE) throw;
    out << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

int cmd_modular(std::ostream& out, const std::string& phi_path,
                const std::string& seq_path, double tol) {
  const OrliczFunction phi = load_phi(phi_path);
  const Sequence x = load_sequence(seq_path);
  const Interval value = modular(phi, x, tol);
  out << "modular " << to_string(value) << "\n";
  if (value.is_infinite()) {
    if (const auto proof = divergence_proof(phi, x))
      out << "divergence: " << proof->to_text() << "\n";
  }
  return kExitOk;
}

int cmd_alpha(std::ostream& out, const std::string& phi_path, double tol) {
  const OrliczFunction phi = load_phi(phi_path);
  try {
    out << "alpha " << to_string(solve_alpha(phi, tol)) << "\n";
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PARSE) throw;
    out << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

int cmd_witness(std::ostream& out, const std::string& phi_path,
                const std::string& kind, double tol) {
  const OrliczFunction phi = load_phi(phi_path);
  try {
    WitnessPair pair;
    if (kind == "sm") {
      pair = sm_failure_witness(phi, tol);
    } else {
      const Certificate cert = certify_rotundity(phi, tol);
      if (cert.verdict != Verdict::FAILS || !cert.witness) {
        out << "no witness: rotundity verdict is "
            << verdict_name(cert.verdict) << "\n";
        return kExitPropertyFailure;
      }
      pair = *cert.witness;
    }
    const VerifyReport verify = verify_witness(phi, pair, tol * 10.0);
    out << pair.to_text();
    out << verify.to_text();
    return verify.all_pass() ? kExitOk : kExitPropertyFailure;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PARSE) throw;
    out << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
}

int cmd_suite(std::ostream& out, const std::string& phi_path, uint64_t seed,
              int trials, double tol) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.tol = tol;
  cfg.pool.push_back(load_phi(phi_path));
  cfg.pool_names.push_back(base_name(phi_path));
  try {
    bool ok = true;
    for (const SuiteReport& report : run_all_suites(cfg)) {
      out << report.to_text() << "\n";
      ok = ok && report.passed();
    }
    return ok ? kExitOk : kExitPropertyFailure;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PARSE) throw;
    out << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified toolkit for Cesaro-Orlicz sequence spaces"};
  app.require_subcommand(1);

  std::string phi_path, seq_path, out_path, kind = "sm";
  double tol = 1e-8;
  uint64_t seed = 0;
  int trials = 200;

  auto add_common = [&](CLI::App* cmd, bool with_seq) {
    cmd->add_option("phi", phi_path, "phi spec file")->required();
    if (with_seq)
      cmd->add_option("sequence", seq_path, "sequence file")->required();
    cmd->add_option("--tol", tol, "tolerance");
    cmd->add_option("--out", out_path, "write output to a file");
  };

  CLI::App* phi_check = app.add_subcommand("phi-check", "validate a phi spec");
  add_common(phi_check, false);
  CLI::App* certify = app.add_subcommand("certify", "all space certificates");
  add_common(certify, false);
  CLI::App* norm = app.add_subcommand("norm", "certified Luxemburg norm");
  add_common(norm, true);
  CLI::App* modular_cmd = app.add_subcommand("modular", "certified modular");
  add_common(modular_cmd, true);
  CLI::App* alpha = app.add_subcommand("alpha", "solve f(alpha) = 1");
  add_common(alpha, false);
  CLI::App* witness = app.add_subcommand("witness", "construct a witness pair");
  add_common(witness, false);
  witness->add_option("--kind", kind, "sm | rotund")
      ->check(CLI::IsMember({"sm", "rotund"}));
  CLI::App* suite = app.add_subcommand("suite", "run all property suites");
  add_common(suite, false);
  suite->add_option("--seed", seed, "suite seed");
  suite->add_option("--trials", trials, "trials per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    std::ofstream file_out;
    if (!out_path.empty()) {
      file_out.open(out_path);
      if (!file_out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitInputError;
      }
    }
    std::ostream& out = out_path.empty() ? std::cout : file_out;

    if (*phi_check) return cmd_phi_check(out, phi_path);
    if (*certify) return cmd_certify(out, phi_path, tol);
    if (*norm) return cmd_norm(out, phi_path, seq_path, tol);
    if (*modular_cmd) return cmd_modular(out, phi_path, seq_path, tol);
    if (*alpha) return cmd_alpha(out, phi_path, tol);
    if (*witness) return cmd_witness(out, phi_path, kind, tol);
    if (*suite) return cmd_suite(out, phi_path, seed, trials, tol);
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::PARSE ? kExitInputError
                                        : kExitPropertyFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
