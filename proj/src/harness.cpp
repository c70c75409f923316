#include "cesorl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "cesorl/certify.hpp"
#include "cesorl/errors.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/witness.hpp"

namespace cesorl {

namespace {

uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

uint64_t trial_seed_of(const SuiteConfig& cfg, const std::string& suite,
                       size_t phi_idx, int trial) {
  uint64_t s = cfg.seed ^ fnv1a(suite);
  s = splitmix64(s + 0x1000 * phi_idx);
  s = splitmix64(s + static_cast<uint64_t>(trial));
  return s;
}

// Distributions hand-rolled over the engine output: the standard library
// leaves std::uniform_real_distribution implementation-defined, and the
// report must be byte-identical across toolchains.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * uniform01(rng);
}

size_t uniform_index(std::mt19937_64& rng, size_t lo, size_t hi) {
  return lo + static_cast<size_t>(rng() % (hi - lo + 1));
}

struct Draw {
  bool nonneg = false;
  bool force_tail = false;
  bool forbid_tail = false;
};

Sequence draw_sequence(std::mt19937_64& rng, const GeneratorParams& g,
                       const Draw& d) {
  for (;;) {
    const size_t m = uniform_index(rng, g.support_min, g.support_max);
    std::vector<double> head(m);
    for (double& v : head) {
      v = uniform(rng, d.nonneg ? 0.0 : -g.magnitude, g.magnitude);
    }
    std::optional<GeometricTail> tail;
    const bool want_tail =
        d.force_tail || (!d.forbid_tail && uniform01(rng) < g.tail_probability);
    if (want_tail) {
      double c = uniform(rng, 0.05, g.tail_c_max);
      if (!d.nonneg && uniform01(rng) < 0.5) c = -c;
      tail = GeometricTail{c, uniform(rng, g.gamma_lo, g.gamma_hi)};
    }
    Sequence x(std::move(head), tail);
    if (x.abs_total().lo > 1e-3) return x;
  }
}

struct Runner {
  const SuiteConfig& cfg;
  SuiteReport report;

  Runner(const SuiteConfig& c, const std::string& suite) : cfg(c) {
    report.suite = suite;
    report.trials = c.trials;
    report.seed = c.seed;
  }

  std::string phi_name(size_t idx) const {
    if (idx < cfg.pool_names.size()) return cfg.pool_names[idx];
    return "phi" + std::to_string(idx + 1);
  }

  void fail(const std::string& phi, int trial, uint64_t seed,
            const std::string& check, double lhs, double rhs) {
    report.failures.push_back({report.suite, phi, trial, seed, check, lhs, rhs});
  }

  void note(const std::string& text) { report.notes.push_back(text); }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "suite: " << suite << "\n";
  out << "seed: " << seed << "\n";
  out << "trials: " << trials << "\n";
  for (const SuiteFailure& f : failures) {
    out << "fail suite=" << f.suite << " phi=" << f.phi << " trial=" << f.trial
        << " seed=" << f.trial_seed << " check=" << f.check
        << " lhs=" << fmt(f.lhs) << " rhs=" << fmt(f.rhs) << "\n";
  }
  for (const std::string& n : notes) out << "note: " << n << "\n";
  out << "summary: suite=" << suite << " trials=" << trials
      << " failures=" << failures.size() << "\n";
  return out.str();
}

SuiteReport run_koethe_suite(const SuiteConfig& cfg) {
  Runner r(cfg, "koethe");
  for (size_t pi = 0; pi < cfg.pool.size(); ++pi) {
    const OrliczFunction& phi = cfg.pool[pi];
    if (!certify_nontrivial(phi).holds())
      throw Error(ErrorCode::TRIVIAL_SPACE,
                  "koethe suite needs a nontrivial pool");
    for (int t = 0; t < cfg.trials; ++t) {
      const uint64_t seed = trial_seed_of(cfg, r.report.suite, pi, t);
      std::mt19937_64 rng(seed);
      const Sequence y = draw_sequence(rng, cfg.gen, {});
      // |x| <= |y| coordinatewise by per-coordinate shrink factors.
      std::vector<double> head(y.head());
      for (double& v : head) v *= uniform01(rng);
      std::optional<GeometricTail> tail = y.tail();
      if (tail) tail->c *= uniform01(rng);
      const Sequence x(std::move(head), tail);

      const Interval rho_x = modular(phi, x, cfg.tol);
      if (rho_x.is_infinite())
        r.fail(r.phi_name(pi), t, seed, "x_in_space", 0.0, 0.0);
      const Interval nx = luxemburg_norm(phi, x, cfg.tol);
      const Interval ny = luxemburg_norm(phi, y, cfg.tol);
      if (nx.lo > ny.hi + 2.0 * cfg.tol)
        r.fail(r.phi_name(pi), t, seed, "solid_norm", nx.lo,
               ny.hi + 2.0 * cfg.tol);
    }
  }
  return r.report;
}

SuiteReport run_fatou_suite(const SuiteConfig& cfg) {
  Runner r(cfg, "fatou");
  double worst_gap = 0.0;
  for (size_t pi = 0; pi < cfg.pool.size(); ++pi) {
    const OrliczFunction& phi = cfg.pool[pi];
    if (!certify_nontrivial(phi).holds())
      throw Error(ErrorCode::TRIVIAL_SPACE,
                  "fatou suite needs a nontrivial pool");
    for (int t = 0; t < cfg.trials; ++t) {
      const uint64_t seed = trial_seed_of(cfg, r.report.suite, pi, t);
      std::mt19937_64 rng(seed);
      const Sequence x = draw_sequence(rng, cfg.gen, {.nonneg = true,
                                                      .force_tail = true});
      const double norm_tol = 0.25 * cfg.tol;
      const Interval nx = luxemburg_norm(phi, x, norm_tol);
      Interval prev(0.0);
      for (int k = 1; k <= cfg.fatou_ladder_max; k *= 2) {
        const Interval nk = luxemburg_norm(
            phi, x.truncated(static_cast<size_t>(k)), norm_tol);
        if (nk.hi < prev.lo)
          r.fail(r.phi_name(pi), t, seed,
                 "truncation_norm_monotone k=" + std::to_string(k), nk.hi,
                 prev.lo);
        prev = nk;
        if (nk.hi > nx.lo + 2.0 * cfg.tol)
          r.fail(r.phi_name(pi), t, seed,
                 "truncation_below_limit k=" + std::to_string(k), nk.hi,
                 nx.lo + 2.0 * cfg.tol);
      }
      const double gap = nx.lo - prev.hi;
      worst_gap = std::max(worst_gap, gap);
      if (gap > cfg.tol)
        r.fail(r.phi_name(pi), t, seed, "limit_gap", gap, cfg.tol);
    }
  }
  r.note("max final truncation gap " + fmt(worst_gap));
  return r.report;
}

SuiteReport run_order_continuity_suite(const SuiteConfig& cfg) {
  Runner r(cfg, "order_continuity");
  for (size_t pi = 0; pi < cfg.pool.size(); ++pi) {
    const OrliczFunction& phi = cfg.pool[pi];
    if (!phi.delta2_at_zero().holds()) {
      r.note("skipped " + r.phi_name(pi) + ": Delta2(0) fails");
      continue;
    }
    for (int t = 0; t < cfg.trials; ++t) {
      const uint64_t seed = trial_seed_of(cfg, r.report.suite, pi, t);
      std::mt19937_64 rng(seed);
      const Sequence x = draw_sequence(rng, cfg.gen, {.nonneg = true});
      const double norm_tol = 0.25 * cfg.tol;
      Interval prev = luxemburg_norm(phi, x, norm_tol);
      Interval last = prev;
      for (int n = 1; n <= cfg.oc_ladder_max; n *= 2) {
        const Interval tail_norm = luxemburg_norm(
            phi, x.drop_first(static_cast<size_t>(n)), norm_tol);
        if (tail_norm.lo > prev.hi)
          r.fail(r.phi_name(pi), t, seed,
                 "tail_norm_monotone n=" + std::to_string(n), tail_norm.lo,
                 prev.hi);
        prev = tail_norm;
        last = tail_norm;
      }
      if (last.hi > cfg.tol)
        r.fail(r.phi_name(pi), t, seed, "tail_norm_vanishes", last.hi, cfg.tol);
    }
  }
  return r.report;
}

SuiteReport run_norm_modular_suite(const SuiteConfig& cfg) {
  Runner r(cfg, "norm_modular");
  double worst_continuity = 0.0;
  for (size_t pi = 0; pi < cfg.pool.size(); ++pi) {
    const OrliczFunction& phi = cfg.pool[pi];
    const Certificate d2 = phi.delta2_at_zero();
    if (!d2.holds()) {
      r.note("skipped " + r.phi_name(pi) + ": Delta2(0) fails");
      continue;
    }
    const double d2_K = d2.at("K");
    const double d2_a = d2.at("a");
    for (int t = 0; t < cfg.trials; ++t) {
      const uint64_t seed = trial_seed_of(cfg, r.report.suite, pi, t);
      std::mt19937_64 rng(seed);
      const Sequence x = draw_sequence(rng, cfg.gen, {});

      // (i) modular at the normalized element is 1.  The norm tolerance is
      // made relative so the induced modular variation stays below tol.
      const Interval rough = luxemburg_norm(phi, x, 1e-3);
      const double ntol = std::max(1e-12, cfg.tol * 1e-2 * rough.lo);
      const Interval nx = luxemburg_norm(phi, x, ntol);
      const Interval rho_unit = modular_scaled(phi, x, nx, cfg.tol * 1e-2);
      if (rho_unit.lo < 1.0 - cfg.tol || rho_unit.hi > 1.0 + cfg.tol)
        r.fail(r.phi_name(pi), t, seed, "unit_modular",
               rho_unit.lo < 1.0 - cfg.tol ? rho_unit.lo : rho_unit.hi, 1.0);

      // (ii) halving ladder from the normalized element: modular and norm
      // go to 0 together.  The monotone checks are refutation-style, the
      // divergence side needs real margins, which rho(x_unit) = 1 supplies.
      const Sequence x_unit = x.scaled(1.0 / nx.hi);
      Interval prev_rho = modular(phi, x_unit, cfg.tol * 1e-2);
      Interval prev_nrm = luxemburg_norm(phi, x_unit, cfg.tol * 1e-2);
      Interval rho_k = prev_rho;
      Interval nrm_k = prev_nrm;
      for (int k = 1; k <= cfg.scaling_steps; ++k) {
        const Sequence xk = x_unit.scaled(std::ldexp(1.0, -k));
        rho_k = modular(phi, xk, cfg.tol * 1e-2);
        nrm_k = luxemburg_norm(phi, xk, cfg.tol * 1e-2);
        if (rho_k.lo > prev_rho.hi)
          r.fail(r.phi_name(pi), t, seed, "halving_modular_monotone", rho_k.lo,
                 prev_rho.hi);
        if (nrm_k.lo > prev_nrm.hi)
          r.fail(r.phi_name(pi), t, seed, "halving_norm_monotone", nrm_k.lo,
                 prev_nrm.hi);
        prev_rho = rho_k;
        prev_nrm = nrm_k;
      }
      if (rho_k.hi > 1e-2)
        r.fail(r.phi_name(pi), t, seed, "halving_modular_vanishes", rho_k.hi,
               1e-2);
      if (nrm_k.hi > 1e-2)
        r.fail(r.phi_name(pi), t, seed, "halving_norm_vanishes", nrm_k.hi,
               1e-2);

      // Doubling ladder: modular diverges, so the norm must too (each
      // doubling at least doubles both, so 0.01-wide enclosures certify
      // strict growth).
      prev_rho = modular(phi, x_unit, 1e-2);
      prev_nrm = luxemburg_norm(phi, x_unit, cfg.tol * 1e-2);
      for (int k = 1; k <= cfg.scaling_steps; ++k) {
        const Sequence xk = x_unit.scaled(std::ldexp(1.0, k));
        const Interval rho_d = modular(phi, xk, 1e-2);
        const Interval nrm_d = luxemburg_norm(phi, xk, cfg.tol);
        if (rho_d.lo <= prev_rho.hi)
          r.fail(r.phi_name(pi), t, seed, "doubling_modular_increases",
                 rho_d.lo, prev_rho.hi);
        if (nrm_d.lo <= prev_nrm.hi)
          r.fail(r.phi_name(pi), t, seed, "doubling_norm_increases", nrm_d.lo,
                 prev_nrm.hi);
        prev_rho = rho_d;
        prev_nrm = nrm_d;
      }
      if (prev_rho.lo < 10.0)
        r.fail(r.phi_name(pi), t, seed, "doubling_modular_diverges",
               prev_rho.lo, 10.0);
      if (prev_nrm.lo < 10.0)
        r.fail(r.phi_name(pi), t, seed, "doubling_norm_diverges", prev_nrm.lo,
               10.0);

      // (iii) |norm - 1| <= |rho - 1| on the raw draw.
      const Interval rho_x = modular(phi, x, cfg.tol * 1e-2);
      const double norm_dist =
          std::max({nx.lo - 1.0, 1.0 - nx.hi, 0.0});
      const double rho_dist =
          std::max(std::fabs(rho_x.lo - 1.0), std::fabs(rho_x.hi - 1.0));
      if (norm_dist > rho_dist + cfg.tol)
        r.fail(r.phi_name(pi), t, seed, "norm_modular_gap", norm_dist,
               rho_dist);

      // (iv) strong Delta2 of the modular on a small-modular rescale, plus
      // the continuity bound with an empirically estimated delta.
      const double shrink = 0.5 * d2_a / std::max(x.abs_total().hi, 1e-12);
      const Sequence xs = x.scaled(std::min(1.0, shrink));
      const Interval rho_s = modular(phi, xs, cfg.tol * 1e-3);
      const Interval rho_2s = modular(phi, xs.scaled(2.0), cfg.tol * 1e-3);
      if (rho_2s.lo > d2_K * rho_s.hi + 1e-9)
        r.fail(r.phi_name(pi), t, seed, "modular_delta2", rho_2s.lo,
               d2_K * rho_s.hi + 1e-9);

      if (x.finite_support()) {
        std::mt19937_64 rng2(splitmix64(seed));
        const Sequence y0 =
            draw_sequence(rng2, cfg.gen, {.forbid_tail = true});
        const Interval rho_y0 = modular(phi, y0, 1e-8);
        const double shrink_y = 1e-4 / std::max(rho_y0.hi, 1e-4);
        const Sequence ys = y0.scaled(shrink_y);
        const Interval rho_sum = modular(phi, xs.plus(ys), cfg.tol * 1e-3);
        const double dev = std::max(
            {rho_sum.hi - rho_s.lo, rho_s.hi - rho_sum.lo, 0.0});
        worst_continuity = std::max(worst_continuity, dev);
        if (dev > 0.05)
          r.fail(r.phi_name(pi), t, seed, "modular_continuity", dev, 0.05);
      }
    }
  }
  r.note("max modular continuity deviation at rho(y)<=1e-4: " +
         fmt(worst_continuity));
  return r.report;
}

SuiteReport run_monotonicity_suite(const SuiteConfig& cfg) {
  Runner r(cfg, "monotonicity");
  const double eps_levels[] = {0.1, 0.5, 1.0};
  for (size_t pi = 0; pi < cfg.pool.size(); ++pi) {
    const OrliczFunction& phi = cfg.pool[pi];
    if (!phi.delta2_at_zero().holds()) {
      // Not UM material; if phi vanishes on an interval, exhibit the
      // expected strict-monotonicity failure instead and move on.
      if (phi.a_phi() > 0.0 && certify_nontrivial(phi).holds()) {
        const WitnessPair w = sm_failure_witness(phi, cfg.tol);
        const Interval nx = luxemburg_norm(phi, w.x, cfg.tol);
        const Interval ny = luxemburg_norm(phi, w.y, cfg.tol);
        const double gap = std::max(0.0, ny.lo - nx.hi);
        r.note("expected SM failure for " + r.phi_name(pi) +
               ": norm gap " + fmt(gap) + " within " + fmt(2.0 * cfg.tol) +
               (gap <= 2.0 * cfg.tol ? " (flat as predicted)" : " (UNEXPECTED)"));
      } else {
        r.note("skipped " + r.phi_name(pi) + ": Delta2(0) fails");
      }
      continue;
    }
    double delta_min[3] = {1e300, 1e300, 1e300};
    for (int t = 0; t < cfg.trials; ++t) {
      const uint64_t seed = trial_seed_of(cfg, r.report.suite, pi, t);
      std::mt19937_64 rng(seed);
      const Sequence x0 = draw_sequence(rng, cfg.gen, {.nonneg = true,
                                                       .forbid_tail = true});
      const Sequence y0 = draw_sequence(rng, cfg.gen, {.nonneg = true,
                                                       .forbid_tail = true});
      const Interval nx0 = luxemburg_norm(phi, x0, cfg.tol * 0.1);
      const Sequence x = x0.scaled(1.0 / nx0.hi);  // ||x|| in [1-tol, 1]
      const Interval ny0 = luxemburg_norm(phi, y0, cfg.tol * 0.1);

      for (int e = 0; e < 3; ++e) {
        const double eps = eps_levels[e];
        const Sequence y = y0.scaled(eps * (1.0 + 1e-9) / ny0.lo);
        const Sequence sum = x.plus(y);
        const Interval nsum = luxemburg_norm(phi, sum, cfg.tol * 0.1);
        delta_min[e] = std::min(delta_min[e], nsum.lo - 1.0);
        if (nsum.lo <= 1.0)
          r.fail(r.phi_name(pi), t, seed,
                 "um_gap_positive eps=" + fmt(eps), nsum.lo, 1.0);

        const Interval rho_sum = modular(phi, sum, cfg.tol * 0.1);
        const Interval rho_x = modular(phi, x, cfg.tol * 0.1);
        const Interval rho_y = modular(phi, y, cfg.tol * 0.1);
        if (!cfg.invert_superadditivity) {
          if (rho_sum.hi < rho_x.lo + rho_y.lo)
            r.fail(r.phi_name(pi), t, seed, "superadditive", rho_sum.hi,
                   rho_x.lo + rho_y.lo);
        } else {
          // Deliberately wrong direction; the mutation check wants this
          // to light up within a few trials.
          if (rho_sum.lo > rho_x.hi + rho_y.hi)
            r.fail(r.phi_name(pi), t, seed, "superadditive_inverted",
                   rho_sum.lo, rho_x.hi + rho_y.hi);
        }
      }
    }
    for (int e = 0; e < 3; ++e)
      r.note("delta_estimate " + r.phi_name(pi) +
             " eps=" + fmt(eps_levels[e]) + " delta=" + fmt(delta_min[e]));
  }
  return r.report;
}

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg) {
  return {run_koethe_suite(cfg), run_fatou_suite(cfg),
          run_order_continuity_suite(cfg), run_norm_modular_suite(cfg),
          run_monotonicity_suite(cfg)};
}

}  // namespace cesorl
