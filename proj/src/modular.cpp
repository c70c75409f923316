#include "cesorl/modular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "cesorl/errors.hpp"

namespace cesorl {

std::string to_string(const Interval& v) {
  if (v.is_infinite()) return "INFINITE";
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.9g, %.9g]", v.lo, v.hi);
  return buf;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr size_t kMaxTerms = size_t{1} << 22;
constexpr size_t kFrontierCap = size_t{1} << 25;

void neumaier_add(double& sum, double& comp, double v) {
  const double t = sum + v;
  if (std::fabs(sum) >= std::fabs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

// Enclosure of a nonnegative compensated sum: the Neumaier error is below
// 2 eps * sum, which 4 eps covers.
Interval comp_sum_interval(double v) {
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * v +
                       4.0 * std::numeric_limits<double>::denorm_min();
  return Interval(std::max(0.0, v - slack), v + slack);
}

// Integral-test bracket for sum_{n>=N} n^-p, p > 1.
Interval p_series_tail_integral(double p, size_t N) {
  const Interval n_iv(static_cast<double>(N));
  const Interval integral = pow_nonneg(n_iv, 1.0 - p) / Interval(p - 1.0);
  const Interval first = pow_nonneg(n_iv, -p);
  return Interval(std::max(0.0, integral.lo), (first + integral).hi);
}

// Shared certified prefix sums of n^-p per exponent: a dense prefix table
// plus a movable frontier whose integral-test remainder brackets the full
// tail.  Grown lazily; all reads come back as enclosures.
class ZetaCache {
 public:
  static ZetaCache& instance() {
    static ZetaCache cache;
    return cache;
  }

  // Certified sum_{n>=N} n^-p, tightened until the bracket width is below
  // eps_hint or the frontier cap is reached.
  Interval tail_from(double p, size_t N, double eps_hint) {
    std::lock_guard<std::mutex> lock(mu_);
    PerExp& e = get(p);
    if (N - 1 > kMaxTerms) return p_series_tail_integral(p, N);
    grow_dense(e, p, N - 1);
    while (e.frontier < kFrontierCap &&
           std::pow(static_cast<double>(e.frontier + 1), -p) >
               0.5 * eps_hint)
      grow_frontier(e, p, std::max(e.frontier * 2, size_t{1} << 16));
    const Interval to_frontier =
        comp_sum_interval(e.frontier_sum + e.frontier_comp);
    const Interval before = prefix_interval(e, N - 1);
    const Interval rest = p_series_tail_integral(p, e.frontier + 1);
    const Interval tail = (to_frontier - before) + rest;
    return Interval(std::max(0.0, tail.lo), tail.hi);
  }

  // Certified sum_{n=A}^{B} n^-p, 1 <= A <= B <= kMaxTerms.
  Interval range_sum(double p, size_t A, size_t B) {
    std::lock_guard<std::mutex> lock(mu_);
    PerExp& e = get(p);
    grow_dense(e, p, B);
    const Interval diff = prefix_interval(e, B) - prefix_interval(e, A - 1);
    return Interval(std::max(0.0, diff.lo), diff.hi);
  }

 private:
  struct PerExp {
    std::vector<double> prefix{0.0};  // prefix[i] = sum_{n<=i} n^-p
    double dense_sum = 0.0;
    double dense_comp = 0.0;
    size_t frontier = 0;
    double frontier_sum = 0.0;
    double frontier_comp = 0.0;
  };

  PerExp& get(double p) { return map_[p]; }

  static Interval prefix_interval(const PerExp& e, size_t n) {
    return comp_sum_interval(e.prefix[n]);
  }

  void grow_dense(PerExp& e, double p, size_t upto) {
    upto = std::min(upto, kMaxTerms);
    if (e.prefix.size() > upto) return;
    const size_t target = std::max({upto + 1, e.prefix.size() * 2, size_t{1024}});
    e.prefix.reserve(target);
    for (size_t n = e.prefix.size(); n < target; ++n) {
      neumaier_add(e.dense_sum, e.dense_comp, std::pow(static_cast<double>(n), -p));
      e.prefix.push_back(e.dense_sum + e.dense_comp);
    }
    if (e.frontier < e.prefix.size() - 1) {
      e.frontier = e.prefix.size() - 1;
      e.frontier_sum = e.dense_sum;
      e.frontier_comp = e.dense_comp;
    }
  }

  void grow_frontier(PerExp& e, double p, size_t upto) {
    if (e.frontier == 0) grow_dense(e, p, size_t{1} << 10);
    upto = std::min(upto, kFrontierCap);
    for (size_t n = e.frontier + 1; n <= upto; ++n)
      neumaier_add(e.frontier_sum, e.frontier_comp,
                   std::pow(static_cast<double>(n), -p));
    e.frontier = std::max(e.frontier, upto);
  }

  std::map<double, PerExp> map_;
  std::mutex mu_;
};

struct EngineResult {
  Interval value;
  bool exceeded = false;  // value.lo is then only a certified lower bound
};

// Core series evaluator: sum_{n>=from_n} phi(S_n / (n lambda)) with the
// spec tail bracket intersected against the zeta-prefix bracket, doubling
// the exact-term range until the width target (or a stall) is reached.
EngineResult modular_engine(const OrliczFunction& phi, const Sequence& x,
                            size_t from_n, const Interval& lambda, double eps,
                            double stop_above) {
  EngineResult out;
  if (x.is_zero()) {
    out.value = Interval(0.0);
    return out;
  }
  if (phi.starts_with_positive_slope()) {
    out.value = Interval::infinite();
    return out;
  }

  const Interval scaled_total = x.abs_total() / lambda;
  const double boundary = phi.origin_domain_end();
  const bool power_start = phi.starts_with_power_piece();
  const double a = phi.pieces().front().coeff;
  const double p = phi.pieces().front().exponent;

  size_t N = std::max<size_t>(from_n, 1);
  if (!std::isinf(boundary))
    N = std::max(N, static_cast<size_t>(
                        std::ceil(scaled_total.hi / boundary)) + 0);
  const size_t m = x.head_size();
  if (x.finite_support()) N = std::max(N, m + 1);
  N = std::min(N, kMaxTerms);

  auto term_at = [&](size_t n) {
    const Interval u =
        x.abs_prefix_sum(n) / (Interval(static_cast<double>(n)) * lambda);
    return phi.value(u);
  };

  Interval acc(0.0);
  for (size_t n = from_n; n < N; ++n) {
    acc = acc + term_at(n);
    if (acc.lo > stop_above) {
      out.value = acc;
      out.exceeded = true;
      return out;
    }
  }

  double prev_width = kInf;
  for (;;) {
    const Interval s_scaled_lo = x.abs_prefix_sum(N) / lambda;
    const double s_lo = std::max(0.0, s_scaled_lo.lo);
    const double s_hi = scaled_total.hi;
    Interval tail = modular_tail_bound(phi, s_lo, s_hi, N);
    bool tail_exact_zero = tail.lo == 0.0 && tail.hi == 0.0;
    if (power_start && !tail_exact_zero) {
      const Interval scale = Interval(a) * pow_nonneg(Interval(s_lo, s_hi), p);
      const double zeta_eps =
          0.5 * eps / std::max(scale.hi, 1e-300);
      const Interval zt =
          scale * ZetaCache::instance().tail_from(p, N, zeta_eps);
      tail = intersect(tail, zt);
    }
    const Interval total = acc + tail;
    if (total.lo > stop_above) {
      out.value = total;
      out.exceeded = true;
      return out;
    }
    if (total.width() <= eps || tail_exact_zero || N >= kMaxTerms ||
        total.width() >= 0.9 * prev_width) {
      out.value = total;
      return out;
    }
    prev_width = total.width();

    const size_t N2 = std::min(N * 2, kMaxTerms);
    // Flat region of a finite-support sequence under a power start: the
    // whole block is a (S/lambda)^p sum n^-p, served by the prefix table.
    if (x.finite_support() && power_start && N >= m + 1) {
      const Interval block = Interval(a) * pow_nonneg(scaled_total, p) *
                             ZetaCache::instance().range_sum(p, N, N2 - 1);
      acc = acc + block;
    } else {
      for (size_t n = N; n < N2; ++n) {
        acc = acc + term_at(n);
        if (acc.lo > stop_above) {
          out.value = acc;
          out.exceeded = true;
          return out;
        }
      }
    }
    N = N2;
  }
}

enum class Side { LESS, GREATER, UNDECIDED };

struct Comparison {
  Side side;
  Interval value;  // meaningful for UNDECIDED
};

// Certified comparison of rho_phi(x/lambda) against 1, tightening eps by
// factors of 10 down to 1e-14 while the interval straddles the threshold.
Comparison compare_modular_to_one(const OrliczFunction& phi, const Sequence& x,
                                  double lambda) {
  double eps = 1e-4;
  for (;;) {
    const EngineResult r =
        modular_engine(phi, x, 1, Interval(lambda), eps, 1.0);
    if (r.exceeded || r.value.is_infinite() || r.value.lo > 1.0)
      return {Side::GREATER, r.value};
    if (r.value.hi <= 1.0) return {Side::LESS, r.value};
    // width > eps means the engine hit its own precision floor.
    if (eps <= 1e-14 || r.value.width() > eps)
      return {Side::UNDECIDED, r.value};
    eps *= 0.1;
  }
}

}  // namespace

double cesaro_mean(const Sequence& x, size_t n) {
  if (n == 0) throw Error(ErrorCode::PRECONDITION, "cesaro_mean needs n >= 1");
  return x.abs_prefix_sum_value(n) / static_cast<double>(n);
}

Interval modular_tail_bound(const OrliczFunction& phi, double s_lo,
                            double s_hi, size_t N) {
  if (N == 0 || s_lo < 0.0 || s_lo > s_hi)
    throw Error(ErrorCode::PRECONDITION, "modular_tail_bound: bad arguments");
  const double arg_hi = s_hi / static_cast<double>(N);

  if (phi.starts_with_zero_piece()) {
    if (arg_hi <= phi.a_phi()) return Interval(0.0);
    throw Error(ErrorCode::PRECONDITION,
                "modular_tail_bound: s_hi/N beyond the zero run");
  }
  if (phi.starts_with_positive_slope()) {
    if (s_lo > 0.0) return Interval::infinite();
    throw Error(ErrorCode::PRECONDITION,
                "modular_tail_bound: cannot bracket with s_lo = 0 and a "
                "positive slope at the origin");
  }
  if (arg_hi > phi.first_boundary())
    throw Error(ErrorCode::PRECONDITION,
                "modular_tail_bound: s_hi/N outside the first piece");

  const double a = phi.pieces().front().coeff;
  const double p = phi.pieces().front().exponent;
  const Interval n_iv(static_cast<double>(N));
  const Interval integral = pow_nonneg(n_iv, 1.0 - p) / Interval(p - 1.0);
  const Interval lo_part = Interval(a) * pow_nonneg(Interval(s_lo), p) * integral;
  const Interval hi_part = Interval(a) * pow_nonneg(Interval(s_hi), p) *
                           (pow_nonneg(n_iv, -p) + integral);
  return Interval(std::max(0.0, lo_part.lo), hi_part.hi);
}

Interval modular(const OrliczFunction& phi, const Sequence& x, double eps) {
  return modular_engine(phi, x, 1, Interval(1.0), eps, kInf).value;
}

Interval modular_scaled(const OrliczFunction& phi, const Sequence& x,
                        const Interval& lambda, double eps) {
  if (!(lambda.lo > 0.0))
    throw Error(ErrorCode::PRECONDITION, "scaling lambda must be positive");
  return modular_engine(phi, x, 1, lambda, eps, kInf).value;
}

Interval modular_from(const OrliczFunction& phi, const Sequence& x,
                      size_t from_n, double eps) {
  if (from_n == 0)
    throw Error(ErrorCode::PRECONDITION, "modular_from needs from_n >= 1");
  return modular_engine(phi, x, from_n, Interval(1.0), eps, kInf).value;
}

std::string DivergenceProof::to_text() const {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "phi(u) >= %.9g*u for all u, and S_n >= %.9g for n >= %zu, so "
                "the terms dominate a harmonic tail",
                slope, s_lower, from_n);
  return buf;
}

std::optional<DivergenceProof> divergence_proof(const OrliczFunction& phi,
                                                const Sequence& x) {
  if (!phi.starts_with_positive_slope() || x.is_zero()) return std::nullopt;
  DivergenceProof proof;
  proof.slope = phi.pieces().front().slope;
  proof.from_n = x.first_nonzero();
  proof.s_lower = x.abs_prefix_sum(proof.from_n).lo;
  return proof;
}

Interval luxemburg_norm(const OrliczFunction& phi, const Sequence& x,
                        double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::PRECONDITION, "norm tolerance must be positive");
  if (x.is_zero()) return Interval(0.0);
  if (phi.starts_with_positive_slope()) {
    const auto proof = divergence_proof(phi, x);
    throw Error(ErrorCode::NO_FINITE_SCALING,
                "rho_phi(x/lambda) diverges for every lambda: " +
                    (proof ? proof->to_text() : std::string()));
  }

  const double S = x.abs_total().hi;
  const PhiPiece& first = phi.pieces().front();
  double lam_hi;
  if (phi.starts_with_zero_piece()) {
    lam_hi = std::max(1.0, S / phi.a_phi());
  } else {
    // rho(x/lam) <= a (S/lam)^p zeta(p) and zeta(p) <= 1 + 1/(p-1).
    const double guess = std::pow(
        first.coeff * (1.0 + 1.0 / (first.exponent - 1.0)), 1.0 / first.exponent);
    lam_hi = std::max(1.0, S) * (1.0 + guess);
  }

  auto resolve_undecided = [&](double lambda,
                               const Interval& value) -> Interval {
    // |rho(x/lambda) - 1| <= d forces | ||x/lambda|| - 1 | <= d, hence
    // ||x|| lies in lambda [1-d, 1+d].
    const double d =
        std::max({value.hi - 1.0, 1.0 - value.lo, 0.0});
    const Interval cand = widen(Interval(lambda * (1.0 - d), lambda * (1.0 + d)));
    if (cand.width() <= tol) return cand;
    throw Error(ErrorCode::UNDECIDABLE,
                "modular comparison straddles 1 at the eps floor and the "
                "derived bracket is wider than tol");
  };

  for (int i = 0;; ++i) {
    const Comparison c = compare_modular_to_one(phi, x, lam_hi);
    if (c.side == Side::LESS) break;
    if (c.side == Side::UNDECIDED) return resolve_undecided(lam_hi, c.value);
    if (i > 2000)
      throw Error(ErrorCode::NO_FINITE_SCALING,
                  "no scaling with certified modular <= 1 found");
    lam_hi *= 2.0;
  }
  double lam_lo = 0.5 * lam_hi;
  for (;;) {
    const Comparison c = compare_modular_to_one(phi, x, lam_lo);
    if (c.side == Side::GREATER) break;
    if (c.side == Side::UNDECIDED) return resolve_undecided(lam_lo, c.value);
    lam_lo *= 0.5;
    if (lam_lo < 1e-300) return Interval(0.0, tol);
  }

  while (lam_hi - lam_lo > tol) {
    const double mid = 0.5 * (lam_lo + lam_hi);
    const Comparison c = compare_modular_to_one(phi, x, mid);
    if (c.side == Side::LESS)
      lam_hi = mid;
    else if (c.side == Side::GREATER)
      lam_lo = mid;
    else
      return resolve_undecided(mid, c.value);
  }
  return Interval(lam_lo, lam_hi);
}

bool NormModularGap::all_pass() const {
  for (const GapCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

NormModularGap norm_modular_gap(const OrliczFunction& phi, const Sequence& x,
                                double tol) {
  NormModularGap report;
  report.modular_value = modular(phi, x, tol);
  if (report.modular_value.is_infinite())
    throw Error(ErrorCode::PRECONDITION,
                "norm_modular_gap needs a finite modular");
  report.norm_value = luxemburg_norm(phi, x, tol);
  const Interval& rho = report.modular_value;
  const Interval& nrm = report.norm_value;

  auto add = [&](const std::string& name, bool applicable, bool pass,
                 const std::string& detail) {
    report.checks.push_back({name, !applicable || pass, detail});
  };

  add("rho<=1 implies rho<=norm<=1", rho.hi <= 1.0,
      rho.lo <= nrm.hi && nrm.lo <= 1.0,
      "rho=" + to_string(rho) + " norm=" + to_string(nrm));
  add("rho>1 implies 1<=norm<=rho", rho.lo > 1.0,
      nrm.hi >= 1.0 && nrm.lo <= rho.hi,
      "rho=" + to_string(rho) + " norm=" + to_string(nrm));

  auto dist_below = [](const Interval& v) {
    return std::max({v.lo - 1.0, 1.0 - v.hi, 0.0});
  };
  auto dist_above = [](const Interval& v) {
    return std::max(std::fabs(v.lo - 1.0), std::fabs(v.hi - 1.0));
  };
  add("|norm-1| <= |rho-1|", true, dist_below(nrm) <= dist_above(rho),
      "min|norm-1|=" + std::to_string(dist_below(nrm)) +
          " max|rho-1|=" + std::to_string(dist_above(rho)));
  return report;
}

}  // namespace cesorl
