#include "cesorl/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cesorl/errors.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/root_find.hpp"

namespace cesorl {

namespace {

bool within(const Interval& v, double target, double tol) {
  return !v.is_infinite() && v.lo >= target - tol && v.hi <= target + tol;
}

WitnessCheck near_one_check(const std::string& name, const Interval& achieved,
                            double tol) {
  return {name, 1.0, achieved, within(achieved, 1.0, tol)};
}

// Shortest dyadic rational inside [lo, hi]; the bisection answer snaps to
// it so that analytically exact roots (like c = 2) come out bit-exact.
double snap_to_dyadic(double lo, double hi) {
  if (lo <= 0.0) return lo;
  for (int k = 0; k <= 64; ++k) {
    const double scale = std::ldexp(1.0, k);
    const double m = std::ceil(lo * scale);
    if (m <= std::floor(hi * scale)) return m / scale;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool WitnessPair::all_pass() const {
  for (const WitnessCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

static std::string check_line(const WitnessCheck& c) {
  std::ostringstream out;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", c.target);
  out << c.name << " target=" << buf << " achieved=" << to_string(c.achieved)
      << (c.pass ? " pass" : " FAIL");
  return out.str();
}

std::string WitnessPair::to_text() const {
  std::ostringstream out;
  out << "# kind: "
      << (kind == WitnessKind::SM_FAILURE ? "SM_FAILURE" : "ROTUNDITY_FAILURE")
      << "\n";
  if (!branch_note.empty()) out << "# branch: " << branch_note << "\n";
  for (const WitnessCheck& c : checks) out << "# checks: " << check_line(c) << "\n";
  out << "# x:\n" << x.to_text();
  out << "# y:\n" << y.to_text();
  return out.str();
}

WitnessPair sm_failure_witness(const OrliczFunction& phi, double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::PRECONDITION, "tolerance must be positive");
  const double a_phi = phi.a_phi();
  if (a_phi == 0.0)
    throw Error(ErrorCode::NOT_APPLICABLE,
                "phi > 0, so A_phi is strictly monotone and no witness exists");

  // f(c) = sum_n phi(c/n) is 0 on [0, a_phi] and grows to infinity.
  auto f_sm = [&](double c, double eps) {
    return modular(phi, Sequence({c}), eps);
  };
  double lo = a_phi;
  double hi = std::max(1.0, 2.0 * a_phi);
  for (int i = 0; side_of_one(f_sm, hi) != RootSide::ABOVE; ++i) {
    hi *= 2.0;
    if (i > 200)
      throw Error(ErrorCode::PRECONDITION, "could not bracket f(c) = 1");
  }
  bisect_to_one(f_sm, lo, hi, 1e-13 * std::max(1.0, hi));
  const double c = snap_to_dyadic(lo, hi);

  size_t n0 = static_cast<size_t>(std::ceil((c + 1.0) / a_phi));
  if (n0 == 0) n0 = 1;
  while ((c + 1.0) / static_cast<double>(n0) > a_phi) ++n0;

  WitnessPair w;
  w.kind = WitnessKind::SM_FAILURE;
  w.x = Sequence({c});
  std::vector<double> y_head(n0, 0.0);
  y_head[0] = c;
  y_head[n0 - 1] = 1.0;
  w.y = Sequence(std::move(y_head));

  const double eps = tol / 10.0;
  w.checks.push_back(near_one_check("modular_x", modular(phi, w.x, eps), tol));
  w.checks.push_back(near_one_check("modular_y", modular(phi, w.y, eps), tol));
  w.checks.push_back({"c", c, Interval(c), true});
  w.checks.push_back({"n0", static_cast<double>(n0),
                      Interval(static_cast<double>(n0)), true});
  return w;
}

WitnessPair rotundity_failure_witness(const OrliczFunction& phi,
                                      const AffineInterval& sai,
                                      const Interval& alpha, double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::PRECONDITION, "tolerance must be positive");
  if (!phi.delta2_at_zero().holds())
    throw Error(ErrorCode::DELTA2_REQUIRED,
                "the rotundity construction assumes Delta2(0)");

  const double lo = std::max(sai.lo, 0.0);
  const double hi = std::min(sai.hi, alpha.lo);
  const double w_region = hi - lo;
  if (!(w_region >= 1e-7))
    throw Error(ErrorCode::SAI_TOO_SMALL,
                "no room inside the affine interval below alpha");
  const double b = lo + 0.25 * w_region;
  const double c = hi - 0.25 * w_region;

  // d > 0 with 2 phi(c) + sum_{i>=3} phi((2c+d)/i) certified below 1;
  // it exists because f(c) < 1 strictly for c < alpha.
  auto g = [&](double d) {
    return 2.0 * phi.value(Interval(c)) +
           modular_from(phi, Sequence({2.0 * c + d}), 3, 1e-10);
  };
  double d = std::max(alpha.lo - c, 0.25 * w_region);
  int halvings = 0;
  while (g(d).hi >= 1.0) {
    d *= 0.5;
    if (++halvings > 80)
      throw Error(ErrorCode::NO_K1, "could not certify the d margin");
  }

  const double margin = std::min(b - sai.lo, sai.hi - c);
  double delta = std::min({d / 16.0, margin / 8.0, (c - b) / 8.0});

  for (int attempt = 0;; ++attempt) {
    const double b1 = b + delta;
    const double c1 = c - 3.0 * delta;
    const double k = (b + c) - (b1 + c1);  // the branch b1+c1+k = b+c

    // rho of (b, c, 0, k1) is nondecreasing and continuous in k1; its
    // value at k1 = 0 is below f(c) < 1, so a root exists.
    auto rho_y = [&](double k1, double eps) {
      return modular(phi, Sequence({b, c, 0.0, k1}), eps);
    };
    if (side_of_one(rho_y, 0.0) != RootSide::BELOW) {
      delta *= 0.5;
      if (attempt > 6)
        throw Error(ErrorCode::NO_K1,
                    "bracket for the k1 equation failed to certify");
      continue;
    }
    auto rho_y_at = [&](double k1, double eps) { return rho_y(k1, eps); };
    double k_lo = 0.0;
    double k_hi = std::max(1.0, c);
    int grow = 0;
    while (side_of_one(rho_y_at, k_hi) != RootSide::ABOVE) {
      k_hi *= 2.0;
      if (++grow > 200)
        throw Error(ErrorCode::NO_K1, "could not bracket the k1 equation");
    }
    bisect_to_one(rho_y_at, k_lo, k_hi, 1e-13 * std::max(1.0, k_hi));
    const double k1 = 0.5 * (k_lo + k_hi);

    WitnessPair w;
    w.kind = WitnessKind::ROTUNDITY_FAILURE;
    w.branch_note = "b1+c1+k = b+c";
    w.x = Sequence({b1, c1, k, k1});
    w.y = Sequence({b, c, 0.0, k1});

    const double eps = tol / 10.0;
    w.checks.push_back(near_one_check("modular_x", modular(phi, w.x, eps), tol));
    w.checks.push_back(near_one_check("modular_y", modular(phi, w.y, eps), tol));
    w.checks.push_back(near_one_check(
        "modular_midpoint", modular(phi, Sequence::midpoint(w.x, w.y), eps), tol));

    // Exact affineness identity phi(b) + phi((b+c)/2) =
    // phi(b1) + phi((b1+c1)/2): both sides sit on the same affine piece.
    const double lhs = phi.value(b) + phi.value(0.5 * (b + c));
    const double rhs = phi.value(b1) + phi.value(0.5 * (b1 + c1));
    const double scale = std::max(1.0, std::fabs(lhs));
    w.checks.push_back({"affine_identity_gap", 0.0,
                        Interval(std::fabs(lhs - rhs)),
                        std::fabs(lhs - rhs) <= 1e-12 * scale});

    if (w.all_pass()) return w;
    delta *= 0.5;
    if (attempt > 6)
      throw Error(ErrorCode::NO_K1,
                  "witness checks failed to certify after delta retries");
  }
}

VerifyReport verify_witness(const OrliczFunction& phi, const WitnessPair& w,
                            double tol) {
  VerifyReport report;
  const double eps = tol / 10.0;
  auto add_near_one = [&](const std::string& name, const Interval& v) {
    report.checks.push_back(near_one_check(name, v, tol));
  };

  const size_t coords =
      std::max(w.x.head_size(), w.y.head_size()) + 8;
  bool le = true, ne = false, abs_ne = false;
  for (size_t i = 1; i <= coords; ++i) {
    const double xi = w.x.coord(i), yi = w.y.coord(i);
    if (std::fabs(xi) > std::fabs(yi)) le = false;
    if (xi != yi) ne = true;
    if (std::fabs(xi) != std::fabs(yi)) abs_ne = true;
  }

  add_near_one("modular_x", modular(phi, w.x, eps));
  add_near_one("modular_y", modular(phi, w.y, eps));
  add_near_one("norm_x", luxemburg_norm(phi, w.x, eps));
  add_near_one("norm_y", luxemburg_norm(phi, w.y, eps));
  report.checks.push_back({"x_ne_y", 1.0, Interval(ne ? 1.0 : 0.0), ne});

  if (w.kind == WitnessKind::SM_FAILURE) {
    report.checks.push_back({"x_le_y", 1.0, Interval(le ? 1.0 : 0.0), le});
  } else {
    const Sequence mid = Sequence::midpoint(w.x, w.y);
    add_near_one("modular_midpoint", modular(phi, mid, eps));
    add_near_one("norm_midpoint", luxemburg_norm(phi, mid, eps));
    // The Lemma-style obstruction: some coordinate differs in absolute value.
    report.checks.push_back(
        {"abs_coordinate_differs", 1.0, Interval(abs_ne ? 1.0 : 0.0), abs_ne});
  }
  return report;
}

bool VerifyReport::all_pass() const {
  for (const WitnessCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  for (const WitnessCheck& c : checks) out << check_line(c) << "\n";
  out << (all_pass() ? "verify: pass" : "verify: FAIL") << "\n";
  return out.str();
}

}  // namespace cesorl
