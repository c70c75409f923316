#include "cesorl/orlicz_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cesorl/errors.hpp"

namespace cesorl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double piece_value(const PhiPiece& p, double u) {
  const double d = u - p.start;
  double v = p.base + p.slope * d;
  if (p.coeff > 0.0) v += p.coeff * std::pow(d, p.exponent);
  return v;
}

double piece_slope(const PhiPiece& p, double u) {
  const double d = u - p.start;
  double s = p.slope;
  if (p.coeff > 0.0 && d > 0.0)
    s += p.coeff * p.exponent * std::pow(d, p.exponent - 1.0);
  return s;
}

bool has_content(const PhiPiece& p) { return p.slope > 0.0 || p.coeff > 0.0; }

[[noreturn]] void invalid(size_t index1, const std::string& what) {
  throw Error(ErrorCode::PARSE,
              what + " at piece " + std::to_string(index1));
}

}  // namespace

OrliczFunction::OrliczFunction(std::vector<PhiPiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::PARSE, "empty piece list");
  if (pieces_.front().start != 0.0) invalid(1, "first piece must start at 0");

  for (size_t i = 0; i < pieces_.size(); ++i) {
    PhiPiece& p = pieces_[i];
    if (!(p.start >= 0.0) || !std::isfinite(p.start))
      invalid(i + 1, "start must be a finite nonnegative real");
    if (!(p.slope >= 0.0)) invalid(i + 1, "slope must be nonnegative");
    if (!(p.coeff >= 0.0)) invalid(i + 1, "coeff must be nonnegative");
    if (!(p.exponent >= 1.0)) invalid(i + 1, "exponent must be >= 1");
    if (p.coeff > 0.0 && p.exponent == 1.0)
      invalid(i + 1, "power term with exp=1 (fold it into slope)");
    if (i > 0 && !(p.start > pieces_[i - 1].start))
      invalid(i + 1, "starts must be strictly increasing");
  }
  if (!has_content(pieces_.back()))
    invalid(pieces_.size(), "last piece needs slope or coeff (phi must grow)");

  // Continuity bases and convexity across boundaries.
  pieces_.front().base = 0.0;
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const double boundary = pieces_[i + 1].start;
    pieces_[i + 1].base = piece_value(pieces_[i], boundary);
    const double left_slope = piece_slope(pieces_[i], boundary);
    if (left_slope > pieces_[i + 1].slope)
      invalid(i + 2, "convexity violated");
  }

  // a_phi: end of the initial zero run.
  a_phi_ = 0.0;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (has_content(pieces_[i])) {
      a_phi_ = pieces_[i].start;
      break;
    }
  }

  // Maximal affine intervals: runs of coeff==0 pieces with equal slope.
  size_t i = 0;
  while (i < pieces_.size()) {
    if (pieces_[i].coeff != 0.0) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < pieces_.size() && pieces_[j].coeff == 0.0 &&
           pieces_[j].slope == pieces_[i].slope)
      ++j;
    AffineInterval sai;
    sai.lo = pieces_[i].start;
    sai.hi = j < pieces_.size() ? pieces_[j].start : kInf;
    sai.slope = pieces_[i].slope;
    sais_.push_back(sai);
    i = j;
  }
}

const PhiPiece& OrliczFunction::piece_at(double u) const {
  size_t i = pieces_.size();
  while (i > 1 && pieces_[i - 1].start > u) --i;
  return pieces_[i - 1];
}

double OrliczFunction::value(double u) const {
  u = std::fabs(u);
  return piece_value(piece_at(u), u);
}

Interval OrliczFunction::value(const Interval& u) const {
  if (u.is_infinite()) return Interval::infinite();
  const double lo = std::max(u.lo, 0.0);
  return widen(Interval(value(lo), value(u.hi)));
}

double OrliczFunction::right_derivative(double u) const {
  u = std::fabs(u);
  return piece_slope(piece_at(u), u);
}

bool OrliczFunction::is_strictly_convex_on(double l, double r) const {
  for (const AffineInterval& s : sais_)
    if (s.lo < r && l < s.hi) return false;
  return true;
}

bool OrliczFunction::starts_with_power_piece() const {
  const PhiPiece& p = pieces_.front();
  return p.coeff > 0.0 && p.slope == 0.0;
}

double OrliczFunction::first_boundary() const {
  return pieces_.size() > 1 ? pieces_[1].start : kInf;
}

double OrliczFunction::origin_domain_end() const {
  if (a_phi_ > 0.0) return a_phi_;
  return first_boundary();
}

Certificate OrliczFunction::delta2_at_zero() const {
  Certificate cert;
  cert.property = Property::DELTA2_ZERO;
  if (a_phi_ > 0.0) {
    // phi vanishes on [0, a_phi] but not beyond: the ratio phi(2u)/phi(u)
    // is unbounded on any [0, a] with phi(a) > 0.
    const double u = 0.75 * a_phi_;
    cert.verdict = Verdict::FAILS;
    cert.constants["witness_u"] = u;
    cert.constants["phi_u"] = value(u);
    cert.constants["phi_2u"] = value(2.0 * u);
    cert.note = "phi(witness_u)=0 while phi(2*witness_u)>0";
    return cert;
  }
  const PhiPiece& p = pieces_.front();
  const double boundary = first_boundary();
  const double a = std::isinf(boundary) ? 1.0 : 0.5 * boundary;
  // On [0, a] both u and 2u stay in the first piece, where
  // phi(2u) = 2 s u + 2^p a u^p <= 2^p phi(u).
  const double K = p.coeff > 0.0 ? std::pow(2.0, p.exponent) : 2.0;
  cert.verdict = Verdict::HOLDS;
  cert.constants["K"] = K;
  cert.constants["a"] = a;
  return cert;
}

Certificate OrliczFunction::lower_index_exceeds_one() const {
  Certificate cert;
  cert.property = Property::LOWER_INDEX;
  const PhiPiece& p = pieces_.front();
  if (a_phi_ > 0.0) {
    cert.verdict = Verdict::NOT_APPLICABLE;
    cert.note = "phi vanishes near 0; the index ratio is undefined there";
    return cert;
  }
  if (p.slope > 0.0) {
    // t phi'(t)/phi(t) -> 1 as t -> 0 when the slope at 0 is positive.
    cert.verdict = Verdict::FAILS;
    cert.constants["index"] = 1.0;
    return cert;
  }
  // Pure power start a u^p: the ratio is identically p > 1, and
  // phi(u) <= A u^(1+eps) on [0, u0] with eps = p-1, A = a.
  const double boundary = first_boundary();
  cert.verdict = Verdict::HOLDS;
  cert.constants["alpha"] = p.exponent;
  cert.constants["epsilon"] = p.exponent - 1.0;
  cert.constants["A"] = p.coeff;
  cert.constants["u0"] = std::isinf(boundary) ? 1.0 : boundary;
  return cert;
}

OrliczFunction parse_phi(const std::string& spec_text) {
  std::vector<PhiPiece> pieces;
  std::istringstream in(spec_text);
  std::string line;
  size_t lineno = 0;

  auto parse_real = [&](std::string_view field, std::string_view text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
      throw Error(ErrorCode::PARSE, "line " + std::to_string(lineno) +
                                        ": bad value for '" +
                                        std::string(field) + "'");
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    if (word != "piece")
      throw Error(ErrorCode::PARSE,
                  "line " + std::to_string(lineno) + ": expected 'piece'");
    PhiPiece p;
    bool seen_start = false, seen_slope = false, seen_coeff = false,
         seen_exp = false;
    while (fields >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorCode::PARSE, "line " + std::to_string(lineno) +
                                          ": expected key=value, got '" +
                                          word + "'");
      const std::string key = word.substr(0, eq);
      const std::string val = word.substr(eq + 1);
      if (key == "start") {
        p.start = parse_real(key, val);
        seen_start = true;
      } else if (key == "slope") {
        p.slope = parse_real(key, val);
        seen_slope = true;
      } else if (key == "coeff") {
        p.coeff = parse_real(key, val);
        seen_coeff = true;
      } else if (key == "exp") {
        p.exponent = parse_real(key, val);
        seen_exp = true;
      } else {
        throw Error(ErrorCode::PARSE, "line " + std::to_string(lineno) +
                                          ": unknown field '" + key + "'");
      }
    }
    if (!seen_start || !seen_slope || !seen_coeff || !seen_exp)
      throw Error(ErrorCode::PARSE,
                  "line " + std::to_string(lineno) +
                      ": piece needs start=, slope=, coeff=, exp=");
    pieces.push_back(p);
  }
  return OrliczFunction(std::move(pieces));
}

}  // namespace cesorl
