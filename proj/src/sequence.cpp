#include "cesorl/sequence.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cesorl/errors.hpp"

namespace cesorl {

Sequence::Sequence(std::vector<double> head, std::optional<GeometricTail> tail)
    : head_(std::move(head)), tail_(tail) {
  for (double v : head_)
    if (!std::isfinite(v))
      throw Error(ErrorCode::PARSE, "sequence coordinates must be finite");
  if (tail_) {
    if (!(tail_->gamma > 0.0 && tail_->gamma < 1.0))
      throw Error(ErrorCode::PARSE, "tail gamma must be in (0,1)");
    if (!std::isfinite(tail_->c))
      throw Error(ErrorCode::PARSE, "tail c must be finite");
    if (tail_->c == 0.0) tail_.reset();
  }
  prefix_.reserve(head_.size());
  Interval run(0.0);
  for (double v : head_) {
    run = run + Interval(std::fabs(v));
    prefix_.push_back(run);
  }
}

Sequence Sequence::unit(size_t position) {
  std::vector<double> head(position, 0.0);
  head[position - 1] = 1.0;
  return Sequence(std::move(head));
}

bool Sequence::is_zero() const {
  if (tail_) return false;
  for (double v : head_)
    if (v != 0.0) return false;
  return true;
}

double Sequence::coord(size_t i) const {
  if (i == 0) throw Error(ErrorCode::PRECONDITION, "coordinates are 1-based");
  if (i <= head_.size()) return head_[i - 1];
  if (!tail_) return 0.0;
  return tail_->c *
         std::pow(tail_->gamma, static_cast<double>(i - head_.size()));
}

Interval Sequence::abs_prefix_sum(size_t n) const {
  if (n == 0) return Interval(0.0);
  if (n <= head_.size())
    return prefix_[n - 1];
  const Interval head_sum =
      head_.empty() ? Interval(0.0) : prefix_.back();
  if (!tail_) return head_sum;
  // |c| * gamma * (1 - gamma^(n-m)) / (1 - gamma)
  const Interval g(tail_->gamma);
  const Interval gn = pow_nonneg(g, static_cast<double>(n - head_.size()));
  const Interval part = Interval(std::fabs(tail_->c)) * g *
                        (Interval(1.0) - gn) / (Interval(1.0) - g);
  return head_sum + max_zero(part);
}

double Sequence::abs_prefix_sum_value(size_t n) const {
  double s = 0.0;
  const size_t head_n = std::min(n, head_.size());
  for (size_t i = 0; i < head_n; ++i) s += std::fabs(head_[i]);
  if (n > head_.size() && tail_) {
    const double g = tail_->gamma;
    const double gn = std::pow(g, static_cast<double>(n - head_.size()));
    s += std::fabs(tail_->c) * g * (1.0 - gn) / (1.0 - g);
  }
  return s;
}

Interval Sequence::abs_total() const {
  const Interval head_sum =
      head_.empty() ? Interval(0.0) : prefix_.back();
  if (!tail_) return head_sum;
  const Interval g(tail_->gamma);
  const Interval part =
      Interval(std::fabs(tail_->c)) * g / (Interval(1.0) - g);
  return head_sum + max_zero(part);
}

size_t Sequence::first_nonzero() const {
  for (size_t i = 0; i < head_.size(); ++i)
    if (head_[i] != 0.0) return i + 1;
  if (tail_) return head_.size() + 1;
  return 0;
}

Sequence Sequence::scaled(double s) const {
  std::vector<double> head(head_);
  for (double& v : head) v *= s;
  std::optional<GeometricTail> tail = tail_;
  if (tail) tail->c *= s;
  return Sequence(std::move(head), tail);
}

Sequence Sequence::truncated(size_t k) const {
  std::vector<double> head(k, 0.0);
  for (size_t i = 1; i <= k; ++i) head[i - 1] = coord(i);
  return Sequence(std::move(head));
}

Sequence Sequence::drop_first(size_t n) const {
  if (n < head_.size()) {
    std::vector<double> head(head_);
    for (size_t i = 0; i < n; ++i) head[i] = 0.0;
    return Sequence(std::move(head), tail_);
  }
  std::vector<double> head(n, 0.0);
  std::optional<GeometricTail> tail;
  if (tail_) {
    // Re-anchor the tail at position n.
    tail = GeometricTail{
        tail_->c * std::pow(tail_->gamma,
                            static_cast<double>(n - head_.size())),
        tail_->gamma};
  }
  return Sequence(std::move(head), tail);
}

Sequence Sequence::plus(const Sequence& other) const {
  const Sequence* a = this;
  const Sequence* b = &other;
  if (a->tail_ && b->tail_ && a->tail_->gamma != b->tail_->gamma)
    throw Error(ErrorCode::PRECONDITION,
                "sum of sequences needs equal tail ratios");
  const size_t m = std::max(a->head_.size(), b->head_.size());
  std::vector<double> head(m, 0.0);
  for (size_t i = 1; i <= m; ++i) head[i - 1] = a->coord(i) + b->coord(i);
  std::optional<GeometricTail> tail;
  auto anchored_c = [m](const Sequence& s) {
    return s.tail_->c * std::pow(s.tail_->gamma,
                                 static_cast<double>(m - s.head_.size()));
  };
  if (a->tail_ && b->tail_)
    tail = GeometricTail{anchored_c(*a) + anchored_c(*b), a->tail_->gamma};
  else if (a->tail_)
    tail = GeometricTail{anchored_c(*a), a->tail_->gamma};
  else if (b->tail_)
    tail = GeometricTail{anchored_c(*b), b->tail_->gamma};
  return Sequence(std::move(head), tail);
}

Sequence Sequence::midpoint(const Sequence& x, const Sequence& y) {
  return x.plus(y).scaled(0.5);
}

std::string Sequence::to_text() const {
  std::ostringstream out;
  out << "head";
  for (double v : head_) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out << buf;
  }
  out << "\n";
  if (tail_) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "tail c=%.17g gamma=%.17g\n", tail_->c,
                  tail_->gamma);
    out << buf;
  }
  return out.str();
}

Sequence parse_sequence(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> head;
  std::optional<GeometricTail> tail;
  bool seen_head = false;
  size_t lineno = 0;

  auto parse_real = [&](std::string_view sv) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size())
      throw Error(ErrorCode::PARSE,
                  "line " + std::to_string(lineno) + ": bad real '" +
                      std::string(sv) + "'");
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    if (word == "head") {
      if (seen_head)
        throw Error(ErrorCode::PARSE, "duplicate head line");
      seen_head = true;
      while (fields >> word) head.push_back(parse_real(word));
    } else if (word == "tail") {
      if (tail)
        throw Error(ErrorCode::PARSE, "duplicate tail line");
      GeometricTail t;
      bool seen_c = false, seen_gamma = false;
      while (fields >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos)
          throw Error(ErrorCode::PARSE,
                      "line " + std::to_string(lineno) +
                          ": expected key=value in tail");
        const std::string key = word.substr(0, eq);
        if (key == "c") {
          t.c = parse_real(word.substr(eq + 1));
          seen_c = true;
        } else if (key == "gamma") {
          t.gamma = parse_real(word.substr(eq + 1));
          seen_gamma = true;
        } else {
          throw Error(ErrorCode::PARSE, "unknown tail field '" + key + "'");
        }
      }
      if (!seen_c || !seen_gamma)
        throw Error(ErrorCode::PARSE, "tail needs c= and gamma=");
      tail = t;
    } else {
      throw Error(ErrorCode::PARSE,
                  "line " + std::to_string(lineno) + ": expected 'head' or 'tail'");
    }
  }
  if (!seen_head) throw Error(ErrorCode::PARSE, "missing head line");
  return Sequence(std::move(head), tail);
}

}  // namespace cesorl
