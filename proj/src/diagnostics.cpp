#include "pdsp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdsp/baselines.hpp"
#include "pdsp/cuts.hpp"
#include "pdsp/errors.hpp"

namespace pdsp {

BigInt binomial(std::size_t a, std::size_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  BigInt c = 1;
  for (std::size_t i = 1; i <= b; ++i) {
    c *= a - b + i;
    c /= i;
  }
  return c;
}

BigInt binomial_ball_count(std::size_t n, std::size_t p, std::size_t big_n) {
  if (p > n) throw ArgumentError("p exceeds n");
  BigInt total = 0;
  for (std::size_t q = 0; q <= big_n; ++q) total += binomial(p, q) * binomial(n - p, q);
  return total;
}

namespace {

Bits bits_of(std::size_t n, const std::vector<std::size_t>& indices) {
  Bits bits(n, 0);
  for (std::size_t i : indices) {
    if (i >= n) throw ArgumentError("cut log index out of range");
    bits[i] = 1;
  }
  return bits;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

CutStrength cut_strength(const Instance& inst, std::span<const CutLogEntry> log, std::size_t k,
                         std::size_t l) {
  if (!(k < l && l < log.size())) throw ArgumentError("cut strength needs k < l < log size");
  const std::size_t n = inst.n();
  const std::size_t p = inst.p();
  const Bits xk = bits_of(n, log[k].source);
  const auto g = gradient(inst, std::span<const std::uint8_t>(xk));
  const double gnorm = norm2(g);
  if (!(gnorm > 0.0)) throw ArgumentError("gradient vanishes at the cut source");

  CutStrength s;
  s.k = k;
  s.l = l;
  s.ratio = (log[l].lb - log[k].f) / gnorm;
  const std::size_t cap = std::min(p, n - p);
  std::size_t big_n = 0;
  if (s.ratio > 0.0) {
    const double guess = std::floor(s.ratio * s.ratio / 2.0);
    big_n = guess >= static_cast<double>(cap) ? cap : static_cast<std::size_t>(guess);
    while (big_n > 0 && !(s.ratio > std::sqrt(2.0 * static_cast<double>(big_n)))) --big_n;
    while (big_n < cap && s.ratio > std::sqrt(2.0 * static_cast<double>(big_n + 1))) ++big_n;
  }
  s.n_l = big_n;
  s.eliminated_count = binomial_ball_count(n, p, big_n);
  return s;
}

std::vector<CutStrength> cut_strength_report(const Instance& inst,
                                             std::span<const CutLogEntry> log) {
  std::vector<CutStrength> out;
  for (std::size_t k = 0; k + 1 < log.size(); ++k) {
    const Bits xk = bits_of(inst.n(), log[k].source);
    if (!(norm2(gradient(inst, std::span<const std::uint8_t>(xk))) > 0.0)) continue;
    out.push_back(cut_strength(inst, log, k, k + 1));
  }
  return out;
}

namespace {

class BallCounter {
 public:
  BallCounter(std::size_t n, std::size_t p, std::span<const std::uint8_t> center, std::size_t big_n)
      : n_(n), p_(p), center_(center), limit_(2 * big_n) {}

  BigInt run() {
    descend(0, 0, 0);
    return count_;
  }

 private:
  // `dist` is the squared distance over the decided prefix.
  void descend(std::size_t i, std::size_t ones, std::size_t dist) {
    if (i == n_) {
      if (ones == p_ && dist <= limit_) ++count_;
      return;
    }
    const std::size_t left = n_ - i;
    if (ones + left > p_) descend(i + 1, ones, dist + (center_[i] ? 1 : 0));
    if (ones < p_) descend(i + 1, ones + 1, dist + (center_[i] ? 0 : 1));
  }

  std::size_t n_;
  std::size_t p_;
  std::span<const std::uint8_t> center_;
  std::size_t limit_;
  BigInt count_ = 0;
};

}  // namespace

BigInt count_within_ball(std::size_t n, std::size_t p, std::span<const std::uint8_t> center,
                         std::size_t big_n) {
  if (center.size() != n) throw ArgumentError("center length differs from n");
  if (popcount(center) != p) throw ArgumentError("center must have exactly p ones");
  if (subset_count(n, p) > kEnumerationLimit) {
    throw GuardError("ball count refused: C(" + std::to_string(n) + ", " + std::to_string(p) +
                     ") exceeds 1e7 points");
  }
  return BallCounter(n, p, center, big_n).run();
}

std::vector<AuditViolation> lemma1_audit(const Instance& inst, std::span<const CutLogEntry> log) {
  std::vector<AuditViolation> out;
  const std::size_t n = inst.n();
  std::vector<Bits> xs;
  xs.reserve(log.size());
  for (const CutLogEntry& e : log) xs.push_back(bits_of(n, e.source));

  for (std::size_t k = 0; k < log.size(); ++k) {
    const auto g = gradient(inst, std::span<const std::uint8_t>(xs[k]));
    const double gnorm = norm2(g);
    double gxk = 0.0;
    for (std::size_t i = 0; i < n; ++i) gxk += xs[k][i] ? g[i] : 0.0;
    const double fk = log[k].f;
    for (std::size_t l = k + 1; l < log.size(); ++l) {
      const double scale = 1.0 + std::abs(log[l].theta) + std::abs(fk);
      const double slack = 1e-9 * scale;
      const double lhs = log[l].theta - fk;
      double gxl = 0.0;
      for (std::size_t i = 0; i < n; ++i) gxl += xs[l][i] ? g[i] : 0.0;
      const double rhs = gxl - gxk;
      if (!(lhs > 0.0)) {
        std::ostringstream msg;
        msg << "candidate " << l << " does not improve on f(x^" << k << "): theta - f = " << lhs;
        out.push_back({AuditViolation::Kind::kImprovement, k, l, lhs, 0.0, msg.str()});
      }
      if (!(lhs <= rhs + slack)) {
        std::ostringstream msg;
        msg << "theta^" << l << " - f(x^" << k << ") = " << lhs
            << " exceeds the gradient bound " << rhs;
        out.push_back({AuditViolation::Kind::kGradientBound, k, l, lhs, rhs, msg.str()});
      }
      if (gnorm > 0.0) {
        double dist2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) dist2 += xs[l][i] != xs[k][i] ? 1.0 : 0.0;
        const double dist = std::sqrt(dist2);
        const double need = (log[l - 1].lb - fk) / gnorm;
        if (!(dist >= need - 1e-9 * (1.0 + std::abs(need)))) {
          std::ostringstream msg;
          msg << "x^" << l << " lies at distance " << dist << " from x^" << k << ", closer than "
              << need;
          out.push_back({AuditViolation::Kind::kDistanceBound, k, l, dist, need, msg.str()});
        }
      }
    }
  }
  return out;
}

}  // namespace pdsp
