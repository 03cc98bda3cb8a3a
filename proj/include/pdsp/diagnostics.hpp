#ifndef PDSP_DIAGNOSTICS_HPP
#define PDSP_DIAGNOSTICS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pdsp/instance.hpp"

namespace pdsp {

using BigInt = boost::multiprecision::cpp_int;

/// Standard binomial coefficient a! / (b! (a-b)!), zero when b > a.
BigInt binomial(std::size_t a, std::size_t b);

/// sum_{q=0}^{N} C(p,q) C(n-p,q): the number of points of K whose squared
/// distance to a fixed point of K is at most 2N.
BigInt binomial_ball_count(std::size_t n, std::size_t p, std::size_t big_n);

/// How much of K the cut generated at iteration k provably removes once the
/// lower bound has reached LB_l.
struct CutStrength {
  std::size_t k = 0;
  std::size_t l = 0;
  /// (LB_l - f(x^k)) / ||grad f(x^k)||
  double ratio = 0.0;
  /// Largest N with ratio > sqrt(2N), clamped to [0, min(p, n-p)].
  std::size_t n_l = 0;
  BigInt eliminated_count;
};

/// Throws ArgumentError unless k < l < log.size(), and ArgumentError when
/// the gradient at x^k vanishes.
CutStrength cut_strength(const Instance& inst, std::span<const CutLogEntry> log, std::size_t k,
                         std::size_t l);

/// cut_strength(k, k+1) for every cut but the last; zero-gradient cuts are skipped.
std::vector<CutStrength> cut_strength_report(const Instance& inst,
                                             std::span<const CutLogEntry> log);

/// Counts points x of K with ||x - center||^2 <= 2N by enumeration.
/// Throws GuardError when C(n, p) exceeds 1e7.
BigInt count_within_ball(std::size_t n, std::size_t p, std::span<const std::uint8_t> center,
                         std::size_t big_n);

struct AuditViolation {
  enum class Kind { kImprovement, kGradientBound, kDistanceBound };
  Kind kind;
  std::size_t k = 0;
  std::size_t l = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string message;
};

/// Checks a cut log against the two guarantees every pair k < l of
/// candidates must satisfy:
///
///   0 < theta^l - f(x^k) <= <grad f(x^k), x^l - x^k>
///   ||x^l - x^k|| >= (LB_{l-1} - f(x^k)) / ||grad f(x^k)||
///
/// Entry 0 (the start point) only takes part as x^k.
std::vector<AuditViolation> lemma1_audit(const Instance& inst, std::span<const CutLogEntry> log);

}  // namespace pdsp

#endif  // PDSP_DIAGNOSTICS_HPP
