#ifndef PDSP_TOLERANCES_HPP
#define PDSP_TOLERANCES_HPP

#include <algorithm>
#include <cmath>

namespace pdsp::tol {

// Every numerical threshold used by the solver lives here.
inline constexpr double kFeasibility = 1e-7;
inline constexpr double kIntegrality = 1e-6;
inline constexpr double kObjectiveAbs = 1e-7;
inline constexpr double kObjectiveRel = 1e-9;
inline constexpr double kGapAbs = 1e-6;
inline constexpr double kGapRel = 1e-9;
inline constexpr double kSymmetrize = 1e-9;
inline constexpr double kPointDistance = 1e-9;
inline constexpr double kZeroGradientRel = 1e-12;
inline constexpr double kCndScale = 1e-7;

inline double gap_tolerance(double value, double abs_tol = kGapAbs,
                            double rel_tol = kGapRel) {
  return abs_tol + rel_tol * std::abs(value);
}

inline bool nearly_equal(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace pdsp::tol

#endif  // PDSP_TOLERANCES_HPP
