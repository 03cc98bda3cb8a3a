#ifndef PDSP_BASELINES_HPP
#define PDSP_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pdsp/instance.hpp"
#include "pdsp/simplex.hpp"
#include "pdsp/tolerances.hpp"

namespace pdsp {

/// Largest number of p-subsets the enumeration routines will visit.
inline constexpr double kEnumerationLimit = 1e7;

/// C(n, p) as a double (saturates to inf).
double subset_count(std::size_t n, std::size_t p);

/// Exact optimum by enumerating every p-subset in lexicographic order.
/// Ties keep the lexicographically smallest index set.
/// Throws GuardError when C(n, p) exceeds kEnumerationLimit.
BinarySolution brute_force(const Instance& inst);

/// max c.x subject to dense rows, with an integrality mask.
struct MilpModel {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::uint8_t> integer;

  std::size_t num_vars() const noexcept { return objective.size(); }
  std::size_t num_rows() const noexcept { return rows.size(); }
  /// Throws ArgumentError on inconsistent dimensions or bounds.
  void check() const;
};

/// Linearization with binaries x_1..x_n and continuous w_1..w_{n-1}:
///
///   max sum w_i
///   s.t. sum x = p
///        w_i - x_i * sum_{j>i} q_ij <= 0
///        w_i - sum_{j>i} q_ij x_j   <= 0
///        x binary, w >= 0
MilpModel build_f3(const Instance& inst);

/// Feasible point of `build_f3(inst)` for a given selection; w takes its
/// largest allowed value, so the objective equals f(x).
std::vector<double> f3_point(const Instance& inst, const BinarySolution& x);

struct MilpParams {
  double time_limit_s = std::numeric_limits<double>::infinity();
  double gap_abs = tol::kGapAbs;
  double gap_rel = tol::kGapRel;
  /// Optional feasible starting point (all model variables).
  std::optional<std::vector<double>> start;
};

/// LP-relaxation branch and bound: best-bound node selection with a dive
/// into the child on the rounding side after every branching. The incumbent
/// holds the rounded integer variables; its value is the model objective.
SolveReport solve_milp(const MilpModel& model, const MilpParams& params = {});

/// Optimum of the continuous relaxation (NaN if infeasible).
double lp_relaxation_value(const MilpModel& model);

}  // namespace pdsp

#endif  // PDSP_BASELINES_HPP
