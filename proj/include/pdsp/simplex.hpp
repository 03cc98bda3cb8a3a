#ifndef PDSP_SIMPLEX_HPP
#define PDSP_SIMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pdsp/deadline.hpp"

namespace pdsp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : std::uint8_t { kLessEqual, kGreaterEqual, kEqual };

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kTimeLimit };

const char* to_string(LpStatus status);

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

/// Column statuses: structural columns first, then one slack per row.
/// A basis captured before rows were appended stays usable; the missing
/// slacks are taken as basic.
struct Basis {
  std::vector<VarStatus> structural;
  std::vector<VarStatus> slack;
  bool empty() const { return structural.empty() && slack.empty(); }
};

struct SimplexOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::size_t max_iterations = 200000;
  std::size_t refactor_interval = 64;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t bland_after = 40;
};

/// Dense revised bounded-variable primal simplex for
///
///   max c.x  s.t.  a_i.x (<=, >=, =) b_i,  l <= x <= u.
///
/// Each row gets a slack s_i with a_i.x + s_i = b_i. Infeasible starting
/// bases are repaired by a composite phase 1 that minimizes the sum of bound
/// violations of the basic variables, so any basis (a parent node's, or one
/// from before rows were added) is a valid warm start. Entering variables use
/// Dantzig pricing with Bland's rule after a run of degenerate pivots; all ties
/// go to the lowest column index.
class DenseSimplex {
 public:
  explicit DenseSimplex(std::size_t num_cols, SimplexOptions options = {});

  std::size_t num_cols() const noexcept { return num_cols_; }
  std::size_t num_rows() const noexcept { return rows_.size(); }

  void set_objective(std::span<const double> c);
  void set_col_bounds(std::size_t j, double lower, double upper);
  double col_lower(std::size_t j) const { return lower_[j]; }
  double col_upper(std::size_t j) const { return upper_[j]; }

  /// Appends a row; the new slack enters the basis so an existing
  /// factorization is extended in O(m^2) instead of rebuilt.
  std::size_t add_row(std::span<const double> coefs, RowSense sense, double rhs);

  LpStatus solve(const Deadline* deadline = nullptr);

  LpStatus status() const noexcept { return status_; }
  double objective_value() const noexcept { return objective_value_; }
  /// Structural values after the last solve.
  std::span<const double> primal() const { return {value_.data(), num_cols_}; }
  /// c_j - y.a_j for structural columns after an optimal solve.
  std::vector<double> reduced_costs() const;
  /// Simplex multipliers y, one per row.
  std::vector<double> row_duals() const;
  double row_activity(std::size_t i) const;

  Basis basis() const;
  void set_basis(const Basis& basis);
  void reset_basis();

  std::size_t iterations() const noexcept { return total_iterations_; }
  std::size_t last_iterations() const noexcept { return last_iterations_; }

 private:
  std::size_t total_cols() const noexcept { return num_cols_ + rows_.size(); }
  double coef(std::size_t row, std::size_t col) const;
  void column(std::size_t col, std::vector<double>& out) const;
  void place_nonbasic(std::size_t col);
  void ensure_valid_status(std::size_t col);
  void refactor();
  void compute_basic_values();
  void compute_duals(const std::vector<double>& cost_basic, std::vector<double>& y) const;
  double dot_column(const std::vector<double>& y, std::size_t col) const;

  std::size_t num_cols_;
  SimplexOptions options_;
  std::vector<double> objective_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  // Bounds, values and statuses over structural + slack columns.
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<VarStatus> status_of_;
  std::vector<std::size_t> head_;  // basic column at each basis position
  std::vector<double> binv_;       // m x m, row-major
  bool factor_valid_ = false;
  std::size_t pivots_since_refactor_ = 0;

  LpStatus status_ = LpStatus::kIterationLimit;
  double objective_value_ = 0.0;
  std::size_t total_iterations_ = 0;
  std::size_t last_iterations_ = 0;
};

}  // namespace pdsp

#endif  // PDSP_SIMPLEX_HPP
