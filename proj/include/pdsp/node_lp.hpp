#ifndef PDSP_NODE_LP_HPP
#define PDSP_NODE_LP_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "pdsp/cuts.hpp"
#include "pdsp/simplex.hpp"

namespace pdsp {

/// Variable box of one branch-and-bound node.
struct NodeLP {
  std::vector<double> lower;
  std::vector<double> upper;
  /// Number of pool cuts visible to this node (a prefix of the pool).
  std::size_t cut_pool_version = 0;

  static NodeLP root(std::size_t n, std::size_t cuts);
};

enum class NodeLpStatus { kOptimal, kInfeasible, kTimeLimit };

struct LpResult {
  NodeLpStatus status = NodeLpStatus::kInfeasible;
  std::vector<double> x;
  double theta = 0.0;
  std::vector<std::size_t> fractional_indices;
  std::vector<double> reduced_costs;
};

std::vector<std::size_t> fractional_indices(std::span<const double> x);

/// max theta s.t. theta <= g_k.x + c_k for the visible cuts,
/// sum x = p, lower <= x <= upper. Built from scratch on every call.
LpResult solve_node_lp(std::span<const Cut> cuts, const NodeLP& node, std::size_t p);

/// Checks feasibility of `result` and, when the system is small enough,
/// compares theta with an exhaustive vertex enumeration that does not use
/// the simplex code.
bool lp_reference_check(std::span<const Cut> cuts, const NodeLP& node, std::size_t p,
                        const LpResult& result);

/// Vertex-enumeration optimum of the node LP, or NaN if the node is infeasible.
/// Throws GuardError when more than `max_systems` linear systems would be solved.
double enumerate_node_lp(std::span<const Cut> cuts, const NodeLP& node, std::size_t p,
                         std::size_t max_systems = 5'000'000);

/// Rows (pool indices) and basis to reinstall when a node is expanded.
struct WarmStart {
  std::vector<std::size_t> rows;
  Basis basis;
  bool empty() const { return rows.empty() && basis.empty(); }
};

/// Cutting-plane LP used by the branch-and-cut engine. The pool may hold far
/// more cuts than are binding, so only a working set of them is kept as LP
/// rows (plus the cardinality row); `solve` separates the rest of the pool
/// and re-optimizes until no pool cut is violated.
class CutLp {
 public:
  CutLp(std::size_t n, std::size_t p);

  /// Appends to the pool. The cut becomes a row only once it is violated,
  /// or immediately when `activate` is set.
  void add_cut(Cut cut, bool activate = false);
  std::span<const Cut> pool() const noexcept { return pool_; }
  std::size_t num_cuts() const noexcept { return pool_.size(); }
  std::size_t num_active() const noexcept { return active_.size(); }

  /// Installs the node's box. An empty warm start keeps the current rows and basis.
  void load(std::span<const double> lower, std::span<const double> upper,
            const WarmStart& warm);

  LpResult solve(const Deadline* deadline);

  /// Current basis restricted to rows that are binding (slack nonbasic or zero).
  WarmStart warm_start() const;

 private:
  void rebuild(const std::vector<std::size_t>& rows);
  void push_row(std::size_t k);

  std::size_t n_;
  std::size_t p_;
  std::vector<Cut> pool_;
  std::vector<std::size_t> active_;
  std::vector<std::uint8_t> is_active_;
  DenseSimplex lp_;
};

}  // namespace pdsp

#endif  // PDSP_NODE_LP_HPP
