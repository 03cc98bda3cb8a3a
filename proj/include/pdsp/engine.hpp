#ifndef PDSP_ENGINE_HPP
#define PDSP_ENGINE_HPP

#include <functional>
#include <limits>

#include "pdsp/instance.hpp"
#include "pdsp/tolerances.hpp"

namespace pdsp {

enum class NodeSelection { kBestBound, kDepthFirst };
enum class BranchingRule { kMostFractional, kFirstFractional };

struct ProgressEvent {
  double time_ms = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::size_t nodes = 0;
  std::size_t cuts = 0;
};

struct SolveParams {
  double time_limit_s = std::numeric_limits<double>::infinity();
  double gap_abs = tol::kGapAbs;
  double gap_rel = tol::kGapRel;
  NodeSelection node_selection = NodeSelection::kBestBound;
  BranchingRule branching = BranchingRule::kMostFractional;
  /// Fix variables whose LP reduced cost proves the other value cannot beat LB.
  bool reduced_cost_fixing = true;
  /// Observer for live logging; called on LB changes and at most every
  /// `progress_interval_ms` otherwise.
  std::function<void(const ProgressEvent&)> progress;
  double progress_interval_ms = 1000.0;
};

/// Greedy start: the farthest pair, then repeatedly the location with the
/// largest total distance to those already chosen. p = 1 picks index 0.
BinarySolution initial_solution(const Instance& inst);

/// Cutting-plane method inside one best-first branch-and-bound tree: integer
/// LP optima that beat LB become candidates, get a tangent cut, and the same
/// node is re-solved.
SolveReport solve_single_tree(const Instance& inst, const SolveParams& params = {});

/// The cutting-plane loop with a fresh branch-and-bound search over the frozen
/// cut pool in every outer iteration.
SolveReport solve_multi_tree(const Instance& inst, const SolveParams& params = {});

}  // namespace pdsp

#endif  // PDSP_ENGINE_HPP
