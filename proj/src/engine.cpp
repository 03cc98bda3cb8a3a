#include "pdsp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "pdsp/cuts.hpp"
#include "pdsp/deadline.hpp"
#include "pdsp/errors.hpp"
#include "pdsp/node_lp.hpp"

namespace pdsp {

BinarySolution initial_solution(const Instance& inst) {
  require_valid(inst);
  const std::size_t n = inst.n();
  const DenseMatrix& q = inst.q();
  Bits bits(n, 0);
  if (inst.p() == 1 || n < 2) {
    bits[0] = 1;
    return BinarySolution::from_bits(inst, std::move(bits));
  }
  std::size_t bi = 0;
  std::size_t bj = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (q(i, j) > q(bi, bj)) {
        bi = i;
        bj = j;
      }
    }
  }
  bits[bi] = bits[bj] = 1;
  std::vector<double> reach(n);
  for (std::size_t i = 0; i < n; ++i) reach[i] = q(i, bi) + q(i, bj);
  for (std::size_t chosen = 2; chosen < inst.p(); ++chosen) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (bits[i]) continue;
      if (best == n || reach[i] > reach[best]) best = i;
    }
    bits[best] = 1;
    const auto row = q.row(best);
    for (std::size_t i = 0; i < n; ++i) reach[i] += row[i];
  }
  return BinarySolution::from_bits(inst, std::move(bits));
}

namespace {

constexpr std::int8_t kFree = -1;

struct Node {
  std::vector<std::int8_t> fix;
  double bound = kInf;
  std::size_t depth = 0;
  std::size_t seq = 0;
  WarmStart warm;
};

class NodeQueue {
 public:
  explicit NodeQueue(NodeSelection rule) : rule_(rule) {}

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  void push(Node node) {
    heap_.push_back(std::move(node));
    std::push_heap(heap_.begin(), heap_.end(), cmp());
  }

  Node pop() {
    std::pop_heap(heap_.begin(), heap_.end(), cmp());
    Node node = std::move(heap_.back());
    heap_.pop_back();
    return node;
  }

  void prune_at_or_below(double threshold) {
    std::erase_if(heap_, [&](const Node& n) { return n.bound <= threshold; });
    std::make_heap(heap_.begin(), heap_.end(), cmp());
  }

  double max_bound() const {
    double best = -kInf;
    for (const Node& n : heap_) best = std::max(best, n.bound);
    return best;
  }

  void clear() { heap_.clear(); }

 private:
  // Heap "less": the top is the node to expand next.
  struct Order {
    NodeSelection rule;
    bool operator()(const Node& a, const Node& b) const {
      if (rule == NodeSelection::kDepthFirst) {
        if (a.depth != b.depth) return a.depth < b.depth;
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.seq > b.seq;
      }
      if (a.bound != b.bound) return a.bound < b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.seq > b.seq;
    }
  };
  Order cmp() const { return Order{rule_}; }

  NodeSelection rule_;
  std::vector<Node> heap_;
};

enum class TreeOutcome { kExhausted, kCandidate, kTimeLimit, kStopped };

class CuttingPlaneSolver {
 public:
  CuttingPlaneSolver(const Instance& inst, const SolveParams& params)
      : inst_(inst),
        params_(params),
        deadline_(params.time_limit_s),
        lp_(inst.n(), inst.p()),
        queue_(params.node_selection),
        q_scale_(inst.q().max_abs()) {}

  SolveReport run(bool single_tree) {
    require_valid(inst_);
    start();
    if (!stopped_) {
      if (single_tree) {
        run_single_tree();
      } else {
        run_multi_tree();
      }
    }
    return finish();
  }

 private:
  double gap_tol() const { return params_.gap_abs + params_.gap_rel * std::abs(lb_); }
  bool dominated(double bound) const { return bound <= lb_ + gap_tol(); }

  void start() {
    BinarySolution x0 = initial_solution(inst_);
    lb_ = x0.value();
    incumbent_ = x0;
    report_.cut_log.push_back(
        CutLogEntry{0, x0.value(), std::nan(""), lb_, x0.selected()});
    add_cut(x0, 0);
    if (zero_gradient(x0.bits())) {
      report_.zero_gradient_stop = true;
      stopped_ = true;
    }
    emit(true);
  }

  bool zero_gradient(const Bits& bits) const {
    const auto g = gradient(inst_, std::span<const std::uint8_t>(bits));
    double norm = 0.0;
    for (double v : g) norm = std::max(norm, std::abs(v));
    return norm <= tol::kZeroGradientRel * q_scale_;
  }

  void add_cut(const BinarySolution& y, std::size_t k) {
    if (!sources_.insert(y.bits()).second) {
      throw EngineFault("cutting plane source revisited at iteration " + std::to_string(k));
    }
    // A candidate's own cut is violated at the current LP point, so it goes
    // straight into the working rows.
    lp_.add_cut(make_cut(inst_, y, k), k > 0);
    ++report_.cuts_added;
  }

  /// theta at an integer point under the current pool.
  double envelope(const Bits& bits) const {
    double theta = kInf;
    for (const Cut& c : lp_.pool()) {
      theta = std::min(theta, c.evaluate(std::span<const std::uint8_t>(bits)));
    }
    return theta;
  }

  void accept_candidate(Bits bits, double theta, bool purge) {
    BinarySolution x = BinarySolution::from_bits(inst_, std::move(bits));
    const std::size_t k = report_.cut_log.size();
    const bool improved = x.value() > lb_;
    if (improved) {
      lb_ = x.value();
      incumbent_ = x;
      if (purge) queue_.prune_at_or_below(lb_ + gap_tol());
    }
    if (zero_gradient(x.bits())) {
      report_.zero_gradient_stop = true;
      stopped_ = true;
    }
    report_.cut_log.push_back(CutLogEntry{k, x.value(), theta, lb_, x.selected()});
    add_cut(x, k);
    emit(improved);
  }

  Node make_root() const {
    Node root;
    root.fix.assign(inst_.n(), kFree);
    root.seq = seq_counter_++;
    return root;
  }

  bool reachable(const Node& node) const {
    std::size_t ones = 0;
    std::size_t free_count = 0;
    for (auto f : node.fix) {
      ones += f == 1;
      free_count += f == kFree;
    }
    return ones <= inst_.p() && inst_.p() <= ones + free_count;
  }

  void load(const Node& node) {
    const std::size_t n = inst_.n();
    lower_.resize(n);
    upper_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      lower_[j] = node.fix[j] == 1 ? 1.0 : 0.0;
      upper_[j] = node.fix[j] == 0 ? 0.0 : 1.0;
    }
    lp_.load(lower_, upper_, node.warm);
  }

  void fix_by_reduced_cost(Node& node, const LpResult& res) const {
    if (!params_.reduced_cost_fixing || res.reduced_costs.empty()) return;
    const double threshold = lb_ + gap_tol();
    for (std::size_t j = 0; j < node.fix.size(); ++j) {
      if (node.fix[j] != kFree) continue;
      const double d = res.reduced_costs[j];
      const double margin = 1e-9 * (1.0 + std::abs(d));
      if (res.x[j] <= tol::kIntegrality && d < 0.0 && res.theta + d + margin <= threshold) {
        node.fix[j] = 0;
      } else if (res.x[j] >= 1.0 - tol::kIntegrality && d > 0.0 &&
                 res.theta - d + margin <= threshold) {
        node.fix[j] = 1;
      }
    }
  }

  std::size_t pick_branch(const LpResult& res) const {
    if (params_.branching == BranchingRule::kFirstFractional) {
      return res.fractional_indices.front();
    }
    std::size_t best = res.fractional_indices.front();
    double best_dist = std::abs(res.x[best] - 0.5);
    for (std::size_t j : res.fractional_indices) {
      const double dist = std::abs(res.x[j] - 0.5);
      if (dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    return best;
  }

  /// Expands queued nodes. In lazy mode candidates are cut off in place and the
  /// node is re-solved; otherwise the first candidate ends the search.
  TreeOutcome run_tree(bool lazy) {
    while (!queue_.empty()) {
      if (stopped_) return TreeOutcome::kStopped;
      if (deadline_.expired()) return TreeOutcome::kTimeLimit;
      Node node = queue_.pop();
      if (dominated(node.bound)) continue;
      if (!reachable(node)) continue;
      ++report_.nodes_explored;
      load(node);

      for (;;) {
        LpResult res = lp_.solve(&deadline_);
        ++report_.lp_solves;
        if (res.status == NodeLpStatus::kTimeLimit) {
          interrupted_bound_ = std::max(interrupted_bound_, node.bound);
          return TreeOutcome::kTimeLimit;
        }
        if (res.status == NodeLpStatus::kInfeasible) break;
        if (dominated(res.theta)) break;

        if (res.fractional_indices.empty()) {
          Bits bits(res.x.size());
          for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = res.x[j] > 0.5 ? 1 : 0;
          if (popcount(bits) != inst_.p()) {
            throw EngineFault("integral LP solution violates the cardinality row");
          }
          const double theta = std::min(res.theta, envelope(bits));
          if (dominated(theta)) break;
          if (!lazy) {
            pending_ = std::move(bits);
            pending_theta_ = theta;
            return TreeOutcome::kCandidate;
          }
          accept_candidate(std::move(bits), theta, true);
          if (stopped_) return TreeOutcome::kStopped;
          if (deadline_.expired()) {
            interrupted_bound_ = std::max(interrupted_bound_, std::min(node.bound, res.theta));
            return TreeOutcome::kTimeLimit;
          }
          continue;
        }

        fix_by_reduced_cost(node, res);
        const std::size_t j = pick_branch(res);
        const WarmStart warm = lp_.warm_start();
        for (std::int8_t value : {std::int8_t{0}, std::int8_t{1}}) {
          Node child;
          child.fix = node.fix;
          child.fix[j] = value;
          child.bound = res.theta;
          child.depth = node.depth + 1;
          child.seq = seq_counter_++;
          child.warm = warm;
          queue_.push(std::move(child));
        }
        break;
      }
      emit(false);
    }
    return TreeOutcome::kExhausted;
  }

  void run_single_tree() {
    queue_.push(make_root());
    const TreeOutcome outcome = run_tree(true);
    timed_out_ = outcome == TreeOutcome::kTimeLimit;
    report_.outer_iterations = 1;
  }

  void run_multi_tree() {
    for (;;) {
      ++report_.outer_iterations;
      queue_.clear();
      queue_.push(make_root());
      const TreeOutcome outcome = run_tree(false);
      if (outcome == TreeOutcome::kTimeLimit) {
        timed_out_ = true;
        return;
      }
      if (outcome != TreeOutcome::kCandidate) return;
      accept_candidate(std::move(pending_), pending_theta_, false);
      if (stopped_) return;
      if (deadline_.expired()) {
        // The frozen-pool tree for the next iteration was never searched.
        interrupted_bound_ = kInf;
        timed_out_ = true;
        return;
      }
    }
  }

  double current_upper_bound() const {
    double ub = lb_;
    ub = std::max(ub, queue_.max_bound());
    ub = std::max(ub, interrupted_bound_);
    return ub;
  }

  void emit(bool force) {
    if (!params_.progress) return;
    const double now = deadline_.elapsed_ms();
    if (!force && now - last_emit_ms_ < params_.progress_interval_ms) return;
    last_emit_ms_ = now;
    params_.progress(ProgressEvent{now, lb_, current_upper_bound(), report_.nodes_explored,
                                   report_.cuts_added});
  }

  SolveReport finish() {
    report_.incumbent = incumbent_;
    report_.lower_bound = lb_;
    if (timed_out_) {
      report_.status = SolveStatus::kTimeLimit;
      double ub = current_upper_bound();
      if (!std::isfinite(ub)) {
        // No node bound available: fall back to the root LP bound of the pool.
        ub = std::max(lb_, root_bound());
      }
      report_.upper_bound = ub;
    } else {
      report_.status = SolveStatus::kOptimal;
      report_.upper_bound = lb_;
    }
    report_.wall_time_ms = deadline_.elapsed_ms();
    if (params_.progress) {
      params_.progress(ProgressEvent{report_.wall_time_ms, report_.lower_bound,
                                     report_.upper_bound, report_.nodes_explored,
                                     report_.cuts_added});
    }
    return std::move(report_);
  }

  double root_bound() {
    Node root = make_root();
    load(root);
    const LpResult res = lp_.solve(nullptr);
    return res.status == NodeLpStatus::kOptimal ? res.theta : kInf;
  }

  const Instance& inst_;
  SolveParams params_;
  Deadline deadline_;
  CutLp lp_;
  NodeQueue queue_;
  double q_scale_;
  std::set<Bits> sources_;
  std::optional<BinarySolution> incumbent_;
  double lb_ = 0.0;
  SolveReport report_;
  bool stopped_ = false;
  bool timed_out_ = false;
  double interrupted_bound_ = -kInf;
  mutable std::size_t seq_counter_ = 0;
  Bits pending_;
  double pending_theta_ = 0.0;
  double last_emit_ms_ = 0.0;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace

SolveReport solve_single_tree(const Instance& inst, const SolveParams& params) {
  return CuttingPlaneSolver(inst, params).run(true);
}

SolveReport solve_multi_tree(const Instance& inst, const SolveParams& params) {
  return CuttingPlaneSolver(inst, params).run(false);
}

}  // namespace pdsp
