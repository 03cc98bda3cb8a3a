#include "pdsp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdsp/deadline.hpp"
#include "pdsp/errors.hpp"

namespace pdsp {

double subset_count(std::size_t n, std::size_t p) {
  if (p > n) return 0.0;
  p = std::min(p, n - p);
  double c = 1.0;
  for (std::size_t i = 1; i <= p; ++i) {
    c = c * static_cast<double>(n - p + i) / static_cast<double>(i);
    if (!std::isfinite(c)) return c;
  }
  return std::round(c);
}

namespace {

class SubsetSearch {
 public:
  explicit SubsetSearch(const Instance& inst) : q_(inst.q()), n_(inst.n()), p_(inst.p()) {
    chosen_.reserve(p_);
  }

  std::vector<std::size_t> run() {
    descend(0, 0.0);
    return best_;
  }

 private:
  void descend(std::size_t start, double value) {
    if (chosen_.size() == p_) {
      if (best_.empty() || value > best_value_ + 1e-12 * (1.0 + std::abs(best_value_))) {
        best_ = chosen_;
        best_value_ = value;
      }
      return;
    }
    const std::size_t last = n_ - (p_ - chosen_.size());
    for (std::size_t i = start; i <= last; ++i) {
      double gain = 0.0;
      const auto row = q_.row(i);
      for (std::size_t c : chosen_) gain += row[c];
      chosen_.push_back(i);
      descend(i + 1, value + gain);
      chosen_.pop_back();
    }
  }

  const DenseMatrix& q_;
  std::size_t n_;
  std::size_t p_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  double best_value_ = 0.0;
};

}  // namespace

BinarySolution brute_force(const Instance& inst) {
  require_valid(inst);
  const double count = subset_count(inst.n(), inst.p());
  if (count > kEnumerationLimit) {
    throw GuardError("brute force refused: C(" + std::to_string(inst.n()) + ", " +
                     std::to_string(inst.p()) + ") exceeds 1e7 subsets");
  }
  return BinarySolution::from_indices(inst, SubsetSearch(inst).run());
}

void MilpModel::check() const {
  const std::size_t nv = num_vars();
  if (lower.size() != nv || upper.size() != nv || integer.size() != nv) {
    throw ArgumentError("MILP column data have inconsistent lengths");
  }
  if (senses.size() != rows.size() || rhs.size() != rows.size()) {
    throw ArgumentError("MILP row data have inconsistent lengths");
  }
  for (const auto& row : rows) {
    if (row.size() != nv) throw ArgumentError("MILP row length differs from the variable count");
  }
  for (std::size_t j = 0; j < nv; ++j) {
    if (lower[j] > upper[j]) throw ArgumentError("MILP variable has lower > upper");
  }
}

MilpModel build_f3(const Instance& inst) {
  require_valid(inst);
  const std::size_t n = inst.n();
  if (n < 2) throw ArgumentError("the linearized model needs n >= 2");
  const DenseMatrix& q = inst.q();
  const std::size_t nv = 2 * n - 1;
  auto w = [n](std::size_t i) { return n + i; };

  MilpModel m;
  m.objective.assign(nv, 0.0);
  m.lower.assign(nv, 0.0);
  m.upper.assign(nv, 1.0);
  m.integer.assign(nv, 0);
  for (std::size_t i = 0; i < n; ++i) m.integer[i] = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m.objective[w(i)] = 1.0;
    m.upper[w(i)] = kInf;
  }

  std::vector<double> card(nv, 0.0);
  std::fill(card.begin(), card.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
  m.rows.push_back(std::move(card));
  m.senses.push_back(RowSense::kEqual);
  m.rhs.push_back(static_cast<double>(inst.p()));

  for (std::size_t i = 0; i + 1 < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) row_sum += q(i, j);

    std::vector<double> own(nv, 0.0);
    own[w(i)] = 1.0;
    own[i] = -row_sum;
    m.rows.push_back(std::move(own));
    m.senses.push_back(RowSense::kLessEqual);
    m.rhs.push_back(0.0);

    std::vector<double> partners(nv, 0.0);
    partners[w(i)] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) partners[j] = -q(i, j);
    m.rows.push_back(std::move(partners));
    m.senses.push_back(RowSense::kLessEqual);
    m.rhs.push_back(0.0);
  }
  return m;
}

std::vector<double> f3_point(const Instance& inst, const BinarySolution& x) {
  const std::size_t n = inst.n();
  if (x.size() != n) throw ArgumentError("selection length differs from n");
  std::vector<double> point(2 * n - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) point[i] = x.bits()[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!x.bits()[i]) continue;
    double partners = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) partners += x.bits()[j] ? inst.q()(i, j) : 0.0;
    point[n + i] = partners;
  }
  return point;
}

namespace {

DenseSimplex relaxation(const MilpModel& model) {
  DenseSimplex lp(model.num_vars());
  lp.set_objective(model.objective);
  for (std::size_t j = 0; j < model.num_vars(); ++j) {
    lp.set_col_bounds(j, model.lower[j], model.upper[j]);
  }
  for (std::size_t i = 0; i < model.num_rows(); ++i) {
    lp.add_row(model.rows[i], model.senses[i], model.rhs[i]);
  }
  return lp;
}

bool is_feasible(const MilpModel& model, const std::vector<double>& x) {
  if (x.size() != model.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < model.lower[j] - tol::kFeasibility || x[j] > model.upper[j] + tol::kFeasibility) {
      return false;
    }
    if (model.integer[j] && std::abs(x[j] - std::round(x[j])) > tol::kIntegrality) return false;
  }
  for (std::size_t i = 0; i < model.num_rows(); ++i) {
    double a = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) a += model.rows[i][j] * x[j];
    const double slack = tol::kFeasibility * (1.0 + std::abs(model.rhs[i]));
    const bool ok = model.senses[i] == RowSense::kLessEqual    ? a <= model.rhs[i] + slack
                    : model.senses[i] == RowSense::kGreaterEqual ? a >= model.rhs[i] - slack
                                                                 : std::abs(a - model.rhs[i]) <= slack;
    if (!ok) return false;
  }
  return true;
}

struct MilpNode {
  std::vector<double> lower;
  std::vector<double> upper;
  double bound = kInf;
  std::size_t depth = 0;
  std::size_t seq = 0;
  Basis warm;
};

struct BestBoundFirst {
  bool operator()(const MilpNode& a, const MilpNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

}  // namespace

SolveReport solve_milp(const MilpModel& model, const MilpParams& params) {
  model.check();
  Deadline deadline(params.time_limit_s);
  const std::size_t nv = model.num_vars();
  DenseSimplex lp = relaxation(model);

  SolveReport report;
  std::optional<std::vector<double>> best;
  double lb = -kInf;
  auto dot_objective = [&](const std::vector<double>& x) {
    double v = 0.0;
    for (std::size_t j = 0; j < nv; ++j) v += model.objective[j] * x[j];
    return v;
  };
  if (params.start) {
    if (!is_feasible(model, *params.start)) throw ArgumentError("MILP start point is infeasible");
    best = *params.start;
    lb = dot_objective(*best);
  }
  auto gap_tol = [&] { return params.gap_abs + params.gap_rel * (std::isfinite(lb) ? std::abs(lb) : 0.0); };
  auto dominated = [&](double bound) { return std::isfinite(lb) && bound <= lb + gap_tol(); };

  std::vector<MilpNode> heap;
  std::optional<MilpNode> dive;
  std::size_t seq = 0;
  heap.push_back(MilpNode{model.lower, model.upper, kInf, 0, seq++, {}});

  bool timed_out = false;
  double interrupted = -kInf;
  while (dive || !heap.empty()) {
    if (deadline.expired()) {
      timed_out = true;
      break;
    }
    MilpNode node;
    if (dive) {
      node = std::move(*dive);
      dive.reset();
    } else {
      std::pop_heap(heap.begin(), heap.end(), BestBoundFirst{});
      node = std::move(heap.back());
      heap.pop_back();
    }
    if (dominated(node.bound)) continue;
    ++report.nodes_explored;
    for (std::size_t j = 0; j < nv; ++j) lp.set_col_bounds(j, node.lower[j], node.upper[j]);
    if (!node.warm.empty()) lp.set_basis(node.warm);

    const LpStatus status = lp.solve(&deadline);
    ++report.lp_solves;
    if (status == LpStatus::kTimeLimit) {
      interrupted = node.bound;
      timed_out = true;
      break;
    }
    if (status == LpStatus::kInfeasible) continue;
    if (status == LpStatus::kUnbounded) throw ArgumentError("MILP relaxation is unbounded");
    if (status != LpStatus::kOptimal) {
      throw EngineFault(std::string("MILP node LP ended with status ") + to_string(status));
    }
    const double z = lp.objective_value();
    if (dominated(z)) continue;

    const auto x = lp.primal();
    std::size_t branch = nv;
    double best_frac = 0.0;
    for (std::size_t j = 0; j < nv; ++j) {
      if (!model.integer[j]) continue;
      const double frac = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
      if (frac > tol::kIntegrality && frac > best_frac) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch == nv) {
      std::vector<double> point(x.begin(), x.end());
      for (std::size_t j = 0; j < nv; ++j) {
        if (model.integer[j]) point[j] = std::round(point[j]);
      }
      best = std::move(point);
      lb = z;
      std::erase_if(heap, [&](const MilpNode& m) { return dominated(m.bound); });
      std::make_heap(heap.begin(), heap.end(), BestBoundFirst{});
      continue;
    }

    const double v = x[branch];
    const Basis warm = lp.basis();
    MilpNode down{node.lower, node.upper, z, node.depth + 1, seq++, warm};
    down.upper[branch] = std::floor(v);
    MilpNode up{node.lower, node.upper, z, node.depth + 1, seq++, warm};
    up.lower[branch] = std::ceil(v);
    const bool prefer_up = v - std::floor(v) >= 0.5;
    heap.push_back(prefer_up ? std::move(down) : std::move(up));
    std::push_heap(heap.begin(), heap.end(), BestBoundFirst{});
    dive = prefer_up ? std::move(up) : std::move(down);
  }

  report.lower_bound = lb;
  if (best) {
    Bits bits;
    for (std::size_t j = 0; j < nv; ++j) {
      if (model.integer[j]) bits.push_back(static_cast<std::uint8_t>(std::lround((*best)[j])));
    }
    report.incumbent = BinarySolution::unchecked(std::move(bits), lb);
  }
  if (timed_out) {
    report.status = SolveStatus::kTimeLimit;
    double ub = std::max(lb, interrupted);
    if (dive) ub = std::max(ub, dive->bound);
    for (const MilpNode& m : heap) ub = std::max(ub, m.bound);
    report.upper_bound = ub;
  } else if (best) {
    report.status = SolveStatus::kOptimal;
    report.upper_bound = lb;
  } else {
    report.status = SolveStatus::kInfeasible;
    report.upper_bound = -kInf;
  }
  report.wall_time_ms = deadline.elapsed_ms();
  return report;
}

double lp_relaxation_value(const MilpModel& model) {
  model.check();
  DenseSimplex lp = relaxation(model);
  const LpStatus status = lp.solve();
  if (status == LpStatus::kInfeasible) return std::nan("");
  if (status == LpStatus::kUnbounded) return kInf;
  if (status != LpStatus::kOptimal) {
    throw EngineFault(std::string("relaxation LP ended with status ") + to_string(status));
  }
  return lp.objective_value();
}

}  // namespace pdsp
