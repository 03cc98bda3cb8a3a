#include "pdsp/node_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdsp/errors.hpp"
#include "pdsp/tolerances.hpp"

namespace pdsp {

NodeLP NodeLP::root(std::size_t n, std::size_t cuts) {
  return NodeLP{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0), cuts};
}

std::vector<std::size_t> fractional_indices(std::span<const double> x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::min(x[i], 1.0 - x[i]) > tol::kIntegrality) out.push_back(i);
  }
  return out;
}

namespace {

void check_node(std::span<const Cut> cuts, const NodeLP& node) {
  if (node.cut_pool_version == 0) {
    throw ArgumentError("node LP needs at least one cut (theta is unbounded otherwise)");
  }
  if (node.cut_pool_version > cuts.size()) {
    throw ArgumentError("node references more cuts than the pool holds");
  }
  const std::size_t n = node.lower.size();
  if (node.upper.size() != n) throw ArgumentError("node bound vectors differ in length");
  for (std::size_t k = 0; k < node.cut_pool_version; ++k) {
    if (cuts[k].gradient.size() != n) throw ArgumentError("cut dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(0.0 <= node.lower[i] && node.lower[i] <= node.upper[i] && node.upper[i] <= 1.0)) {
      throw ArgumentError("node bounds must satisfy 0 <= lower <= upper <= 1");
    }
  }
}

bool cardinality_reachable(const NodeLP& node, std::size_t p) {
  const double lo = std::accumulate(node.lower.begin(), node.lower.end(), 0.0);
  const double hi = std::accumulate(node.upper.begin(), node.upper.end(), 0.0);
  const double target = static_cast<double>(p);
  return lo <= target + tol::kFeasibility && target <= hi + tol::kFeasibility;
}

LpResult collect(const DenseSimplex& lp, LpStatus status, std::size_t n) {
  LpResult res;
  switch (status) {
    case LpStatus::kOptimal: res.status = NodeLpStatus::kOptimal; break;
    case LpStatus::kInfeasible: res.status = NodeLpStatus::kInfeasible; return res;
    case LpStatus::kTimeLimit: res.status = NodeLpStatus::kTimeLimit; return res;
    case LpStatus::kUnbounded:
    case LpStatus::kIterationLimit:
      throw EngineFault(std::string("cutting-plane LP ended with status ") + to_string(status));
  }
  const auto primal = lp.primal();
  res.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    res.x[j] = std::clamp(primal[j], lp.col_lower(j), lp.col_upper(j));
  }
  res.theta = primal[n];
  res.fractional_indices = fractional_indices(res.x);
  auto d = lp.reduced_costs();
  d.resize(n);
  res.reduced_costs = std::move(d);
  return res;
}

}  // namespace

LpResult solve_node_lp(std::span<const Cut> cuts, const NodeLP& node, std::size_t p) {
  check_node(cuts, node);
  const std::size_t n = node.lower.size();
  if (!cardinality_reachable(node, p)) return LpResult{};

  CutLp lp(n, p);
  for (std::size_t k = 0; k < node.cut_pool_version; ++k) lp.add_cut(cuts[k], true);
  lp.load(node.lower, node.upper, WarmStart{});
  return lp.solve(nullptr);
}

namespace {

DenseSimplex make_cardinality_lp(std::size_t n, std::size_t p) {
  DenseSimplex lp(n + 1);
  std::vector<double> obj(n + 1, 0.0);
  obj[n] = 1.0;
  lp.set_objective(obj);
  for (std::size_t j = 0; j < n; ++j) lp.set_col_bounds(j, 0.0, 1.0);
  lp.set_col_bounds(n, -kInf, kInf);
  std::vector<double> card(n + 1, 1.0);
  card[n] = 0.0;
  lp.add_row(card, RowSense::kEqual, static_cast<double>(p));
  return lp;
}

}  // namespace

CutLp::CutLp(std::size_t n, std::size_t p) : n_(n), p_(p), lp_(make_cardinality_lp(n, p)) {}

void CutLp::add_cut(Cut cut, bool activate) {
  if (cut.gradient.size() != n_) throw ArgumentError("cut dimension mismatch");
  pool_.push_back(std::move(cut));
  is_active_.push_back(0);
  if (activate) push_row(pool_.size() - 1);
}

void CutLp::push_row(std::size_t k) {
  // theta - g.x <= c
  const Cut& cut = pool_[k];
  std::vector<double> row(n_ + 1);
  for (std::size_t j = 0; j < n_; ++j) row[j] = -cut.gradient[j];
  row[n_] = 1.0;
  lp_.add_row(row, RowSense::kLessEqual, cut.offset);
  active_.push_back(k);
  is_active_[k] = 1;
}

void CutLp::rebuild(const std::vector<std::size_t>& rows) {
  std::vector<double> lower(n_);
  std::vector<double> upper(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    lower[j] = lp_.col_lower(j);
    upper[j] = lp_.col_upper(j);
  }
  lp_ = make_cardinality_lp(n_, p_);
  for (std::size_t j = 0; j < n_; ++j) lp_.set_col_bounds(j, lower[j], upper[j]);
  for (std::size_t k : active_) is_active_[k] = 0;
  active_.clear();
  for (std::size_t k : rows) push_row(k);
}

void CutLp::load(std::span<const double> lower, std::span<const double> upper,
                 const WarmStart& warm) {
  for (std::size_t j = 0; j < n_; ++j) lp_.set_col_bounds(j, lower[j], upper[j]);
  if (warm.empty()) return;
  if (warm.rows != active_) rebuild(warm.rows);
  lp_.set_basis(warm.basis);
}

LpResult CutLp::solve(const Deadline* deadline) {
  if (pool_.empty()) throw ArgumentError("cutting-plane LP needs at least one cut");
  if (active_.empty()) push_row(0);
  std::vector<std::pair<double, std::size_t>> violated;
  for (;;) {
    const LpStatus status = lp_.solve(deadline);
    LpResult res = collect(lp_, status, n_);
    if (res.status != NodeLpStatus::kOptimal) return res;

    const auto primal = lp_.primal();
    const double theta = primal[n_];
    const double slack_tol = 1e-10 * (1.0 + std::abs(theta));
    violated.clear();
    for (std::size_t k = 0; k < pool_.size(); ++k) {
      if (is_active_[k]) continue;
      const double excess = theta - pool_[k].evaluate(primal.first(n_));
      if (excess > slack_tol) violated.emplace_back(-excess, k);
    }
    if (violated.empty()) return res;
    constexpr std::size_t kBatch = 8;
    const std::size_t take = std::min(kBatch, violated.size());
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(take),
                      violated.end());
    for (std::size_t t = 0; t < take; ++t) push_row(violated[t].second);
  }
}

WarmStart CutLp::warm_start() const {
  const Basis full = lp_.basis();
  WarmStart warm;
  warm.basis.structural = full.structural;
  warm.basis.slack.push_back(full.slack[0]);
  for (std::size_t r = 0; r < active_.size(); ++r) {
    const std::size_t row = r + 1;
    const bool slack_basic = full.slack[row] == VarStatus::kBasic;
    if (slack_basic) {
      const double slack = pool_[active_[r]].offset - lp_.row_activity(row);
      if (slack > 1e-7 * (1.0 + std::abs(pool_[active_[r]].offset))) continue;
    }
    warm.rows.push_back(active_[r]);
    warm.basis.slack.push_back(full.slack[row]);
  }
  return warm;
}

namespace {

// Solves a small dense system in place; false when (numerically) singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t dim) {
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < dim; ++r) {
      if (std::abs(a[r * dim + c]) > std::abs(a[piv * dim + c])) piv = r;
    }
    if (std::abs(a[piv * dim + c]) < 1e-12) return false;
    if (piv != c) {
      for (std::size_t k = 0; k < dim; ++k) std::swap(a[c * dim + k], a[piv * dim + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == c) continue;
      const double f = a[r * dim + c] / a[c * dim + c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < dim; ++k) a[r * dim + k] -= f * a[c * dim + k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < dim; ++c) b[c] /= a[c * dim + c];
  return true;
}

class VertexEnumerator {
 public:
  VertexEnumerator(std::span<const Cut> cuts, const NodeLP& node, std::size_t p,
                   std::size_t max_systems)
      : cuts_(cuts.first(node.cut_pool_version)),
        node_(node),
        n_(node.lower.size()),
        p_(static_cast<double>(p)),
        max_systems_(max_systems),
        state_(n_, 0),
        x_(n_, 0.0) {}

  double run() {
    recurse(0, 0, 0.0, 0.0);
    return best_;
  }

 private:
  static constexpr int kLower = 0;
  static constexpr int kUpper = 1;
  static constexpr int kFree = 2;

  double envelope(const std::vector<double>& x) const {
    double theta = kInf;
    for (const Cut& c : cuts_) theta = std::min(theta, c.evaluate(x));
    return theta;
  }

  void consider(const std::vector<double>& x) {
    const double v = envelope(x);
    if (std::isnan(best_) || v > best_) best_ = v;
  }

  void recurse(std::size_t i, std::size_t free_count, double fixed_sum, double free_cap) {
    if (free_count > cuts_.size()) return;
    if (i == n_) {
      leaf(free_count, fixed_sum, free_cap);
      return;
    }
    const double lo = node_.lower[i];
    const double hi = node_.upper[i];
    state_[i] = kLower;
    recurse(i + 1, free_count, fixed_sum + lo, free_cap);
    if (hi > lo) {
      state_[i] = kUpper;
      recurse(i + 1, free_count, fixed_sum + hi, free_cap);
      state_[i] = kFree;
      recurse(i + 1, free_count + 1, fixed_sum, free_cap + (hi - lo));
    }
  }

  void leaf(std::size_t free_count, double fixed_sum, double free_cap) {
    std::vector<std::size_t> free_vars;
    double free_lower = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (state_[i] == kFree) {
        free_vars.push_back(i);
        free_lower += node_.lower[i];
        x_[i] = 0.0;
      } else {
        x_[i] = state_[i] == kLower ? node_.lower[i] : node_.upper[i];
      }
    }
    const double remaining = p_ - fixed_sum;
    if (free_count == 0) {
      if (std::abs(remaining) <= 1e-9) consider(x_);
      return;
    }
    if (remaining < free_lower - 1e-9 || remaining > free_lower + free_cap + 1e-9) return;

    // Choose which free_count cuts are tight.
    const std::size_t f = free_count;
    const std::size_t dim = f + 1;
    std::vector<std::size_t> pick(f);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      if (++systems_ > max_systems_) {
        throw GuardError("vertex enumeration exceeds the system budget");
      }
      // Unknowns: x_F (f entries) then theta.
      std::vector<double> a(dim * dim, 0.0);
      std::vector<double> b(dim, 0.0);
      for (std::size_t c = 0; c < f; ++c) a[c] = 1.0;
      b[0] = remaining;
      for (std::size_t t = 0; t < f; ++t) {
        const Cut& cut = cuts_[pick[t]];
        double rhs = cut.offset;
        for (std::size_t i = 0; i < n_; ++i) {
          if (state_[i] != kFree) rhs += cut.gradient[i] * x_[i];
        }
        double* row = a.data() + (t + 1) * dim;
        for (std::size_t c = 0; c < f; ++c) row[c] = -cut.gradient[free_vars[c]];
        row[f] = 1.0;
        b[t + 1] = rhs;
      }
      if (solve_dense(a, b, dim)) {
        bool inside = true;
        for (std::size_t c = 0; c < f; ++c) {
          const std::size_t i = free_vars[c];
          if (b[c] < node_.lower[i] - 1e-9 || b[c] > node_.upper[i] + 1e-9) {
            inside = false;
            break;
          }
        }
        if (inside) {
          std::vector<double> x = x_;
          for (std::size_t c = 0; c < f; ++c) {
            x[free_vars[c]] = std::clamp(b[c], node_.lower[free_vars[c]], node_.upper[free_vars[c]]);
          }
          consider(x);
        }
      }
      // Next combination of f cuts out of cuts_.size().
      std::size_t pos = f;
      while (pos > 0 && pick[pos - 1] == cuts_.size() - f + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t k = pos; k < f; ++k) pick[k] = pick[k - 1] + 1;
    }
  }

  std::span<const Cut> cuts_;
  const NodeLP& node_;
  std::size_t n_;
  double p_;
  std::size_t max_systems_;
  std::size_t systems_ = 0;
  std::vector<int> state_;
  std::vector<double> x_;
  double best_ = std::nan("");
};

}  // namespace

double enumerate_node_lp(std::span<const Cut> cuts, const NodeLP& node, std::size_t p,
                         std::size_t max_systems) {
  check_node(cuts, node);
  if (!cardinality_reachable(node, p)) return std::nan("");
  return VertexEnumerator(cuts, node, p, max_systems).run();
}

bool lp_reference_check(std::span<const Cut> cuts, const NodeLP& node, std::size_t p,
                        const LpResult& result) {
  if (result.status != NodeLpStatus::kOptimal) return false;
  const std::size_t n = node.lower.size();
  if (result.x.size() != n) return false;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (result.x[i] < node.lower[i] - tol::kFeasibility ||
        result.x[i] > node.upper[i] + tol::kFeasibility) {
      return false;
    }
    sum += result.x[i];
  }
  if (std::abs(sum - static_cast<double>(p)) > 1e-9 * std::max(1.0, static_cast<double>(p))) {
    return false;
  }
  double envelope = kInf;
  for (std::size_t k = 0; k < node.cut_pool_version; ++k) {
    const double h = cuts[k].evaluate(result.x);
    if (result.theta > h + tol::kFeasibility * (1.0 + std::abs(h))) return false;
    envelope = std::min(envelope, h);
  }
  if (result.theta < envelope - tol::kFeasibility * (1.0 + std::abs(envelope))) return false;

  if (n <= 12 && node.cut_pool_version <= 12) {
    double reference;
    try {
      reference = enumerate_node_lp(cuts, node, p);
    } catch (const GuardError&) {
      return true;
    }
    if (std::isnan(reference)) return false;
    return std::abs(reference - result.theta) <= 1e-6 * (1.0 + std::abs(reference));
  }
  return true;
}

}  // namespace pdsp
