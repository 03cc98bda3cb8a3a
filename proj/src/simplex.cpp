#include "pdsp/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "pdsp/errors.hpp"

namespace pdsp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
    case LpStatus::kIterationLimit: return "IterationLimit";
    case LpStatus::kTimeLimit: return "TimeLimit";
  }
  return "Unknown";
}

DenseSimplex::DenseSimplex(std::size_t num_cols, SimplexOptions options)
    : num_cols_(num_cols),
      options_(options),
      objective_(num_cols, 0.0),
      lower_(num_cols, 0.0),
      upper_(num_cols, kInf),
      value_(num_cols, 0.0),
      status_of_(num_cols, VarStatus::kAtLower) {}

void DenseSimplex::set_objective(std::span<const double> c) {
  if (c.size() != num_cols_) throw ArgumentError("objective length mismatch");
  objective_.assign(c.begin(), c.end());
}

void DenseSimplex::set_col_bounds(std::size_t j, double lower, double upper) {
  if (j >= num_cols_) throw ArgumentError("column index out of range");
  if (lower > upper) throw ArgumentError("column lower bound exceeds upper bound");
  lower_[j] = lower;
  upper_[j] = upper;
  if (status_of_[j] != VarStatus::kBasic) {
    ensure_valid_status(j);
    place_nonbasic(j);
  }
}

std::size_t DenseSimplex::add_row(std::span<const double> coefs, RowSense sense, double rhs) {
  if (coefs.size() != num_cols_) throw ArgumentError("row length mismatch");
  const std::size_t m = rows_.size();
  rows_.emplace_back(coefs.begin(), coefs.end());
  rhs_.push_back(rhs);

  double lo = 0.0;
  double hi = 0.0;
  switch (sense) {
    case RowSense::kLessEqual: hi = kInf; break;
    case RowSense::kGreaterEqual: lo = -kInf; break;
    case RowSense::kEqual: break;
  }
  double activity = 0.0;
  for (std::size_t j = 0; j < num_cols_; ++j) activity += coefs[j] * value_[j];
  lower_.push_back(lo);
  upper_.push_back(hi);
  value_.push_back(rhs - activity);
  status_of_.push_back(VarStatus::kBasic);
  head_.push_back(num_cols_ + m);

  if (factor_valid_) {
    // [B 0; a_B 1]^-1 = [B^-1 0; -a_B B^-1 1]
    const std::size_t m1 = m + 1;
    std::vector<double> next(m1 * m1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      std::copy_n(binv_.begin() + static_cast<std::ptrdiff_t>(i * m), m,
                  next.begin() + static_cast<std::ptrdiff_t>(i * m1));
    }
    std::vector<double> a_basic(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      if (head_[k] < num_cols_) a_basic[k] = coefs[head_[k]];
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (a_basic[k] == 0.0) continue;
      const double* src = binv_.data() + k * m;
      double* dst = next.data() + m * m1;
      for (std::size_t i = 0; i < m; ++i) dst[i] -= a_basic[k] * src[i];
    }
    next[m * m1 + m] = 1.0;
    binv_ = std::move(next);
  }
  return m;
}

double DenseSimplex::coef(std::size_t row, std::size_t col) const {
  if (col < num_cols_) return rows_[row][col];
  return col - num_cols_ == row ? 1.0 : 0.0;
}

void DenseSimplex::column(std::size_t col, std::vector<double>& out) const {
  const std::size_t m = rows_.size();
  out.assign(m, 0.0);
  if (col < num_cols_) {
    for (std::size_t i = 0; i < m; ++i) out[i] = rows_[i][col];
  } else {
    out[col - num_cols_] = 1.0;
  }
}

void DenseSimplex::ensure_valid_status(std::size_t col) {
  VarStatus& st = status_of_[col];
  const bool has_lo = std::isfinite(lower_[col]);
  const bool has_hi = std::isfinite(upper_[col]);
  switch (st) {
    case VarStatus::kBasic: return;
    case VarStatus::kAtLower:
      if (!has_lo) st = has_hi ? VarStatus::kAtUpper : VarStatus::kFreeZero;
      return;
    case VarStatus::kAtUpper:
      if (!has_hi) st = has_lo ? VarStatus::kAtLower : VarStatus::kFreeZero;
      return;
    case VarStatus::kFreeZero:
      if (has_lo) st = VarStatus::kAtLower;
      else if (has_hi) st = VarStatus::kAtUpper;
      return;
  }
}

void DenseSimplex::place_nonbasic(std::size_t col) {
  switch (status_of_[col]) {
    case VarStatus::kAtLower: value_[col] = lower_[col]; break;
    case VarStatus::kAtUpper: value_[col] = upper_[col]; break;
    case VarStatus::kFreeZero: value_[col] = 0.0; break;
    case VarStatus::kBasic: break;
  }
}

Basis DenseSimplex::basis() const {
  Basis b;
  b.structural.assign(status_of_.begin(), status_of_.begin() + static_cast<std::ptrdiff_t>(num_cols_));
  b.slack.assign(status_of_.begin() + static_cast<std::ptrdiff_t>(num_cols_), status_of_.end());
  return b;
}

void DenseSimplex::reset_basis() {
  const std::size_t m = rows_.size();
  for (std::size_t j = 0; j < num_cols_; ++j) {
    status_of_[j] = VarStatus::kAtLower;
    ensure_valid_status(j);
    place_nonbasic(j);
  }
  head_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    status_of_[num_cols_ + i] = VarStatus::kBasic;
    head_[i] = num_cols_ + i;
  }
  factor_valid_ = false;
}

void DenseSimplex::set_basis(const Basis& basis) {
  const std::size_t m = rows_.size();
  if (basis.structural.size() != num_cols_ || basis.slack.size() > m) {
    reset_basis();
    return;
  }
  std::size_t basic = 0;
  for (VarStatus s : basis.structural) basic += s == VarStatus::kBasic;
  for (VarStatus s : basis.slack) basic += s == VarStatus::kBasic;
  basic += m - basis.slack.size();
  if (basic != m) {
    reset_basis();
    return;
  }
  head_.clear();
  for (std::size_t col = 0; col < total_cols(); ++col) {
    VarStatus s = VarStatus::kBasic;
    if (col < num_cols_) s = basis.structural[col];
    else if (col - num_cols_ < basis.slack.size()) s = basis.slack[col - num_cols_];
    status_of_[col] = s;
    if (s == VarStatus::kBasic) {
      head_.push_back(col);
    } else {
      ensure_valid_status(col);
      place_nonbasic(col);
    }
  }
  factor_valid_ = false;
}

void DenseSimplex::refactor() {
  const std::size_t m = rows_.size();
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<double> mat(m * m, 0.0);
    std::vector<double> inv(m * m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t col = head_[k];
      for (std::size_t i = 0; i < m; ++i) mat[i * m + k] = coef(i, col);
      inv[k * m + k] = 1.0;
    }
    std::vector<std::size_t> pivot_row(m, m);
    std::vector<bool> used(m, false);
    std::vector<std::size_t> bad;
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t r = m;
      double best = 1e-11;
      for (std::size_t i = 0; i < m; ++i) {
        if (!used[i] && std::abs(mat[i * m + k]) > best) {
          best = std::abs(mat[i * m + k]);
          r = i;
        }
      }
      if (r == m) {
        bad.push_back(k);
        continue;
      }
      used[r] = true;
      pivot_row[k] = r;
      const double scale = 1.0 / mat[r * m + k];
      for (std::size_t c = 0; c < m; ++c) {
        mat[r * m + c] *= scale;
        inv[r * m + c] *= scale;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (i == r) continue;
        const double f = mat[i * m + k];
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < m; ++c) {
          mat[i * m + c] -= f * mat[r * m + c];
          inv[i * m + c] -= f * inv[r * m + c];
        }
      }
    }
    if (bad.empty()) {
      binv_.assign(m * m, 0.0);
      for (std::size_t k = 0; k < m; ++k) {
        std::copy_n(inv.begin() + static_cast<std::ptrdiff_t>(pivot_row[k] * m), m,
                    binv_.begin() + static_cast<std::ptrdiff_t>(k * m));
      }
      factor_valid_ = true;
      pivots_since_refactor_ = 0;
      return;
    }
    // Singular basis: swap dependent columns for slacks of uncovered rows.
    std::size_t next_free = 0;
    for (std::size_t k : bad) {
      while (used[next_free]) ++next_free;
      used[next_free] = true;
      const std::size_t old = head_[k];
      status_of_[old] = VarStatus::kAtLower;
      ensure_valid_status(old);
      place_nonbasic(old);
      head_[k] = num_cols_ + next_free;
      status_of_[head_[k]] = VarStatus::kBasic;
    }
  }
  throw EngineFault("simplex basis repair failed");
}

void DenseSimplex::compute_basic_values() {
  const std::size_t m = rows_.size();
  std::vector<double> r(rhs_);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows_[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < num_cols_; ++j) {
      if (status_of_[j] != VarStatus::kBasic && value_[j] != 0.0) acc += row[j] * value_[j];
    }
    const std::size_t slack = num_cols_ + i;
    if (status_of_[slack] != VarStatus::kBasic) acc += value_[slack];
    r[i] -= acc;
  }
  for (std::size_t k = 0; k < m; ++k) {
    const double* b = binv_.data() + k * m;
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i) v += b[i] * r[i];
    value_[head_[k]] = v;
  }
}

void DenseSimplex::compute_duals(const std::vector<double>& cost_basic,
                                 std::vector<double>& y) const {
  const std::size_t m = rows_.size();
  y.assign(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double c = cost_basic[k];
    if (c == 0.0) continue;
    const double* b = binv_.data() + k * m;
    for (std::size_t i = 0; i < m; ++i) y[i] += c * b[i];
  }
}

double DenseSimplex::dot_column(const std::vector<double>& y, std::size_t col) const {
  if (col >= num_cols_) return y[col - num_cols_];
  double acc = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) acc += y[i] * rows_[i][col];
  return acc;
}

LpStatus DenseSimplex::solve(const Deadline* deadline) {
  const std::size_t m = rows_.size();
  const std::size_t total = total_cols();
  last_iterations_ = 0;
  if (!factor_valid_) refactor();
  compute_basic_values();

  const double ptol = options_.primal_tol;
  const double dtol = options_.dual_tol;
  auto below = [&](double v, double lo) { return v < lo - ptol * (1.0 + std::abs(lo)); };
  auto above = [&](double v, double hi) { return v > hi + ptol * (1.0 + std::abs(hi)); };

  std::vector<double> cost_basic(m);
  std::vector<double> y;
  std::vector<double> reduced(total, 0.0);
  std::vector<double> alpha(m);
  std::vector<double> acol;
  std::size_t degenerate_run = 0;
  bool bland = false;

  for (;;) {
    if (last_iterations_ >= options_.max_iterations) {
      status_ = LpStatus::kIterationLimit;
      break;
    }
    if (deadline != nullptr && deadline->expired()) {
      status_ = LpStatus::kTimeLimit;
      break;
    }
    if (pivots_since_refactor_ >= options_.refactor_interval) {
      refactor();
      compute_basic_values();
    }

    bool phase1 = false;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t col = head_[k];
      const double v = value_[col];
      if (below(v, lower_[col])) {
        cost_basic[k] = 1.0;
        phase1 = true;
      } else if (above(v, upper_[col])) {
        cost_basic[k] = -1.0;
        phase1 = true;
      } else {
        cost_basic[k] = 0.0;
      }
    }
    if (!phase1) {
      for (std::size_t k = 0; k < m; ++k) {
        cost_basic[k] = head_[k] < num_cols_ ? objective_[head_[k]] : 0.0;
      }
    }
    compute_duals(cost_basic, y);

    // Reduced costs of structural columns via one pass over the rows.
    std::fill(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(num_cols_), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double yi = y[i];
      if (yi == 0.0) continue;
      const auto& row = rows_[i];
      for (std::size_t j = 0; j < num_cols_; ++j) reduced[j] -= yi * row[j];
    }
    if (!phase1) {
      for (std::size_t j = 0; j < num_cols_; ++j) reduced[j] += objective_[j];
    }
    for (std::size_t i = 0; i < m; ++i) reduced[num_cols_ + i] = -y[i];

    std::size_t entering = total;
    double best_score = 0.0;
    int direction = 0;
    for (std::size_t j = 0; j < total; ++j) {
      const VarStatus st = status_of_[j];
      if (st == VarStatus::kBasic || lower_[j] == upper_[j]) continue;
      const double d = reduced[j];
      int dir = 0;
      if (d > dtol && (st == VarStatus::kAtLower || st == VarStatus::kFreeZero)) dir = 1;
      else if (d < -dtol && (st == VarStatus::kAtUpper || st == VarStatus::kFreeZero)) dir = -1;
      if (dir == 0) continue;
      if (bland) {
        entering = j;
        direction = dir;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        entering = j;
        direction = dir;
      }
    }
    if (entering == total) {
      status_ = phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
      break;
    }

    column(entering, acol);
    double alpha_max = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double* b = binv_.data() + k * m;
      double a = 0.0;
      if (entering >= num_cols_) {
        a = b[entering - num_cols_];
      } else {
        for (std::size_t i = 0; i < m; ++i) a += b[i] * acol[i];
      }
      alpha[k] = a;
      alpha_max = std::max(alpha_max, std::abs(a));
    }
    const double piv_tol = options_.pivot_tol * std::max(1.0, alpha_max);

    double step = kInf;
    std::size_t leave = m;
    double leave_target = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double a = alpha[k];
      if (std::abs(a) <= piv_tol) continue;
      const double rate = -direction * a;
      const std::size_t col = head_[k];
      const double v = value_[col];
      const double lo = lower_[col];
      const double hi = upper_[col];
      double target;
      if (rate < 0.0) {
        if (above(v, hi)) target = hi;
        else if (!below(v, lo) && std::isfinite(lo)) target = lo;
        else continue;
      } else {
        if (below(v, lo)) target = lo;
        else if (!above(v, hi) && std::isfinite(hi)) target = hi;
        else continue;
      }
      const double t = std::max(0.0, (target - v) / rate);
      bool take = false;
      if (leave == m || t < step - 1e-12 * std::max(1.0, step)) {
        take = true;
      } else if (t <= step + 1e-12 * std::max(1.0, step)) {
        // Tie: Bland takes the lowest column index, otherwise the larger pivot.
        if (bland) {
          take = col < head_[leave];
        } else {
          const double cur = std::abs(alpha[leave]);
          take = std::abs(a) > cur * (1.0 + 1e-9) ||
                 (std::abs(a) >= cur * (1.0 - 1e-9) && col < head_[leave]);
        }
      }
      if (take) {
        step = t;
        leave = k;
        leave_target = target;
      }
    }

    const double span = upper_[entering] - lower_[entering];
    const bool flip = std::isfinite(span) && span <= step;
    if (flip) step = span;
    if (!std::isfinite(step)) {
      if (phase1) {
        // Cannot happen in exact arithmetic; rebuild and retry once per occurrence.
        refactor();
        compute_basic_values();
        ++last_iterations_;
        continue;
      }
      status_ = LpStatus::kUnbounded;
      break;
    }

    for (std::size_t k = 0; k < m; ++k) {
      if (alpha[k] != 0.0) value_[head_[k]] -= direction * alpha[k] * step;
    }
    if (flip) {
      status_of_[entering] =
          direction > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      place_nonbasic(entering);
    } else {
      value_[entering] += direction * step;
      const std::size_t out = head_[leave];
      value_[out] = leave_target;
      status_of_[out] = leave_target == lower_[out] ? VarStatus::kAtLower : VarStatus::kAtUpper;
      status_of_[entering] = VarStatus::kBasic;
      head_[leave] = entering;

      const double piv = alpha[leave];
      double* prow = binv_.data() + leave * m;
      for (std::size_t i = 0; i < m; ++i) prow[i] /= piv;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == leave || alpha[k] == 0.0) continue;
        const double f = alpha[k];
        double* row = binv_.data() + k * m;
        for (std::size_t i = 0; i < m; ++i) row[i] -= f * prow[i];
      }
      ++pivots_since_refactor_;
    }

    if (step <= 1e-12) {
      if (++degenerate_run >= options_.bland_after) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    ++last_iterations_;
  }

  total_iterations_ += last_iterations_;
  objective_value_ = 0.0;
  for (std::size_t j = 0; j < num_cols_; ++j) objective_value_ += objective_[j] * value_[j];
  return status_;
}

std::vector<double> DenseSimplex::row_duals() const {
  const std::size_t m = rows_.size();
  std::vector<double> cost_basic(m);
  for (std::size_t k = 0; k < m; ++k) {
    cost_basic[k] = head_[k] < num_cols_ ? objective_[head_[k]] : 0.0;
  }
  std::vector<double> y;
  if (factor_valid_) compute_duals(cost_basic, y);
  else y.assign(m, 0.0);
  return y;
}

std::vector<double> DenseSimplex::reduced_costs() const {
  const auto y = row_duals();
  std::vector<double> d(num_cols_);
  for (std::size_t j = 0; j < num_cols_; ++j) d[j] = objective_[j] - dot_column(y, j);
  return d;
}

double DenseSimplex::row_activity(std::size_t i) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < num_cols_; ++j) acc += rows_[i][j] * value_[j];
  return acc;
}

}  // namespace pdsp
