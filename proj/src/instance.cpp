#include "pdsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pdsp/errors.hpp"
#include "pdsp/tolerances.hpp"

namespace pdsp {

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ArgumentError("matrix row " + std::to_string(i) + " has " +
                          std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(rows.size()));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

double DenseMatrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw ArgumentError("point dimension must be at least 1");
  if (coords_.size() % dim_ != 0) {
    throw ArgumentError("coordinate count is not a multiple of the dimension");
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ArgumentError("empty point set");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw ArgumentError("point " + std::to_string(i) + " has dimension " +
                          std::to_string(rows[i].size()) + ", expected " +
                          std::to_string(dim));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return PointSet(dim, std::move(coords));
}

Instance::Instance(std::string name, DenseMatrix q, std::size_t p, double r,
                   std::optional<PointSet> points)
    : name_(std::move(name)), q_(std::move(q)), p_(p), r_(r), points_(std::move(points)) {
  if (points_ && points_->size() != q_.size()) {
    throw ArgumentError("point count " + std::to_string(points_->size()) +
                        " does not match matrix order " + std::to_string(q_.size()));
  }
}

Instance Instance::with_p(std::size_t p) const {
  Instance copy = *this;
  copy.p_ = p;
  return copy;
}

Instance Instance::with_name(std::string name) const {
  Instance copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSymmetry: return "SymmetryViolation";
    case ViolationKind::kDiagonal: return "NonzeroDiagonal";
    case ViolationKind::kNegativeEntry: return "NegativeEntry";
    case ViolationKind::kNonFinite: return "NonFiniteEntry";
    case ViolationKind::kPointDistance: return "PointDistanceMismatch";
    case ViolationKind::kCardinalityOutOfRange: return "CardinalityOutOfRange";
    case ViolationKind::kExponentOutOfRange: return "ExponentOutOfRange";
    case ViolationKind::kTooLarge: return "TooManyLocations";
  }
  return "Unknown";
}

namespace {

double point_distance(const PointSet& pts, std::size_t i, std::size_t j, double r) {
  const auto a = pts.point(i);
  const auto b = pts.point(j);
  double sq = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) sq += (a[d] - b[d]) * (a[d] - b[d]);
  return std::pow(std::sqrt(sq), r);
}

Violation make_violation(ViolationKind kind, std::size_t i, std::size_t j,
                         const std::string& detail) {
  std::ostringstream os;
  os << to_string(kind) << '(' << i << ',' << j << "): " << detail;
  return {kind, i, j, os.str()};
}

}  // namespace

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const std::size_t n = inst.n();
  const DenseMatrix& q = inst.q();

  if (n > kMaxLocations) {
    out.push_back(make_violation(ViolationKind::kTooLarge, n, kMaxLocations,
                                 "n exceeds the supported maximum"));
  }
  if (inst.p() < 1 || inst.p() > n) {
    out.push_back(make_violation(ViolationKind::kCardinalityOutOfRange, inst.p(), n,
                                 "p must satisfy 1 <= p <= n"));
  }
  if (!(inst.r() > 0.0 && inst.r() <= 2.0)) {
    out.push_back(make_violation(ViolationKind::kExponentOutOfRange, 0, 0,
                                 "r must lie in (0, 2]"));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = q(i, j);
      if (!std::isfinite(v)) {
        out.push_back(make_violation(ViolationKind::kNonFinite, i, j, "entry is not finite"));
        continue;
      }
      if (i == j) {
        if (v != 0.0) out.push_back(make_violation(ViolationKind::kDiagonal, i, i, "q_ii != 0"));
        continue;
      }
      if (v < 0.0) out.push_back(make_violation(ViolationKind::kNegativeEntry, i, j, "q_ij < 0"));
      if (i < j && q(i, j) != q(j, i)) {
        out.push_back(make_violation(ViolationKind::kSymmetry, i, j, "q_ij != q_ji"));
      }
    }
  }
  if (inst.points()) {
    const PointSet& pts = *inst.points();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = point_distance(pts, i, j, inst.r());
        if (std::abs(q(i, j) - d) > tol::kPointDistance * (1.0 + std::abs(q(i, j)))) {
          out.push_back(make_violation(ViolationKind::kPointDistance, i, j,
                                       "q_ij differs from ||v_i - v_j||^r"));
        }
      }
    }
  }
  return out;
}

Instance make_instance(std::string name, DenseMatrix q, std::size_t p, double r,
                       std::optional<PointSet> points) {
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = q(i, j);
      const double b = q(j, i);
      if (a != b && std::abs(a - b) <= tol::kSymmetrize) {
        q(i, j) = q(j, i) = 0.5 * (a + b);
      }
    }
  }
  Instance inst(std::move(name), std::move(q), p, r, std::move(points));
  require_valid(inst);
  return inst;
}

void require_valid(const Instance& inst) {
  const auto violations = validate(inst);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid instance '" << inst.name() << "':";
  const std::size_t shown = std::min<std::size_t>(violations.size(), 8);
  for (std::size_t k = 0; k < shown; ++k) os << ' ' << violations[k].message << ';';
  if (violations.size() > shown) os << " (" << violations.size() - shown << " more)";
  throw ArgumentError(os.str());
}

double objective(const Instance& inst, std::span<const std::uint8_t> x) {
  if (x.size() != inst.n()) {
    throw ArgumentError("objective: vector length " + std::to_string(x.size()) +
                        " != n = " + std::to_string(inst.n()));
  }
  const DenseMatrix& q = inst.q();
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    const auto row = q.row(i);
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[j]) total += row[j];
    }
  }
  return total;
}

double objective(const Instance& inst, std::span<const double> x) {
  if (x.size() != inst.n()) {
    throw ArgumentError("objective: vector length " + std::to_string(x.size()) +
                        " != n = " + std::to_string(inst.n()));
  }
  const DenseMatrix& q = inst.q();
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto row = q.row(i);
    double dot = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) dot += row[j] * x[j];
    total += x[i] * dot;
  }
  return 0.5 * total;
}

std::size_t popcount(std::span<const std::uint8_t> bits) {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

std::vector<std::size_t> selected_indices(std::span<const std::uint8_t> bits) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.push_back(i);
  }
  return out;
}

BinarySolution::BinarySolution(Bits bits, double value)
    : bits_(std::move(bits)), selected_(selected_indices(bits_)), value_(value) {}

BinarySolution BinarySolution::from_bits(const Instance& inst, Bits bits) {
  if (bits.size() != inst.n()) {
    throw ArgumentError("solution length " + std::to_string(bits.size()) +
                        " != n = " + std::to_string(inst.n()));
  }
  for (auto& b : bits) b = b ? 1 : 0;
  if (popcount(bits) != inst.p()) {
    throw ArgumentError("solution selects " + std::to_string(popcount(bits)) +
                        " locations, expected p = " + std::to_string(inst.p()));
  }
  const double value = objective(inst, bits);
  return BinarySolution(std::move(bits), value);
}

BinarySolution BinarySolution::from_indices(const Instance& inst,
                                            std::vector<std::size_t> indices) {
  Bits bits(inst.n(), 0);
  for (std::size_t i : indices) {
    if (i >= inst.n()) throw ArgumentError("index " + std::to_string(i) + " out of range");
    if (bits[i]) throw ArgumentError("index " + std::to_string(i) + " repeated");
    bits[i] = 1;
  }
  return from_bits(inst, std::move(bits));
}

BinarySolution BinarySolution::unchecked(Bits bits, double value) {
  return BinarySolution(std::move(bits), value);
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kTimeLimit: return "TimeLimit";
    case SolveStatus::kInfeasible: return "Infeasible";
  }
  return "Unknown";
}

}  // namespace pdsp
