#ifndef PDSP_INSTANCE_HPP
#define PDSP_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pdsp {

inline constexpr std::size_t kMaxLocations = 4096;

using Bits = std::vector<std::uint8_t>;

/// Dense square matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return data_; }
  double max_abs() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// n points of a common dimension, stored point-major.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> coords);
  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const noexcept { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Problem data for one p-dispersion-sum instance. Immutable once built.
///
/// The constructor only checks shapes; use `make_instance` for a checked,
/// symmetrized instance and `validate` to list what is wrong with raw data.
class Instance {
 public:
  Instance(std::string name, DenseMatrix q, std::size_t p, double r = 1.0,
           std::optional<PointSet> points = std::nullopt);

  std::size_t n() const noexcept { return q_.size(); }
  std::size_t p() const noexcept { return p_; }
  double r() const noexcept { return r_; }
  const DenseMatrix& q() const noexcept { return q_; }
  const std::optional<PointSet>& points() const noexcept { return points_; }
  const std::string& name() const noexcept { return name_; }

  Instance with_p(std::size_t p) const;
  Instance with_name(std::string name) const;

 private:
  std::string name_;
  DenseMatrix q_;
  std::size_t p_;
  double r_;
  std::optional<PointSet> points_;
};

enum class ViolationKind {
  kSymmetry,
  kDiagonal,
  kNegativeEntry,
  kNonFinite,
  kPointDistance,
  kCardinalityOutOfRange,
  kExponentOutOfRange,
  kTooLarge,
};

struct Violation {
  ViolationKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string message;
};

const char* to_string(ViolationKind kind);

std::vector<Violation> validate(const Instance& inst);

/// Symmetrizes asymmetry up to 1e-9 by averaging, then validates.
/// Throws ArgumentError naming every violation.
Instance make_instance(std::string name, DenseMatrix q, std::size_t p, double r = 1.0,
                       std::optional<PointSet> points = std::nullopt);

/// Throws ArgumentError if `validate` reports anything.
void require_valid(const Instance& inst);

/// (1/2)<Qx,x>.
double objective(const Instance& inst, std::span<const std::uint8_t> x);
double objective(const Instance& inst, std::span<const double> x);

/// A point of K together with its objective value.
class BinarySolution {
 public:
  static BinarySolution from_bits(const Instance& inst, Bits bits);
  static BinarySolution from_indices(const Instance& inst, std::vector<std::size_t> indices);
  /// No cardinality check; used for generic MILP incumbents.
  static BinarySolution unchecked(Bits bits, double value);

  const Bits& bits() const noexcept { return bits_; }
  const std::vector<std::size_t>& selected() const noexcept { return selected_; }
  double value() const noexcept { return value_; }
  std::size_t size() const noexcept { return bits_.size(); }

  friend bool operator==(const BinarySolution& a, const BinarySolution& b) {
    return a.bits_ == b.bits_;
  }

 private:
  BinarySolution(Bits bits, double value);
  Bits bits_;
  std::vector<std::size_t> selected_;
  double value_ = 0.0;
};

std::size_t popcount(std::span<const std::uint8_t> bits);
std::vector<std::size_t> selected_indices(std::span<const std::uint8_t> bits);

enum class SolveStatus { kOptimal, kTimeLimit, kInfeasible };

const char* to_string(SolveStatus status);

/// One candidate event of the cutting-plane loop.
/// Entry 0 is the starting point x^0 and carries theta = NaN.
struct CutLogEntry {
  std::size_t k = 0;
  double f = 0.0;
  double theta = 0.0;
  double lb = 0.0;
  std::vector<std::size_t> source;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kTimeLimit;
  std::optional<BinarySolution> incumbent;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::size_t cuts_added = 0;
  std::size_t nodes_explored = 0;
  std::size_t lp_solves = 0;
  std::size_t outer_iterations = 0;
  double wall_time_ms = 0.0;
  bool zero_gradient_stop = false;
  std::vector<CutLogEntry> cut_log;
};

}  // namespace pdsp

#endif  // PDSP_INSTANCE_HPP
