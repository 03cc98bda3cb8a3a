#ifndef PDSP_BENCH_HPP
#define PDSP_BENCH_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdsp/engine.hpp"
#include "pdsp/instance_io.hpp"

namespace pdsp {

enum class SolveMode { kSingle, kMulti, kF3, kBrute };

const char* to_string(SolveMode mode);
/// Accepts "single", "multi", "f3" and "brute".
SolveMode parse_mode(const std::string& text);

/// Solves with the chosen method. The linearized baseline starts from the
/// same greedy point as the cutting-plane engine; brute force ignores the
/// time limit and throws GuardError on large instances.
SolveReport solve_with(const Instance& inst, SolveMode mode, const SolveParams& params = {});

/// 100 * (ub - lb) / max(lb, 1e-9), never negative.
double gap_percent(double lb, double ub);

struct BenchRow {
  std::string instance;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t s = 0;
  std::string mode;
  double time_limit_s = 0.0;
  /// Optimal, TimeLimit, Infeasible or Error.
  std::string status;
  std::size_t cuts = 0;
  std::size_t nodes = 0;
  double time_ms = 0.0;
  double lb = 0.0;
  double ub = 0.0;
  double gap_percent = 0.0;
  std::string error;
};

struct BenchConfig {
  std::vector<SolveMode> modes{SolveMode::kSingle};
  std::vector<double> time_limits_s{10.0};
  /// Independent solves run concurrently; each solve stays single-threaded.
  std::size_t jobs = 1;
  /// Called once per finished row, serialized.
  std::function<void(const BenchRow&)> on_row;
};

/// Every (entry, mode, limit) combination, ordered entry-major. Entries that
/// fail to load or solve produce a row with status "Error".
std::vector<BenchRow> run_bench(const Suite& suite, const std::filesystem::path& dir,
                                const BenchConfig& config);

/// Per-group summary of rows: the optimal count, the average gap and the
/// cut and time ranges.
struct BenchAggregate {
  std::size_t n = 0;
  std::size_t p = 0;  // 0 when grouped by n only
  std::size_t s = 0;  // 0 when grouped by n only
  std::string mode;
  double time_limit_s = 0.0;
  std::size_t count = 0;
  std::size_t optimal = 0;
  double avg_gap_percent = 0.0;
  std::size_t min_cuts = 0;
  std::size_t max_cuts = 0;
  double avg_cuts = 0.0;
  double min_time_ms = 0.0;
  double max_time_ms = 0.0;
  double avg_time_ms = 0.0;
};

enum class GroupBy { kSize, kCell };

/// kSize groups by (n, mode, limit); kCell by (n, p, s, mode, limit).
/// Error rows are left out. Groups come out in ascending key order.
std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows, GroupBy by);

void write_rows_csv(const std::vector<BenchRow>& rows, std::ostream& out);
std::vector<BenchRow> read_rows_csv(std::istream& in);
void write_aggregate_csv(const std::vector<BenchAggregate>& aggs, GroupBy by, std::ostream& out);

}  // namespace pdsp

#endif  // PDSP_BENCH_HPP
