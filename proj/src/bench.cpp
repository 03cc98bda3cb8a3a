#include "pdsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "pdsp/baselines.hpp"
#include "pdsp/deadline.hpp"
#include "pdsp/errors.hpp"

namespace pdsp {

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kSingle: return "single";
    case SolveMode::kMulti: return "multi";
    case SolveMode::kF3: return "f3";
    case SolveMode::kBrute: return "brute";
  }
  return "?";
}

SolveMode parse_mode(const std::string& text) {
  if (text == "single") return SolveMode::kSingle;
  if (text == "multi") return SolveMode::kMulti;
  if (text == "f3") return SolveMode::kF3;
  if (text == "brute") return SolveMode::kBrute;
  throw ArgumentError("unknown mode '" + text + "' (expected single, multi, f3 or brute)");
}

SolveReport solve_with(const Instance& inst, SolveMode mode, const SolveParams& params) {
  switch (mode) {
    case SolveMode::kSingle: return solve_single_tree(inst, params);
    case SolveMode::kMulti: return solve_multi_tree(inst, params);
    case SolveMode::kF3: {
      MilpParams mp;
      mp.time_limit_s = params.time_limit_s;
      mp.gap_abs = params.gap_abs;
      mp.gap_rel = params.gap_rel;
      mp.start = f3_point(inst, initial_solution(inst));
      SolveReport rep = solve_milp(build_f3(inst), mp);
      if (rep.incumbent) {
        // Recompute the value from the selection rather than the w variables.
        rep.incumbent = BinarySolution::from_bits(inst, rep.incumbent->bits());
      }
      return rep;
    }
    case SolveMode::kBrute: {
      Deadline clock;
      SolveReport rep;
      BinarySolution best = brute_force(inst);
      rep.status = SolveStatus::kOptimal;
      rep.lower_bound = rep.upper_bound = best.value();
      rep.incumbent = std::move(best);
      rep.wall_time_ms = clock.elapsed_ms();
      return rep;
    }
  }
  throw ArgumentError("unknown mode");
}

double gap_percent(double lb, double ub) {
  if (!std::isfinite(ub) || !std::isfinite(lb)) return std::numeric_limits<double>::infinity();
  return std::max(0.0, 100.0 * (ub - lb) / std::max(lb, 1e-9));
}

std::vector<BenchRow> run_bench(const Suite& suite, const std::filesystem::path& dir,
                                const BenchConfig& config) {
  struct Job {
    std::size_t entry;
    SolveMode mode;
    double limit;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < suite.entries.size(); ++e) {
    for (SolveMode mode : config.modes) {
      for (double limit : config.time_limits_s) jobs.push_back({e, mode, limit});
    }
  }
  std::vector<BenchRow> rows(jobs.size());
  std::mutex report_mutex;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= jobs.size()) return;
      const Job& job = jobs[idx];
      const SuiteEntry& entry = suite.entries[job.entry];
      BenchRow row;
      row.instance = entry.name;
      row.n = entry.spec.n;
      row.p = entry.spec.resolve_p();
      row.s = entry.spec.s;
      row.mode = to_string(job.mode);
      row.time_limit_s = job.limit;
      try {
        const Instance inst = load_entry(entry, dir);
        row.n = inst.n();
        row.p = inst.p();
        SolveParams params;
        params.time_limit_s = job.limit;
        const SolveReport rep = solve_with(inst, job.mode, params);
        row.status = to_string(rep.status);
        row.cuts = rep.cuts_added;
        row.nodes = rep.nodes_explored;
        row.time_ms = rep.wall_time_ms;
        row.lb = rep.lower_bound;
        row.ub = rep.upper_bound;
        row.gap_percent = rep.status == SolveStatus::kOptimal ? 0.0 : gap_percent(row.lb, row.ub);
      } catch (const std::exception& e) {
        row.status = "Error";
        row.error = e.what();
      }
      std::lock_guard lock(report_mutex);
      rows[idx] = row;
      if (config.on_row) config.on_row(rows[idx]);
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, jobs.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return rows;
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows, GroupBy by) {
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::string, double>;
  std::map<Key, std::vector<const BenchRow*>> groups;
  for (const BenchRow& r : rows) {
    if (r.status == "Error") continue;
    const Key key = by == GroupBy::kSize ? Key{r.n, 0, 0, r.mode, r.time_limit_s}
                                         : Key{r.n, r.p, r.s, r.mode, r.time_limit_s};
    groups[key].push_back(&r);
  }
  std::vector<BenchAggregate> out;
  for (const auto& [key, members] : groups) {
    BenchAggregate a;
    std::tie(a.n, a.p, a.s, a.mode, a.time_limit_s) = key;
    a.count = members.size();
    a.min_cuts = members.front()->cuts;
    a.max_cuts = members.front()->cuts;
    a.min_time_ms = members.front()->time_ms;
    a.max_time_ms = members.front()->time_ms;
    double gap = 0.0;
    double cuts = 0.0;
    double time = 0.0;
    for (const BenchRow* r : members) {
      a.optimal += r->status == "Optimal";
      gap += r->gap_percent;
      cuts += static_cast<double>(r->cuts);
      time += r->time_ms;
      a.min_cuts = std::min(a.min_cuts, r->cuts);
      a.max_cuts = std::max(a.max_cuts, r->cuts);
      a.min_time_ms = std::min(a.min_time_ms, r->time_ms);
      a.max_time_ms = std::max(a.max_time_ms, r->time_ms);
    }
    const double count = static_cast<double>(a.count);
    a.avg_gap_percent = gap / count;
    a.avg_cuts = cuts / count;
    a.avg_time_ms = time / count;
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_num(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError("bad number in CSV: '" + text + "'", 0);
  return v;
}

std::size_t parse_count(const std::string& text) {
  std::size_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError("bad count in CSV: '" + text + "'", 0);
  return v;
}

constexpr const char* kRowHeader =
    "instance,n,p,s,mode,time_limit_s,status,cuts,nodes,time_ms,lb,ub,gap_percent,error";

}  // namespace

void write_rows_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << kRowHeader << '\n';
  for (const BenchRow& r : rows) {
    out << quoted(r.instance) << ',' << r.n << ',' << r.p << ',' << r.s << ',' << r.mode << ','
        << num(r.time_limit_s) << ',' << r.status << ',' << r.cuts << ',' << r.nodes << ','
        << num(r.time_ms) << ',' << num(r.lb) << ',' << num(r.ub) << ',' << num(r.gap_percent)
        << ',' << quoted(r.error) << '\n';
  }
}

std::vector<BenchRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRowHeader) {
    throw ParseError("not a bench row CSV (header mismatch)", 1);
  }
  std::vector<BenchRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 14) throw ParseError("expected 14 fields", number);
    BenchRow r;
    r.instance = f[0];
    r.n = parse_count(f[1]);
    r.p = parse_count(f[2]);
    r.s = parse_count(f[3]);
    r.mode = f[4];
    r.time_limit_s = parse_num(f[5]);
    r.status = f[6];
    r.cuts = parse_count(f[7]);
    r.nodes = parse_count(f[8]);
    r.time_ms = parse_num(f[9]);
    r.lb = parse_num(f[10]);
    r.ub = parse_num(f[11]);
    r.gap_percent = parse_num(f[12]);
    r.error = f[13];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_aggregate_csv(const std::vector<BenchAggregate>& aggs, GroupBy by, std::ostream& out) {
  out << (by == GroupBy::kSize ? "n" : "n,p,s")
      << ",mode,time_limit_s,count,optimal,avg_gap_percent,min_cuts,max_cuts,avg_cuts,"
         "min_time_ms,max_time_ms,avg_time_ms\n";
  for (const BenchAggregate& a : aggs) {
    out << a.n;
    if (by == GroupBy::kCell) out << ',' << a.p << ',' << a.s;
    out << ',' << a.mode << ',' << num(a.time_limit_s) << ',' << a.count << ',' << a.optimal
        << ',' << num(a.avg_gap_percent) << ',' << a.min_cuts << ',' << a.max_cuts << ','
        << num(a.avg_cuts) << ',' << num(a.min_time_ms) << ',' << num(a.max_time_ms) << ','
        << num(a.avg_time_ms) << '\n';
  }
}

}  // namespace pdsp
