#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "pdsp/bench.hpp"
#include "pdsp/diagnostics.hpp"
#include "pdsp/errors.hpp"
#include "pdsp/geometry.hpp"
#include "pdsp/instance_io.hpp"
#include "pdsp/report.hpp"

namespace pdsp::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct SolveArgs {
  std::string instance;
  std::string format = "auto";
  std::optional<std::size_t> p;
  double r = 1.0;
  std::string mode = "single";
  double time_limit = std::numeric_limits<double>::infinity();
  double gap = tol::kGapRel;
  std::string json_path;
  bool verify_cnd = false;
  bool cut_strength = false;
  bool verbose = false;
};

struct GenArgs {
  std::vector<std::size_t> n;
  std::vector<std::size_t> s{2};
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string out_dir = ".";
  std::string format = "points";
  std::vector<std::string> p_rules{"ceil10"};
  std::size_t p = 0;
  double r = 1.0;
  double low = 0.0;
  double high = 100.0;
  std::string name = "suite";
};

struct BenchArgs {
  std::string suite;
  std::vector<std::string> modes{"single"};
  std::vector<double> limits{10.0};
  std::string csv;
  std::size_t jobs = 1;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  ReadOptions opts;
  opts.format = parse_format(a.format);
  opts.r = a.r;
  opts.p = a.p;
  const Instance inst = read_instance(a.instance, opts);
  const SolveMode mode = parse_mode(a.mode);

  std::optional<CndCertificate> cnd;
  if (a.verify_cnd) {
    cnd = certify_cnd(inst.q());
    out << "cnd        " << (cnd->is_cnd ? "certified" : "NOT certified")
        << " (max projected eigenvalue " << fmt(cnd->max_projected_eigenvalue) << ", tolerance "
        << fmt(cnd->tolerance) << ")\n";
    if (!cnd->is_cnd) {
      err << "warning: the distance matrix is not conditionally negative definite; "
             "tangent cuts may cut off optimal points\n";
    }
  }

  SolveParams params;
  params.time_limit_s = a.time_limit;
  params.gap_rel = a.gap;
  if (a.verbose) {
    params.progress = [&err](const ProgressEvent& e) {
      err << fmt(e.time_ms) << " ms  lb " << fmt(e.lower_bound) << "  ub " << fmt(e.upper_bound)
          << "  nodes " << e.nodes << "  cuts " << e.cuts << '\n';
    };
  }
  const SolveReport rep = solve_with(inst, mode, params);

  out << "instance   " << inst.name() << " (n=" << inst.n() << ", p=" << inst.p() << ")\n";
  out << "mode       " << to_string(mode) << '\n';
  out << "status     " << to_string(rep.status) << '\n';
  if (rep.incumbent) {
    out << "value      " << fmt(rep.incumbent->value()) << '\n';
    out << "selected  ";
    for (std::size_t i : rep.incumbent->selected()) out << ' ' << i;
    out << "  (0-based)\n";
  }
  out << "bounds     lb " << fmt(rep.lower_bound) << "  ub " << fmt(rep.upper_bound) << "  gap "
      << fmt(rep.status == SolveStatus::kOptimal ? 0.0
                                                  : gap_percent(rep.lower_bound, rep.upper_bound))
      << "%\n";
  out << "cuts       " << rep.cuts_added << "\nnodes      " << rep.nodes_explored
      << "\nlp solves  " << rep.lp_solves << "\ntime       " << fmt(rep.wall_time_ms) << " ms\n";

  std::vector<CutStrength> strength;
  if (a.cut_strength) {
    strength = cut_strength_report(inst, rep.cut_log);
    for (const CutStrength& s : strength) {
      out << "cut " << s.k << " at LB_" << s.l << ": ratio " << fmt(s.ratio) << ", N " << s.n_l
          << ", removes >= " << s.eliminated_count.str() << " points\n";
    }
  }
  if (!a.json_path.empty()) {
    const auto doc = report_to_json(inst, to_string(mode), rep,
                                    a.cut_strength ? &strength : nullptr, cnd ? &*cnd : nullptr);
    std::ofstream file(a.json_path);
    if (!file) throw IoError("cannot create " + a.json_path);
    file << doc.dump(2) << '\n';
  }
  switch (rep.status) {
    case SolveStatus::kOptimal: return kExitOptimal;
    case SolveStatus::kTimeLimit: return kExitTimeLimit;
    case SolveStatus::kInfeasible: return kExitError;
  }
  return kExitError;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const FileFormat format = parse_format(a.format);
  if (format == FileFormat::kAuto) throw ArgumentError("--format must be triplet or points");
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  Suite suite;
  suite.name = a.name;
  for (std::size_t n : a.n) {
    for (std::size_t s : a.s) {
      for (const std::string& rule : a.p_rules) {
        for (std::size_t c = 0; c < a.count; ++c) {
          GenSpec spec;
          spec.n = n;
          spec.s = s;
          spec.seed = a.seed + c;
          spec.p_rule = parse_p_rule(rule);
          spec.p = a.p;
          spec.r = a.r;
          spec.low = a.low;
          spec.high = a.high;
          const Instance inst = generate(spec);
          SuiteEntry entry;
          entry.name = spec.default_name();
          entry.spec = spec;
          entry.format = format;
          entry.file = entry.name + ".txt";
          write_instance(inst, dir / entry.file, format);
          suite.entries.push_back(std::move(entry));
        }
      }
    }
  }
  const fs::path manifest = dir / (a.name + ".json");
  write_suite(suite, manifest);
  out << "wrote " << suite.entries.size() << " instances and " << manifest.string() << '\n';
  return kExitOptimal;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const fs::path manifest(a.suite);
  const Suite suite = read_suite(manifest);
  BenchConfig config;
  config.modes.clear();
  for (const auto& m : a.modes) config.modes.push_back(parse_mode(m));
  config.time_limits_s = a.limits;
  config.jobs = a.jobs;
  config.on_row = [&out](const BenchRow& r) {
    out << r.instance << ' ' << r.mode << ' ' << fmt(r.time_limit_s) << "s: " << r.status;
    if (r.status == "Error") {
      out << " (" << r.error << ")\n";
    } else {
      out << ", cuts " << r.cuts << ", nodes " << r.nodes << ", " << fmt(r.time_ms) << " ms, gap "
          << fmt(r.gap_percent) << "%\n";
    }
  };
  const auto rows = run_bench(suite, manifest.parent_path(), config);
  const auto by_size = aggregate(rows, GroupBy::kSize);
  const auto by_cell = aggregate(rows, GroupBy::kCell);

  out << '\n';
  write_aggregate_csv(by_size, GroupBy::kSize, out);
  if (!a.csv.empty()) {
    const fs::path csv(a.csv);
    if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
    auto open = [](const fs::path& path) {
      std::ofstream file(path);
      if (!file) throw IoError("cannot create " + path.string());
      return file;
    };
    {
      auto file = open(csv);
      write_rows_csv(rows, file);
    }
    const fs::path stem = csv.parent_path() / csv.stem();
    {
      auto file = open(stem.string() + "_by_n.csv");
      write_aggregate_csv(by_size, GroupBy::kSize, file);
    }
    {
      auto file = open(stem.string() + "_by_cell.csv");
      write_aggregate_csv(by_cell, GroupBy::kCell, file);
    }
  }
  return kExitOptimal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact p-dispersion-sum solver", "pdsp"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve one instance file");
  solve->add_option("--instance", sa.instance, "Instance file")->required();
  solve->add_option("--format", sa.format, "auto, triplet or points")
      ->check(CLI::IsMember({"auto", "triplet", "points"}));
  solve->add_option("--p", sa.p, "Number of locations to choose (default ceil(n/10))")
      ->check(CLI::PositiveNumber);
  solve->add_option("--r", sa.r, "Distance exponent for points files")->check(CLI::Range(0.0, 2.0));
  solve->add_option("--mode", sa.mode, "single, multi, f3 or brute")
      ->check(CLI::IsMember({"single", "multi", "f3", "brute"}));
  solve->add_option("--time-limit", sa.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("--gap", sa.gap, "Relative optimality gap")->check(CLI::NonNegativeNumber);
  solve->add_option("--json", sa.json_path, "Write a JSON report");
  solve->add_flag("--verify-cnd", sa.verify_cnd, "Certify the matrix before solving");
  solve->add_flag("--cut-strength", sa.cut_strength, "Report how much of K each cut removes");
  solve->add_flag("-v,--verbose", sa.verbose, "Log progress to stderr");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate random instances and a suite manifest");
  gen->add_option("--n", ga.n, "Location counts")->required()->delimiter(',')->check(
      CLI::Range(std::size_t{2}, kMaxLocations));
  gen->add_option("--s", ga.s, "Coordinate dimensions")->delimiter(',')->check(CLI::PositiveNumber);
  gen->add_option("--seed", ga.seed, "First seed; instance c uses seed + c");
  gen->add_option("--count", ga.count, "Instances per (n, s, p rule)")->check(CLI::PositiveNumber);
  gen->add_option("--out-dir", ga.out_dir, "Output directory");
  gen->add_option("--format", ga.format, "triplet or points")
      ->check(CLI::IsMember({"triplet", "points"}));
  gen->add_option("--p-rule", ga.p_rules, "ceil10, 2ceil10 or explicit")
      ->delimiter(',')
      ->check(CLI::IsMember({"ceil10", "2ceil10", "explicit"}));
  gen->add_option("--p", ga.p, "p for the explicit rule");
  gen->add_option("--r", ga.r, "Distance exponent")->check(CLI::Range(0.0, 2.0));
  gen->add_option("--low", ga.low, "Lowest coordinate");
  gen->add_option("--high", ga.high, "Highest coordinate");
  gen->add_option("--name", ga.name, "Suite name (manifest is <out-dir>/<name>.json)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run every solver mode on a suite");
  bench->add_option("--suite", ba.suite, "Suite manifest")->required();
  bench->add_option("--modes", ba.modes, "Comma-separated modes")
      ->delimiter(',')
      ->check(CLI::IsMember({"single", "multi", "f3", "brute"}));
  bench->add_option("--time-limit", ba.limits, "Comma-separated limits in seconds")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--csv", ba.csv,
                    "Row CSV; aggregates go next to it as <stem>_by_n.csv and <stem>_by_cell.csv");
  bench->add_option("--jobs", ba.jobs, "Concurrent solves")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOptimal;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitError;
  }

  try {
    if (*solve) return cmd_solve(sa, out, err);
    if (*gen) return cmd_gen(ga, out);
    if (*bench) return cmd_bench(ba, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace pdsp::cli
