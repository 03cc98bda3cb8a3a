#include "pdsp/report.hpp"

#include <cmath>

namespace pdsp {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json report_to_json(const Instance& inst, const std::string& mode,
                              const SolveReport& report, const std::vector<CutStrength>* strength,
                              const CndCertificate* cnd) {
  using nlohmann::json;
  json doc;
  doc["instance"] = inst.name();
  doc["n"] = inst.n();
  doc["p"] = inst.p();
  doc["mode"] = mode;
  doc["status"] = to_string(report.status);
  doc["value"] = report.incumbent ? number(report.incumbent->value()) : json(nullptr);
  doc["selected"] = report.incumbent ? json(report.incumbent->selected()) : json::array();
  doc["bounds"] = {{"lb", number(report.lower_bound)}, {"ub", number(report.upper_bound)}};
  doc["counters"] = {{"cuts", report.cuts_added},
                     {"nodes", report.nodes_explored},
                     {"lp_solves", report.lp_solves},
                     {"outer_iterations", report.outer_iterations}};
  doc["timing_ms"] = report.wall_time_ms;
  doc["zero_gradient_stop"] = report.zero_gradient_stop;
  json log = json::array();
  for (const CutLogEntry& e : report.cut_log) {
    log.push_back({{"k", e.k},
                   {"f", number(e.f)},
                   {"theta", number(e.theta)},
                   {"lb", number(e.lb)},
                   {"source", e.source}});
  }
  doc["cut_log"] = std::move(log);
  if (strength) {
    json arr = json::array();
    for (const CutStrength& s : *strength) {
      arr.push_back({{"k", s.k},
                     {"l", s.l},
                     {"ratio", number(s.ratio)},
                     {"n_l", s.n_l},
                     {"eliminated_count", s.eliminated_count.str()}});
    }
    doc["cut_strength"] = std::move(arr);
  }
  if (cnd) {
    doc["cnd"] = {{"is_cnd", cnd->is_cnd},
                  {"max_projected_eigenvalue", number(cnd->max_projected_eigenvalue)},
                  {"tolerance", number(cnd->tolerance)}};
  }
  return doc;
}

}  // namespace pdsp
