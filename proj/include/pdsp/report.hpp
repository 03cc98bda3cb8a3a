#ifndef PDSP_REPORT_HPP
#define PDSP_REPORT_HPP

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pdsp/diagnostics.hpp"
#include "pdsp/geometry.hpp"
#include "pdsp/instance.hpp"

namespace pdsp {

/// Machine-readable solve result. Non-finite numbers become null; big
/// elimination counts are decimal strings.
nlohmann::json report_to_json(const Instance& inst, const std::string& mode,
                              const SolveReport& report,
                              const std::vector<CutStrength>* strength = nullptr,
                              const CndCertificate* cnd = nullptr);

}  // namespace pdsp

#endif  // PDSP_REPORT_HPP
