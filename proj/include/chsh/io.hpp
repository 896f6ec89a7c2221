#pragma once

// JSON state files, report serialization and CSV emitters.
//
// State file: {"d": 2, "rho": [[[re, im], ...], ...]} with rho a row-major
// 2d x 2d matrix indexed a*d + b (qubit index a, qudit index b).

#include <string>
#include <string_view>

#include "json.hpp"

#include "chsh/analysis.hpp"
#include "chsh/scan.hpp"
#include "chsh/state.hpp"

namespace chsh {

/// Parses and validates a state file. Throws ValidationError whose message
/// names the location and the failed invariant.
QubitQuditState parse_state(std::string_view text);
QubitQuditState load_state(const std::string& path);

nlohmann::ordered_json state_to_json(const QubitQuditState& state);

/// Timing is written under "timing" only when present in the report.
nlohmann::ordered_json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);
std::string report_to_csv(const AnalysisReport& report);

/// Histogram rows "bin_low,bin_high,count" followed by a "# summary" line.
std::string scan_to_csv(const ScanStatistics& stats);

/// "%.12g" with '.' as decimal separator.
std::string format12(double v);

}  // namespace chsh
