#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gf2ramsey/json_io.hpp"
#include "gf2ramsey/run_config.hpp"

namespace gf2r {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitClaimFailed = 1, kExitBudget = 2, kExitConfig = 3 };

/// A command's output. Files are written relative to the output directory.
struct Report {
    Json body;
    int exit_code = kExitOk;
    std::vector<std::pair<std::string, std::string>> files;  // relative path, contents
    std::vector<std::vector<std::string>> csv_rows;  // item, instance, verdict, detail
};

Report cmd_verify_section2(const RunConfig& cfg);
Report cmd_verify_section3(const RunConfig& cfg);
Report cmd_arrow(const RunConfig& cfg);
Report cmd_degree(const RunConfig& cfg);
Report cmd_tuples(const RunConfig& cfg);
Report cmd_export_cnf(const RunConfig& cfg);
Report cmd_spencer(const RunConfig& cfg);

/// Dispatches on cfg.command and maps library errors onto exit codes.
/// The body always carries the command echo, tool version and config hash.
Report run_command(const RunConfig& cfg);

/// Writes report.json, summary.csv and the artifact files under cfg.out.
void write_report(const RunConfig& cfg, const Report& r);

/// Copy of a report with every "timing" member removed, at any depth.
Json strip_timing(const Json& j);

}  // namespace gf2r
