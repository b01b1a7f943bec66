#pragma once

#include "axswirl/monitor.hpp"
#include "axswirl/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace axswirl {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int checks_failed = 1;
inline constexpr int config = 2;
inline constexpr int io = 3;
inline constexpr int internal = 4;
} // namespace exit_code

inline constexpr int kScenarioSchemaVersion = 1;
inline constexpr const char* kOutputRootVariable = "AXSWIRL_OUTPUT_ROOT";

/// Validated scenario. resolved_json holds every field, defaults included.
struct Scenario {
    SimConfig sim;
    MonitorConfig monitor;
    std::filesystem::path output_dir;
    bool write_checkpoints = false;
    std::string resolved_json;
    std::string source_hash;
};

/// Parses and validates a scenario document. Relative paths (initial data,
/// output directory) resolve against base_dir and the output root
/// respectively. Throws ConfigurationError whose message starts with the
/// offending field path, or ExponentError for inadmissible (a, b, gamma).
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir = ".",
                        const std::string& default_name = "scenario");
/// Throws IoError when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Directory that relative output paths are placed under: $AXSWIRL_OUTPUT_ROOT
/// or the working directory.
std::filesystem::path output_root();

std::vector<std::string> diagnostics_columns(const MonitorConfig& m);
/// Header plus one row per record; %.17g, "nan" for undefined pair columns.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records, const MonitorConfig& m);

struct RunOutcome {
    int exit_status = exit_code::ok;
    bool truncated = false;
    std::string status_message;
    std::filesystem::path directory;
    std::vector<CheckResult> checks;
    BlowupReport blowup;
    double c_sob = 0.0;
};

/// Runs the trajectory, feeds the monitor and writes manifest.json,
/// diagnostics.csv, summary.txt, summary.json and optional checkpoints.
/// Throws IoError when an artifact cannot be written.
RunOutcome run_scenario(const Scenario& scenario, std::ostream& log);

/// Full CLI behaviour of `run <path>`; returns the exit status.
int run_scenario_file(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

/// Runs every *.json scenario in dir concurrently; returns the worst exit status.
int sweep_directory(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// Table plus a JSON block; exit 2 for malformed or inadmissible input.
int check_exponents(const std::string& a, const std::string& b, const std::string& gamma,
                    std::ostream& out, std::ostream& err);

/// Convergence study for kind (a manufactured family or "negative_control"),
/// CSV written under the output root. Solver study for the swirl families,
/// operator study for rigid_rotation. PASS needs monotone errors with
/// orders >= 1.9, or rounding-level errors. Exit 2 with fewer than 3 levels.
int mms_report(const std::string& kind, const std::vector<int>& levels, std::ostream& out,
               std::ostream& err);

} // namespace axswirl
