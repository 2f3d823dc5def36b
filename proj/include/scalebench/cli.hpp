#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scalebench/records.hpp"

namespace scalebench {

struct BootstrapConfig {
    std::size_t replicates = 0;  // 0 disables the bootstrap
    double level = 0.95;
    std::uint64_t seed = 0;
};

// Effective configuration of one CLI run. Defaults reproduce the reference
// setup: revenue vs emissions, sector level, min group size 10, classical
// standard errors, natural-log intercepts.
struct RunConfig {
    std::string command;  // fit|score|savings|rank|dispersion|synth|report
    std::vector<std::string> inputs;  // data CSVs; for synth, one spec JSON
    MetricSelector selector;
    GroupLevel level = GroupLevel::Sector;
    std::size_t min_group_size = 10;
    bool robust_se = false;
    BootstrapConfig bootstrap;
    std::string format = "text";  // text|csv|json|svg
    std::string out;              // output path; empty = provided stream
    std::string fits_path;        // score/savings: precomputed fits JSON
    std::string report_kind = "table";  // table|scatter|significant|coverage
    std::string scatter_group;          // report --kind scatter
    std::vector<double> alphas = {0.05, 0.01, 0.001};
    bool map_pairs = false;    // dispersion: emit only (country, value) pairs
    bool fallback_all = true;  // savings: skipped groups fall back to the All fit
    bool audit = true;         // emit drop/row-error JSON lines on the err stream
    std::size_t threads = 1;
};

// The config echo embedded in every output header. Execution details that do
// not affect output bytes (out path, threads, audit) are omitted so replaying
// an echoed config reproduces the output exactly.
std::string to_json(const RunConfig& config);
RunConfig run_config_from_json_text(const std::string& text);

// Executes one command. Results go to `out` (or config.out when set),
// diagnostics to `err` as JSON lines. Returns the process exit code:
// 0 success, 1 I/O failure, 2 validation failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace scalebench
