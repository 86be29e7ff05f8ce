#pragma once

// Experiment runners behind the becsim subcommands.  Each produces
// deterministic CSV data plus a JSON manifest describing the resolved
// configuration and the assertion results.

#include <string>
#include <vector>

#include <json.hpp>

#include "bec/cli/config.hpp"

namespace bec::cli {

struct RunReport {
    int exit_code = 0;                   // 0 ok, 1 assertion failure, 2 config/usage
    std::vector<std::string> failures;   // human-readable assertion failures
    nlohmann::json manifest;
    std::string csv;
};

RunReport run_spectrum(const RunConfig& cfg);
RunReport run_evolve(const RunConfig& cfg);
RunReport run_revival(const RunConfig& cfg);
RunReport run_adiabatic(const RunConfig& cfg);
RunReport run_validity(const RunConfig& cfg);

// Dispatch on cfg.experiment.
RunReport run_experiment(const RunConfig& cfg);

// Write report.csv / report.manifest to <out_dir>/<stem>.csv and .json,
// creating the directory if needed.
void write_report(const RunReport& report, const std::string& out_dir, const std::string& stem);

}  // namespace bec::cli
