#pragma once
#include <map>
#include <string>

#include <json.hpp>

#include "bulkedge/config.hpp"

namespace bulkedge {

enum ExitCode { kPass = 0, kInternal = 1, kSchema = 2, kGapClosed = 3, kInconclusive = 4, kVerdictFail = 5 };

struct Report {
    nlohmann::ordered_json json;
    std::string csv;
    int exit_code = kInternal;
    std::string verdict;  // pass, fail or error
};

// Executes the configured bulk and edge computations; never throws for numerical
// failures, which are recorded in the report with the matching exit code.
Report run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::Parallel);

// Writes <dir>/<name>.json and <dir>/<name>.csv and returns the exit code.
int run_to_files(const ExperimentConfig& cfg, Exec exec = Exec::Parallel);

struct OracleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// berry-chern, edge-bands or kramers-count on a clean translation-invariant model.
nlohmann::ordered_json run_oracle(const std::string& name, const std::map<std::string, double>& params);

}  // namespace bulkedge
