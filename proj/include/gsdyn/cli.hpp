#pragma once

// Batch driver behind the gsdyn executable.

#include "gsdyn/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gsdyn {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;  // a checked invariant failed
inline constexpr int kExitConfig = 2;     // bad config, flags or preconditions

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    Json summary = Json::object();
    std::vector<std::string> notes;
    int exit_code = kExitOk;
};

// Domain, precondition and parse errors propagate; the caller maps them to kExitConfig.
Report run_experiment(const ExperimentConfig& config, unsigned jobs = 1);

void write_csv(const Report& report, const ExperimentConfig& config, std::ostream& out);
void write_json(const Report& report, const ExperimentConfig& config, std::ostream& out);

// Formats a cell the way the CSV writer does (doubles with 17 significant digits).
std::string format_cell(const Json& cell);

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gsdyn
