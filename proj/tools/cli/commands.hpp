#pragma once

#include "config.hpp"
#include "output.hpp"

namespace srlnc::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config = 2,
    exit_numerical = 3,
    exit_infeasible = 4,
};

struct CommandResult {
    Table table;
    int exit_code = exit_ok;
};

[[nodiscard]] CommandResult run_rank(const ExperimentConfig& cfg);
[[nodiscard]] CommandResult run_chain(const ExperimentConfig& cfg);
[[nodiscard]] CommandResult run_simulate(const ExperimentConfig& cfg);
[[nodiscard]] CommandResult run_optimize(const ExperimentConfig& cfg);
[[nodiscard]] CommandResult run_sweep(const ExperimentConfig& cfg);

[[nodiscard]] CommandResult run_command(Command command, const ExperimentConfig& cfg);

}  // namespace srlnc::cli
