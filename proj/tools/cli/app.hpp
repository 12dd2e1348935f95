#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srlnc::cli {

/// Parses the command line, runs the subcommand and writes its output.
/// Returns the process exit code; never throws.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The command line as recorded in output headers: program name normalised
/// to "srlnc", arguments shell-quoted where needed.
[[nodiscard]] std::string provenance_command(const std::vector<std::string>& args);

}  // namespace srlnc::cli
