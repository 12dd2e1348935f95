#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"

namespace srlnc::cli {

/// An output file could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Empty cells mark gaps (for example infeasible optimisation points).
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Ordered provenance entries written ahead of the data.
    std::vector<std::pair<std::string, std::string>> meta;

    void add_row(std::vector<Cell> row);
};

/// Shortest round-trip decimal representation.
[[nodiscard]] std::string format_real(double x);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);

/// Writes to `path`, or to `fallback` when the path is empty or "-".
void emit(const Table& table, Format format, const std::string& path, std::ostream& fallback);

/// Version string baked in at configure time (git describe, or the project
/// version when git is unavailable).
[[nodiscard]] const char* build_version() noexcept;

}  // namespace srlnc::cli
