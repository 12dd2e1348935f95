#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "srlnc/intercept_chain.hpp"
#include "srlnc/params.hpp"
#include "srlnc/rank_stat.hpp"

namespace srlnc::cli {

/// Raw key/value settings. Keys use the long flag spelling without dashes
/// prefix ("eps-b", "Nhat", "p-grid").
using Settings = std::map<std::string, std::string>;

enum class Format { csv, json };

enum class Command { rank, chain, simulate, optimize, sweep };

[[nodiscard]] const char* to_string(Command command) noexcept;

struct ExperimentConfig {
    std::string scenario;
    CodeParams code;
    ChannelParams chan;
    std::vector<double> p_grid;
    std::vector<int> N_grid;
    std::vector<double> eps_K_set;
    std::int64_t trials = 20000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out;
    Format format = Format::csv;
    TransitionMode mode = TransitionMode::paper_exact;
    PiReading reading = PiReading::corrected;
    double D_hat = 0.9;
    double p_min = 0.0;
    double p_max = 0.95;
    double tol = 1e-6;
    int max_iter = 100;
    int rows = 0;
    bool with_oracle = false;
    std::string dump_matrix;
    std::string figure;
    /// Only the keys that were set explicitly (file or flag), for presets.
    Settings explicit_keys;
};

/// Every key accepted in a config file or on the command line.
[[nodiscard]] const std::vector<std::string>& known_keys();

/// Parses `key = value` lines grouped under optional `[section]` headers.
/// Section names are informational; '#' and ';' start comments; '_' in keys
/// is read as '-'. Unknown keys are errors.
[[nodiscard]] Settings parse_config_text(const std::string& text, const std::string& origin);
[[nodiscard]] Settings read_config_file(const std::string& path);

/// Numbers may be written as decimals or as fractions ("1/16").
[[nodiscard]] double parse_real(const std::string& key, const std::string& text);
[[nodiscard]] std::int64_t parse_integer(const std::string& key, const std::string& text);

/// "a,b,c" or "start:stop:step" (inclusive).
[[nodiscard]] std::vector<double> parse_real_grid(const std::string& key, const std::string& text);
[[nodiscard]] std::vector<int> parse_integer_grid(const std::string& key, const std::string& text);

/// Layers settings (later maps override earlier ones), converts and
/// validates them for the given command. Throws ConfigError.
[[nodiscard]] ExperimentConfig build_config(Command command, const std::vector<Settings>& layers);

}  // namespace srlnc::cli
