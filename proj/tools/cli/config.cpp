#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "srlnc/error.hpp"

namespace srlnc::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string normalise_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

bool is_known(const std::string& key) {
    const auto& keys = known_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_plain_real(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ConfigError("invalid number for '" + key + "': '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
    if (text == "0" || text == "false" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean for '" + key + "': '" + text + "'");
}

template <typename T>
void require_increasing(const std::string& key, const std::vector<T>& grid) {
    if (grid.empty()) throw ConfigError("grid '" + key + "' is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ConfigError("grid '" + key + "' must be strictly increasing");
        }
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, sep)) parts.push_back(trim(current));
    return parts;
}

double snap(double x) { return std::round(x * 1e12) / 1e12; }

}  // namespace

const char* to_string(Command command) noexcept {
    switch (command) {
        case Command::rank: return "rank";
        case Command::chain: return "chain";
        case Command::simulate: return "simulate";
        case Command::optimize: return "optimize";
        case Command::sweep: return "sweep";
    }
    return "?";
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "scenario", "K",         "q",         "p",        "Nhat",    "eps-b",       "eps-e",
        "eps-k",    "trials",    "seed",      "mode",     "threads", "out",         "format",
        "reading",  "p-grid",    "Nhat-grid", "eps-k-set", "Dhat",   "p-min",       "p-max",
        "tol",      "max-iter",  "rows",      "with-oracle", "dump-matrix", "figure",
    };
    return keys;
}

Settings parse_config_text(const std::string& text, const std::string& origin) {
    Settings settings;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": malformed section header");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = normalise_key(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (!is_known(key)) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        settings[key] = value;
    }
    return settings;
}

Settings read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string::npos) return parse_plain_real(key, t);
    const double num = parse_plain_real(key, trim(t.substr(0, slash)));
    const double den = parse_plain_real(key, trim(t.substr(slash + 1)));
    if (den == 0.0) throw ConfigError("zero denominator for '" + key + "': '" + text + "'");
    return num / den;
}

std::int64_t parse_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError("invalid integer for '" + key + "': '" + text + "'");
    }
    return value;
}

std::vector<double> parse_real_grid(const std::string& key, const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("grid '" + key + "' must be start:stop:step");
        const double start = parse_real(key, parts[0]);
        const double stop = parse_real(key, parts[1]);
        const double step = parse_real(key, parts[2]);
        if (!(step > 0.0) || stop < start) {
            throw ConfigError("grid '" + key + "' needs step > 0 and stop >= start");
        }
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        if (n > 1'000'000) throw ConfigError("grid '" + key + "' has too many points");
        for (long i = 0; i <= n; ++i) grid.push_back(snap(start + static_cast<double>(i) * step));
    } else {
        for (const auto& part : split(text, ',')) grid.push_back(parse_real(key, part));
    }
    require_increasing(key, grid);
    return grid;
}

std::vector<int> parse_integer_grid(const std::string& key, const std::string& text) {
    std::vector<int> grid;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("grid '" + key + "' must be start:stop:step");
        const auto start = parse_integer(key, parts[0]);
        const auto stop = parse_integer(key, parts[1]);
        const auto step = parse_integer(key, parts[2]);
        if (step <= 0 || stop < start) throw ConfigError("grid '" + key + "' needs step > 0 and stop >= start");
        if ((stop - start) / step > 1'000'000) throw ConfigError("grid '" + key + "' has too many points");
        for (auto v = start; v <= stop; v += step) grid.push_back(static_cast<int>(v));
    } else {
        for (const auto& part : split(text, ',')) grid.push_back(static_cast<int>(parse_integer(key, part)));
    }
    require_increasing(key, grid);
    return grid;
}

ExperimentConfig build_config(Command command, const std::vector<Settings>& layers) {
    Settings s;
    for (const auto& layer : layers) {
        for (const auto& [key, value] : layer) {
            if (!is_known(key)) throw ConfigError("unknown setting '" + key + "'");
            s[key] = value;
        }
    }

    ExperimentConfig cfg;
    cfg.explicit_keys = s;
    auto has = [&](const char* key) { return s.count(key) > 0; };
    auto get = [&](const char* key) -> const std::string& { return s.at(key); };

    if (has("scenario")) cfg.scenario = get("scenario");
    if (has("K")) cfg.code.K = static_cast<int>(parse_integer("K", get("K")));
    if (has("q")) {
        const auto q = parse_integer("q", get("q"));
        if (q < 2 || q > 256) throw ConfigError("q must be a power of two in [2, 256], got " + get("q"));
        cfg.code.q = static_cast<unsigned>(q);
    }
    cfg.code.p = has("p") ? parse_real("p", get("p")) : 1.0 / static_cast<double>(cfg.code.q);
    cfg.code.N_hat = has("Nhat") ? static_cast<int>(parse_integer("Nhat", get("Nhat"))) : 2 * cfg.code.K;
    if (has("eps-b")) cfg.chan.eps_B = parse_real("eps-b", get("eps-b"));
    if (has("eps-e")) cfg.chan.eps_E = parse_real("eps-e", get("eps-e"));
    if (has("eps-k")) cfg.chan.eps_K = parse_real("eps-k", get("eps-k"));
    if (has("trials")) cfg.trials = parse_integer("trials", get("trials"));
    if (has("seed")) {
        const auto& text = get("seed");
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw ConfigError("invalid seed '" + text + "': expected an unsigned 64-bit integer");
        }
        cfg.seed = seed;
    }
    if (has("threads")) {
        const auto threads = parse_integer("threads", get("threads"));
        if (threads < 0 || threads > 4096) throw ConfigError("threads must be in [0, 4096]");
        cfg.threads = static_cast<unsigned>(threads);
    }
    if (has("out")) cfg.out = get("out");
    if (has("format")) {
        const auto& f = get("format");
        if (f == "csv") cfg.format = Format::csv;
        else if (f == "json") cfg.format = Format::json;
        else throw ConfigError("format must be 'csv' or 'json', got '" + f + "'");
    }
    if (has("mode")) cfg.mode = parse_transition_mode(get("mode"));
    if (has("reading")) {
        const auto& r = get("reading");
        if (r == "corrected") cfg.reading = PiReading::corrected;
        else if (r == "inner-verbatim") cfg.reading = PiReading::inner_verbatim;
        else if (r == "printed") cfg.reading = PiReading::printed;
        else throw ConfigError("reading must be corrected, inner-verbatim or printed, got '" + r + "'");
    }
    if (has("Dhat")) cfg.D_hat = parse_real("Dhat", get("Dhat"));
    if (has("p-min")) cfg.p_min = parse_real("p-min", get("p-min"));
    if (has("p-max")) cfg.p_max = parse_real("p-max", get("p-max"));
    if (has("tol")) cfg.tol = parse_real("tol", get("tol"));
    if (has("max-iter")) cfg.max_iter = static_cast<int>(parse_integer("max-iter", get("max-iter")));
    if (has("rows")) cfg.rows = static_cast<int>(parse_integer("rows", get("rows")));
    if (has("with-oracle")) cfg.with_oracle = parse_bool("with-oracle", get("with-oracle"));
    if (has("dump-matrix")) cfg.dump_matrix = get("dump-matrix");
    if (has("figure")) cfg.figure = get("figure");

    cfg.p_grid = has("p-grid") ? parse_real_grid("p-grid", get("p-grid")) : std::vector<double>{cfg.code.p};
    cfg.N_grid = has("Nhat-grid") ? parse_integer_grid("Nhat-grid", get("Nhat-grid"))
                                  : std::vector<int>{cfg.code.N_hat};
    cfg.eps_K_set = has("eps-k-set") ? parse_real_grid("eps-k-set", get("eps-k-set"))
                                     : std::vector<double>{cfg.chan.eps_K};

    if (cfg.trials < 1) throw ConfigError("trials must be >= 1, got " + std::to_string(cfg.trials));

    // The figure presets carry their own parameter sets and are validated
    // when they are expanded.
    if (command == Command::sweep) return cfg;

    cfg.code.p = cfg.p_grid.front();
    cfg.code.N_hat = cfg.N_grid.front();
    for (double p : cfg.p_grid) {
        CodeParams c = cfg.code;
        c.p = p;
        c.validate_law();
    }
    if (command != Command::rank) {
        for (int n : cfg.N_grid) {
            CodeParams c = cfg.code;
            c.N_hat = n;
            c.validate();
        }
        for (double eK : cfg.eps_K_set) {
            ChannelParams ch = cfg.chan;
            ch.eps_K = eK;
            ch.validate();
        }
    }
    if (command == Command::rank && cfg.rows != 0 && cfg.rows < cfg.code.K) {
        throw ConfigError("rows must be >= K (" + std::to_string(cfg.code.K) + "), got " +
                          std::to_string(cfg.rows));
    }
    if (!cfg.dump_matrix.empty() && (cfg.p_grid.size() != 1 || cfg.eps_K_set.size() != 1)) {
        throw ConfigError("dump-matrix needs a single p and a single eps-k");
    }
    return cfg;
}

}  // namespace srlnc::cli
