#include "app.hpp"

#include <deque>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "srlnc/error.hpp"

namespace srlnc::cli {

namespace {

struct Subcommand {
    Command command = Command::rank;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    bool with_oracle = false;
    CLI::Option* oracle_flag = nullptr;
    std::string config_path;
    CLI::Option* config_option = nullptr;
};

struct FlagSpec {
    const char* key;
    const char* help;
};

const FlagSpec kCommon[] = {
    {"K", "generation size"},
    {"q", "field order (2, 4, ..., 256)"},
    {"p", "probability that a coding coefficient is zero (default 1/q)"},
    {"Nhat", "transmission budget (default 2K)"},
    {"eps-b", "Bob's packet erasure probability"},
    {"eps-e", "Eve's packet erasure probability"},
    {"eps-k", "ACK erasure probability"},
    {"trials", "Monte Carlo trials per point"},
    {"seed", "base seed"},
    {"mode", "transition mode: paper-exact or consistent"},
    {"reading", "pi recursion reading: corrected, inner-verbatim or printed"},
    {"threads", "worker threads (0 = all cores)"},
    {"out", "output file (default stdout)"},
    {"format", "csv or json"},
    {"scenario", "free-form label recorded in the output header"},
    {"p-grid", "p values: a,b,c or start:stop:step"},
    {"Nhat-grid", "N_hat values: a,b,c or start:stop:step"},
    {"eps-k-set", "eps_K values: a,b,c or start:stop:step"},
};

const FlagSpec kOptimize[] = {
    {"Dhat", "minimum delivery probability"},
    {"p-min", "lower end of the search interval (default 1/q)"},
    {"p-max", "upper end of the search interval"},
    {"tol", "tolerance on the delivery probability"},
    {"max-iter", "bisection iteration cap"},
};

void add_flags(Subcommand& sub, std::span<const FlagSpec> specs) {
    for (const auto& spec : specs) {
        auto* opt = sub.app->add_option(std::string("--") + spec.key, sub.values[spec.key], spec.help);
        sub.options[spec.key] = opt;
    }
}

Settings explicit_flags(const Subcommand& sub) {
    Settings s;
    for (const auto& [key, opt] : sub.options) {
        if (opt->count() > 0) s[key] = sub.values.at(key);
    }
    if (sub.oracle_flag && sub.oracle_flag->count() > 0) s["with-oracle"] = "true";
    return s;
}

std::string shell_quote(const std::string& arg) {
    if (!arg.empty() && arg.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                              "0123456789-_.,:/=+@%") == std::string::npos) {
        return arg;
    }
    std::string quoted = "'";
    for (char c : arg) {
        if (c == '\'') quoted += "'\\''";
        else quoted += c;
    }
    return quoted + "'";
}

}  // namespace

std::string provenance_command(const std::vector<std::string>& args) {
    std::string line = "srlnc";
    for (std::size_t i = 1; i < args.size(); ++i) line += " " + shell_quote(args[i]);
    return line;
}

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse RLNC intercept-probability toolkit", "srlnc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(build_version()));

    std::deque<Subcommand> subs;
    auto make = [&](Command command, const char* help) -> Subcommand& {
        auto& sub = subs.emplace_back();
        sub.command = command;
        sub.app = app.add_subcommand(to_string(command), help);
        sub.config_option = sub.app->add_option("--config", sub.config_path,
                                                "key = value configuration file; flags override it");
        add_flags(sub, kCommon);
        return sub;
    };

    auto& rank = make(Command::rank, "innovation and full-rank probability tables");
    rank.app->add_option("--rows", rank.values["rows"], "row count r of R_{r,c} (default K)");
    rank.options["rows"] = rank.app->get_option("--rows");
    rank.oracle_flag = rank.app->add_flag("--with-oracle", rank.with_oracle,
                                          "add exact enumeration columns (needs q^rows <= 64)");

    auto& chain = make(Command::chain, "intercept and delivery probabilities from the Markov chain");
    chain.app->add_option("--dump-matrix", chain.values["dump-matrix"], "write the transition matrix triplets");
    chain.options["dump-matrix"] = chain.app->get_option("--dump-matrix");

    make(Command::simulate, "Monte Carlo estimate of intercept and delivery probabilities");

    auto& optimize = make(Command::optimize, "solve the intercept minimisation problem for p");
    add_flags(optimize, kOptimize);

    auto& sweep = make(Command::sweep, "regenerate the data behind a paper figure");
    add_flags(sweep, kOptimize);
    sweep.app->add_option("--figure", sweep.values["figure"], "1a, 1b, 2a, 2b, 2c or 2d")->required();
    sweep.options["figure"] = sweep.app->get_option("--figure");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        for (auto& sub : subs) {
            if (!sub.app->parsed()) continue;
            std::vector<Settings> layers;
            if (sub.config_option->count() > 0) layers.push_back(read_config_file(sub.config_path));
            layers.push_back(explicit_flags(sub));
            const auto cfg = build_config(sub.command, layers);
            auto result = run_command(sub.command, cfg);

            std::vector<std::pair<std::string, std::string>> meta = {
                {"command", provenance_command(args)},
                {"version", build_version()},
                {"seed", std::to_string(cfg.seed)},
                {"mode", to_string(cfg.mode)},
                {"reading", to_string(cfg.reading)},
            };
            if (!cfg.scenario.empty()) meta.emplace_back("scenario", cfg.scenario);
            meta.insert(meta.end(), result.table.meta.begin(), result.table.meta.end());
            result.table.meta = std::move(meta);
            emit(result.table, cfg.format, cfg.out, out);
            if (result.exit_code == exit_infeasible) {
                err << "srlnc: optimisation infeasible for at least one point (status column)\n";
            }
            return result.exit_code;
        }
    } catch (const ConfigError& e) {
        err << "srlnc: configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        err << "srlnc: invalid parameter: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericalIntegrityError& e) {
        err << "srlnc: numerical integrity failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const IoError& e) {
        err << "srlnc: " << e.what() << '\n';
        return exit_failure;
    } catch (const std::exception& e) {
        err << "srlnc: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}

}  // namespace srlnc::cli
