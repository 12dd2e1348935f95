#include "commands.hpp"

#include <algorithm>
#include <fstream>

#include "enumeration.hpp"
#include "presets.hpp"
#include "srlnc/error.hpp"
#include "srlnc/im_solver.hpp"
#include "srlnc/intercept_chain.hpp"
#include "srlnc/mc_sim.hpp"
#include "srlnc/rank_stat.hpp"

namespace srlnc::cli {

namespace {

Cell integer(long long v) { return Cell{static_cast<std::int64_t>(v)}; }
Cell real(double v) { return Cell{v}; }
Cell text(const std::string& v) { return Cell{v}; }
Cell seed_cell(std::uint64_t seed) { return Cell{std::to_string(seed)}; }

void dump_matrix(const TransitionMatrix& P, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open matrix dump file '" + path + "' for writing");
    P.write_triplets(out);
    out.flush();
    if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace

CommandResult run_rank(const ExperimentConfig& cfg) {
    const int K = cfg.code.K;
    const unsigned q = cfg.code.q;
    const int rows = cfg.rows > 0 ? cfg.rows : K;

    CommandResult result;
    auto& t = result.table;
    t.columns = {"K", "q", "p", "reading", "rows", "t", "W_t", "R"};
    if (cfg.with_oracle) {
        t.columns.push_back("W_exact");
        t.columns.push_back("R_exact");
    }
    for (double p : cfg.p_grid) {
        const RankTables tables(K, q, p, rows, cfg.reading);
        std::vector<double> exact, kexact;
        if (cfg.with_oracle) {
            exact = exact_full_rank_probs(rows, K, p, q);
            kexact = rows == K ? exact : exact_full_rank_probs(K, K, p, q);
        }
        for (int s = 0; s < K; ++s) {
            std::vector<Cell> row = {integer(K), integer(q), real(p), text(to_string(cfg.reading)),
                                     integer(rows), integer(s), real(tables.innovation_probability(s)),
                                     real(tables.full_rank_prob(rows, s + 1))};
            if (cfg.with_oracle) {
                const auto i = static_cast<std::size_t>(s);
                // Exact innovation probability: ratio of consecutive full-rank
                // probabilities of a K-row matrix.
                row.push_back(kexact[i] > 0.0 ? real(kexact[i + 1] / kexact[i]) : Cell{});
                row.push_back(real(exact[i + 1]));
            }
            t.add_row(std::move(row));
        }
    }
    return result;
}

CommandResult run_chain(const ExperimentConfig& cfg) {
    CommandResult result;
    auto& t = result.table;
    t.columns = {"K",    "q",       "p",         "N_hat",    "eps_B",          "eps_E",           "eps_K",
                 "mode", "reading", "intercept", "delivery", "chain_delivery", "clamped_brackets"};
    const int max_N = cfg.N_grid.back();
    for (double p : cfg.p_grid) {
        CodeParams code = cfg.code;
        code.p = p;
        const RankTables tables(code.K, code.q, p, max_N, cfg.reading);
        for (double eK : cfg.eps_K_set) {
            ChannelParams chan = cfg.chan;
            chan.eps_K = eK;
            const auto P = build_chain(code, chan, tables, cfg.mode);
            if (!cfg.dump_matrix.empty()) dump_matrix(P, cfg.dump_matrix);
            const auto curve = intercept_curve(P, max_N);
            for (int n : cfg.N_grid) {
                const double delivery = delivery_probability(code.K, n, chan.eps_B, tables);
                t.add_row({integer(code.K), integer(code.q), real(p), integer(n), real(chan.eps_B),
                           real(chan.eps_E), real(eK), text(to_string(cfg.mode)), text(to_string(cfg.reading)),
                           real(curve[static_cast<std::size_t>(n)]), real(delivery),
                           real(chain_delivery_probability(P, n)),
                           integer(static_cast<long long>(P.clamped_brackets()))});
            }
        }
    }
    return result;
}

CommandResult run_simulate(const ExperimentConfig& cfg) {
    CommandResult result;
    auto& t = result.table;
    t.columns = {"p",      "N_hat",  "eps_B",         "eps_E",        "eps_K", "K",         "q",
                 "trials", "seed",   "intercept_hat", "delivery_hat", "ci",    "mean_slots"};
    for (double p : cfg.p_grid) {
        for (int n : cfg.N_grid) {
            for (double eK : cfg.eps_K_set) {
                SimConfig sim;
                sim.code = cfg.code;
                sim.code.p = p;
                sim.code.N_hat = n;
                sim.chan = cfg.chan;
                sim.chan.eps_K = eK;
                sim.trials = cfg.trials;
                sim.base_seed = cfg.seed;
                sim.threads = cfg.threads;
                const auto stats = estimate(sim);
                t.add_row({real(p), integer(n), real(sim.chan.eps_B), real(sim.chan.eps_E), real(eK),
                           integer(sim.code.K), integer(sim.code.q), integer(cfg.trials), seed_cell(cfg.seed),
                           real(stats.intercept_hat), real(stats.delivery_hat), real(stats.intercept_ci),
                           real(stats.mean_slots)});
            }
        }
    }
    return result;
}

CommandResult run_optimize(const ExperimentConfig& cfg) {
    CommandResult result;
    auto& t = result.table;
    t.columns = {"K",       "q",      "N_hat",       "eps_B",       "eps_E",       "eps_K",
                 "D_hat",   "p_min",  "p_max",       "mode",        "reading",     "status",
                 "p_star",  "D_at_p_star", "I_at_p_star", "I_at_p_min", "iterations"};
    for (int n : cfg.N_grid) {
        for (double eK : cfg.eps_K_set) {
            ImConfig im;
            im.code = cfg.code;
            im.code.N_hat = n;
            im.chan = cfg.chan;
            im.chan.eps_K = eK;
            im.D_hat = cfg.D_hat;
            im.p_min = cfg.p_min;
            im.p_max = cfg.p_max;
            im.tol = cfg.tol;
            im.max_iter = cfg.max_iter;
            im.reading = cfg.reading;
            im.mode = cfg.mode;
            im.validate();
            const auto sol = solve_im(im);
            const bool feasible = sol.status != ImStatus::infeasible;
            if (!feasible) result.exit_code = exit_infeasible;
            t.add_row({integer(im.code.K), integer(im.code.q), integer(n), real(im.chan.eps_B),
                       real(im.chan.eps_E), real(eK), real(im.D_hat), real(im.lower()), real(im.p_max),
                       text(to_string(cfg.mode)), text(to_string(cfg.reading)), text(to_string(sol.status)),
                       feasible ? real(sol.p_star) : Cell{}, real(sol.D_at_p_star),
                       feasible ? real(sol.I_at_p_star) : Cell{}, real(sol.I_at_p_min),
                       integer(sol.iterations)});
        }
    }
    return result;
}

CommandResult run_sweep(const ExperimentConfig& cfg) {
    const auto plan = expand_figure(cfg);
    const auto trials = cfg.explicit_keys.count("trials") ? cfg.trials : default_trials(cfg.figure);

    CommandResult result;
    auto& t = result.table;
    t.meta.emplace_back("figure", plan.figure + " (" + plan.title + ")");
    t.meta.emplace_back("budget", plan.budget);

    if (!plan.is_gain()) {
        t.columns = {"figure", "K",       "q",      "N_hat", "eps_B", "eps_E", "eps_K", "p",
                     "mode",   "reading", "theory", "sim",   "ci",    "trials", "seed"};
        for (const auto& pt : plan.points) {
            const auto theory = evaluate_chain(pt.code, pt.chan, cfg.mode, cfg.reading);
            SimConfig sim{pt.code, pt.chan, trials, cfg.seed, cfg.threads};
            const auto stats = estimate(sim);
            t.add_row({text(plan.figure), integer(pt.code.K), integer(pt.code.q), integer(pt.code.N_hat),
                       real(pt.chan.eps_B), real(pt.chan.eps_E), real(pt.chan.eps_K), real(pt.code.p),
                       text(to_string(cfg.mode)), text(to_string(cfg.reading)), real(theory.intercept),
                       real(stats.intercept_hat), real(stats.intercept_ci), integer(trials), seed_cell(cfg.seed)});
        }
        return result;
    }

    t.columns = {"figure", "K",        "q",       "eps_B",   "eps_E",  "eps_K",  "D_hat",
                 "mode",   "reading",  "N_hat",   "p_star",  "status", "I_classic", "I_opt",
                 "gain",   "ci_low",   "ci_high", "I_theory_classic", "I_theory_opt", "trials", "seed"};
    const GainSweep sweep{trials, cfg.seed, cfg.threads};
    for (const auto& curve : plan.curves) {
        for (int n : curve.N_grid) {
            const auto g = intercept_gain_point(curve.im, n, sweep);
            const auto& im = curve.im;
            std::vector<Cell> row = {text(plan.figure), integer(im.code.K), integer(im.code.q),
                                     real(im.chan.eps_B), real(im.chan.eps_E), real(im.chan.eps_K),
                                     real(im.D_hat), text(to_string(im.mode)), text(to_string(im.reading)),
                                     integer(n)};
            if (g.feasible) {
                row.insert(row.end(), {real(g.solution.p_star), text(to_string(g.solution.status)),
                                       real(g.classic.intercept_hat), real(g.optimised.intercept_hat),
                                       real(g.gain), real(g.ci_low), real(g.ci_high),
                                       real(g.solution.I_at_p_min), real(g.solution.I_at_p_star)});
            } else {
                row.insert(row.end(), {Cell{}, text(to_string(g.solution.status)), Cell{}, Cell{}, Cell{},
                                       Cell{}, Cell{}, real(g.solution.I_at_p_min), Cell{}});
            }
            row.push_back(integer(trials));
            row.push_back(seed_cell(cfg.seed));
            t.add_row(std::move(row));
        }
    }
    return result;
}

CommandResult run_command(Command command, const ExperimentConfig& cfg) {
    switch (command) {
        case Command::rank: return run_rank(cfg);
        case Command::chain: return run_chain(cfg);
        case Command::simulate: return run_simulate(cfg);
        case Command::optimize: return run_optimize(cfg);
        case Command::sweep: return run_sweep(cfg);
    }
    throw ConfigError("unknown command");
}

}  // namespace srlnc::cli
