#include "presets.hpp"

#include <algorithm>
#include <cmath>

#include "srlnc/error.hpp"

namespace srlnc::cli {

namespace {

struct PanelChannel {
    double eps_B;
    double eps_E;
};

PanelChannel gain_panel(const std::string& figure) {
    if (figure == "2a") return {0.05, 0.2};
    if (figure == "2b") return {0.05, 0.3};
    if (figure == "2c") return {0.1, 0.25};
    return {0.1, 0.35};
}

std::vector<double> fig1_p_grid(unsigned q) {
    std::vector<double> grid;
    const double lower = 1.0 / static_cast<double>(q);
    if (q != 2) grid.push_back(lower);
    for (int i = 0; i <= 16; ++i) {
        const double p = 0.1 + 0.05 * i;
        if (p >= lower - 1e-12) grid.push_back(std::round(p * 1e12) / 1e12);
    }
    return grid;
}

std::vector<int> fig2_N_grid(int K) {
    std::vector<int> grid;
    const int stop = K <= 5 ? 80 : 100;
    const int step = K <= 5 ? 1 : 2;
    for (int n = K + 1; n <= stop; n += step) grid.push_back(n);
    return grid;
}

}  // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {"1a", "1b", "2a", "2b", "2c", "2d"};
    return names;
}

long default_trials(const std::string& figure) { return figure.front() == '1' ? 20000 : 10000; }

FigurePlan expand_figure(const ExperimentConfig& cfg) {
    const auto& names = figure_names();
    if (std::find(names.begin(), names.end(), cfg.figure) == names.end()) {
        throw ConfigError("unknown figure '" + cfg.figure + "'; expected one of 1a, 1b, 2a, 2b, 2c, 2d");
    }
    const auto& ex = cfg.explicit_keys;
    auto has = [&](const char* key) { return ex.count(key) > 0; };

    FigurePlan plan;
    plan.figure = cfg.figure;
    const bool fig1 = cfg.figure.front() == '1';

    std::vector<int> Ks = fig1 ? std::vector<int>{20} : std::vector<int>{5, 20};
    if (has("K")) Ks = {cfg.code.K};
    std::vector<unsigned> qs = fig1 ? std::vector<unsigned>{cfg.figure == "1a" ? 2u : 16u}
                                    : std::vector<unsigned>{2u, 16u};
    if (has("q")) qs = {cfg.code.q};
    std::vector<double> eps_Ks = fig1 ? std::vector<double>{0.0, 0.5, 0.85, 0.9, 0.95, 1.0}
                                      : std::vector<double>{0.85, 0.9, 0.95, 1.0};
    if (has("eps-k-set")) eps_Ks = cfg.eps_K_set;
    else if (has("eps-k")) eps_Ks = {cfg.chan.eps_K};

    if (fig1) {
        plan.title = "intercept probability versus p, theory and simulation";
        plan.budget = cfg.figure == "1a" ? "about 1.5 min" : "about 5 min";
        std::vector<double> eps_Bs = {0.01, 0.05, 0.1};
        if (has("eps-b")) eps_Bs = {cfg.chan.eps_B};
        for (int K : Ks) {
            for (unsigned q : qs) {
                const auto p_grid = has("p-grid") ? cfg.p_grid : has("p") ? std::vector<double>{cfg.code.p}
                                                                          : fig1_p_grid(q);
                const int N_hat = has("Nhat") ? cfg.code.N_hat : 2 * K;
                for (double eB : eps_Bs) {
                    for (double eK : eps_Ks) {
                        for (double p : p_grid) {
                            CurvePoint pt;
                            pt.code = CodeParams{K, q, p, N_hat};
                            pt.chan = ChannelParams{eB, has("eps-e") ? cfg.chan.eps_E : eB + 0.25, eK};
                            pt.code.validate();
                            pt.chan.validate();
                            plan.points.push_back(pt);
                        }
                    }
                }
            }
        }
        return plan;
    }

    plan.title = "intercept probability gain versus N_hat";
    plan.budget = "about 6 min for the full panel; restrict with --K, --q or --eps-k-set";
    PanelChannel ch = gain_panel(cfg.figure);
    const double gap = ch.eps_E - ch.eps_B;
    if (has("eps-b")) {
        ch.eps_B = cfg.chan.eps_B;
        ch.eps_E = ch.eps_B + gap;
    }
    if (has("eps-e")) ch.eps_E = cfg.chan.eps_E;
    for (int K : Ks) {
        for (unsigned q : qs) {
            for (double eK : eps_Ks) {
                GainCurve curve;
                curve.im.code = CodeParams{K, q, 1.0 / static_cast<double>(q), K + 1};
                curve.im.chan = ChannelParams{ch.eps_B, ch.eps_E, eK};
                curve.im.D_hat = cfg.D_hat;
                curve.im.p_min = cfg.p_min;
                curve.im.p_max = cfg.p_max;
                curve.im.tol = cfg.tol;
                curve.im.max_iter = cfg.max_iter;
                curve.im.reading = cfg.reading;
                curve.im.mode = cfg.mode;
                curve.im.validate();
                if (has("Nhat-grid")) {
                    for (int n : cfg.N_grid) if (n > K) curve.N_grid.push_back(n);
                } else if (has("Nhat")) {
                    curve.N_grid = {cfg.code.N_hat};
                } else {
                    curve.N_grid = fig2_N_grid(K);
                }
                if (curve.N_grid.empty()) {
                    throw ConfigError("no N_hat grid point exceeds K=" + std::to_string(K));
                }
                for (int n : curve.N_grid) {
                    CodeParams c = curve.im.code;
                    c.N_hat = n;
                    c.validate();
                }
                plan.curves.push_back(std::move(curve));
            }
        }
    }
    return plan;
}

}  // namespace srlnc::cli
