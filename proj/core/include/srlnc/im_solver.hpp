#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "srlnc/intercept_chain.hpp"
#include "srlnc/mc_sim.hpp"
#include "srlnc/params.hpp"
#include "srlnc/rank_stat.hpp"

namespace srlnc {

/// Intercept minimisation: choose p in [p_min, p_max] minimising the
/// intercept probability subject to D_{N_hat}(p) >= D_hat. Because D is
/// nonincreasing in p and the intercept probability is (largely)
/// nonincreasing too, the optimum is the largest feasible p.
struct ImConfig {
    CodeParams code;        ///< code.p is ignored
    ChannelParams chan;
    double D_hat = 0.9;
    double p_min = 0.0;     ///< 0 selects 1/q
    double p_max = 0.95;
    double tol = 1e-6;      ///< on D
    int max_iter = 100;
    PiReading reading = PiReading::corrected;
    TransitionMode mode = TransitionMode::paper_exact;  ///< for the reported intercepts

    [[nodiscard]] double lower() const noexcept {
        return p_min > 0.0 ? p_min : 1.0 / static_cast<double>(code.q);
    }
    void validate() const;
};

enum class ImStatus { interior_root, saturated_at_pmax, infeasible };

[[nodiscard]] const char* to_string(ImStatus status) noexcept;

struct ImSolution {
    double p_star = 0.0;
    double D_at_p_star = 0.0;
    double I_at_p_star = 0.0;   ///< chain intercept at p_star
    double I_at_p_min = 0.0;    ///< chain intercept at the lower bound (classic RLNC by default)
    ImStatus status = ImStatus::infeasible;
    int iterations = 0;
    double bracket_width = 0.0;
};

using TablesFactory = std::function<RankTables(double p)>;

/// Default factory: RankTables(K, q, p, N_hat, cfg.reading).
[[nodiscard]] TablesFactory default_tables_factory(const ImConfig& cfg);

/// D_{N_hat}(p) for the configuration's code and channel.
[[nodiscard]] double im_delivery(const ImConfig& cfg, double p);

/// Samples D on 50 evenly spaced points of (p_min, p_max] and throws
/// NumericalIntegrityError if it increases anywhere. The lower end is
/// excluded: at p = 1/q the exact classic branch is used, and the sparse
/// approximation just above it is not continuous with it.
void check_delivery_monotone(const ImConfig& cfg, const TablesFactory& make);

/// Solves the problem by bisection. Infeasibility is reported through the
/// status, not thrown. Throws NumericalIntegrityError if D is found to be
/// non-monotone.
[[nodiscard]] ImSolution solve_im(const ImConfig& cfg);
[[nodiscard]] ImSolution solve_im(const ImConfig& cfg, const TablesFactory& make);

struct GainPoint {
    int N_hat = 0;
    ImSolution solution;
    bool feasible = false;
    SimStats classic;   ///< Monte Carlo at p = 1/q
    SimStats optimised; ///< Monte Carlo at p = p_star
    double gain = 0.0;  ///< classic.intercept_hat - optimised.intercept_hat
    double ci_low = 0.0;
    double ci_high = 0.0;
    [[nodiscard]] double relative_reduction() const noexcept {
        return classic.intercept_hat > 0.0 ? gain / classic.intercept_hat : 0.0;
    }
};

struct GainSweep {
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

/// Solves the problem for every N_hat in the grid and measures the intercept
/// probability at 1/q and at p_star by simulation. Infeasible points come
/// back with feasible = false and zero gain.
[[nodiscard]] std::vector<GainPoint> intercept_gain(const ImConfig& cfg, std::span<const int> N_hat_grid,
                                                    const GainSweep& sweep);

/// One point of the curve; the building block of intercept_gain.
[[nodiscard]] GainPoint intercept_gain_point(const ImConfig& cfg, int N_hat, const GainSweep& sweep);

}  // namespace srlnc
