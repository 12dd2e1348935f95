#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "srlnc/im_solver.hpp"

namespace srlnc::cli {

/// One theory-versus-simulation point of Fig. 1.
struct CurvePoint {
    CodeParams code;
    ChannelParams chan;
};

/// One gain curve of Fig. 2: an optimisation problem swept over N_hat.
struct GainCurve {
    ImConfig im;
    std::vector<int> N_grid;
};

struct FigurePlan {
    std::string figure;
    std::string title;
    std::string budget;  ///< rough single-core runtime at the default trial count
    std::vector<CurvePoint> points;
    std::vector<GainCurve> curves;
    [[nodiscard]] bool is_gain() const noexcept { return !curves.empty(); }
};

/// "1a", "1b", "2a", "2b", "2c", "2d".
[[nodiscard]] const std::vector<std::string>& figure_names();

/// Expands the built-in preset for cfg.figure. Explicit settings narrow or
/// override it: K, q and eps-b replace the swept sets, Nhat, p-grid,
/// Nhat-grid and eps-k-set replace the grids, eps-e replaces the offset
/// rule. Every resulting parameter set is validated.
[[nodiscard]] FigurePlan expand_figure(const ExperimentConfig& cfg);

/// Default trial count of a figure (2e4 for Fig. 1, 1e4 per leg for Fig. 2).
[[nodiscard]] long default_trials(const std::string& figure);

}  // namespace srlnc::cli
