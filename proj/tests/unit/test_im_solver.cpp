#include <gtest/gtest.h>

#include "grid_search.hpp"
#include "srlnc/error.hpp"
#include "srlnc/im_solver.hpp"

using namespace srlnc;

namespace {

ImConfig base(int K, unsigned q, int N, double eB, double D_hat) {
    ImConfig cfg;
    cfg.code = {K, q, 1.0 / q, N};
    cfg.chan = {eB, eB + 0.15, 1.0};
    cfg.D_hat = D_hat;
    return cfg;
}

}  // namespace

TEST(SolveIm, VacuousConstraintSaturates) {
    const auto sol = solve_im(base(5, 2, 17, 0.05, 0.0));
    EXPECT_EQ(sol.status, ImStatus::saturated_at_pmax);
    EXPECT_EQ(sol.p_star, 0.95);
    EXPECT_STREQ(to_string(sol.status), "saturated-at-pmax");
}

TEST(SolveIm, CertainDeliveryIsInfeasible) {
    const auto sol = solve_im(base(5, 2, 17, 0.05, 1.0));
    EXPECT_EQ(sol.status, ImStatus::infeasible);
    EXPECT_STREQ(to_string(sol.status), "infeasible");
}

TEST(SolveIm, MatchesGridSearch) {
    const auto cfg = base(5, 2, 17, 0.05, 0.99);
    const auto sol = solve_im(cfg);
    ASSERT_EQ(sol.status, ImStatus::interior_root);
    const auto grid = oracle::largest_feasible(0.5, cfg.p_max, 1e-4, [&](double p) {
        return im_delivery(cfg, p) >= cfg.D_hat;
    });
    ASSERT_TRUE(grid.has_value());
    EXPECT_NEAR(sol.p_star, *grid, 2e-4);
}

TEST(SolveIm, RootProperties) {
    for (unsigned q : {2u, 16u}) {
        for (double D_hat : {0.8, 0.9, 0.99}) {
            const auto cfg = base(8, q, 20, 0.05, D_hat);
            const auto sol = solve_im(cfg);
            if (sol.status != ImStatus::interior_root) continue;
            EXPECT_GE(sol.D_at_p_star, D_hat - cfg.tol);
            EXPECT_LE(sol.D_at_p_star - D_hat, cfg.tol);
            EXPECT_LT(im_delivery(cfg, std::min(sol.p_star + 0.01, cfg.p_max)), D_hat);
            EXPECT_LT(im_delivery(cfg, sol.p_star + 2 * std::max(sol.bracket_width, 1e-9)), D_hat + 1e-12);
            EXPECT_LE(sol.iterations, 60);
            EXPECT_GT(sol.I_at_p_min, 0.0);
        }
    }
}

TEST(SolveIm, DetectsNonMonotoneDelivery) {
    const auto cfg = base(5, 2, 17, 0.05, 0.5);
    const TablesFactory make = [&](double p) {
        const bool dip = (p > 0.6 && p < 0.7) || p > 0.9;
        return RankTables(5, 2, dip ? 0.95 : 0.5, 17);
    };
    EXPECT_THROW((void)solve_im(cfg, make), NumericalIntegrityError);
}

TEST(SolveIm, ValidatesConfig) {
    auto cfg = base(5, 2, 17, 0.05, 0.9);
    cfg.p_max = 0.5;
    EXPECT_THROW((void)solve_im(cfg), ConfigError);
    cfg = base(5, 2, 17, 0.05, 1.5);
    EXPECT_THROW((void)solve_im(cfg), ConfigError);
    cfg = base(5, 2, 17, 0.05, 0.9);
    cfg.tol = 0.0;
    EXPECT_THROW((void)solve_im(cfg), ConfigError);
    cfg = base(5, 2, 5, 0.05, 0.9);
    EXPECT_THROW((void)solve_im(cfg), ConfigError);
    cfg = base(5, 2, 17, 0.05, 0.9);
    cfg.p_min = 0.3;
    EXPECT_THROW((void)solve_im(cfg), ConfigError);
}

TEST(SolveIm, CustomLowerBound) {
    auto cfg = base(5, 2, 17, 0.05, 0.99);
    cfg.p_min = 0.55;
    const auto sol = solve_im(cfg);
    EXPECT_EQ(sol.status, ImStatus::interior_root);
    EXPECT_GE(sol.p_star, 0.55);
}

TEST(InterceptGain, DeafEavesdropperHasNoGain) {
    auto cfg = base(5, 2, 17, 0.05, 0.9);
    cfg.chan.eps_E = 1.0;
    const std::vector<int> grid{10, 17};
    for (const auto& g : intercept_gain(cfg, grid, {500, 3, 0})) {
        EXPECT_TRUE(g.feasible);
        EXPECT_EQ(g.gain, 0.0);
        EXPECT_EQ(g.relative_reduction(), 0.0);
    }
}

TEST(InterceptGain, InfeasiblePointsAreGaps) {
    const auto cfg = base(5, 2, 17, 0.05, 0.99);
    const auto g = intercept_gain_point(cfg, 6, {500, 3, 0});
    EXPECT_FALSE(g.feasible);
    EXPECT_EQ(g.gain, 0.0);
    EXPECT_EQ(g.classic.trials, 0);
}

TEST(InterceptGain, DeterministicAndConsistent) {
    const auto cfg = base(5, 2, 17, 0.05, 0.9);
    const auto a = intercept_gain_point(cfg, 14, {2000, 9, 1});
    const auto b = intercept_gain_point(cfg, 14, {2000, 9, 4});
    EXPECT_EQ(a.gain, b.gain);
    EXPECT_DOUBLE_EQ(a.gain, a.classic.intercept_hat - a.optimised.intercept_hat);
    EXPECT_LT(a.ci_low, a.gain);
    EXPECT_GT(a.ci_high, a.gain);
    EXPECT_EQ(a.classic.trials, 2000);
}
