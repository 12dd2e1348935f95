#include "srlnc/im_solver.hpp"

#include <cmath>
#include <sstream>

#include "srlnc/error.hpp"
#include "srlnc/rng.hpp"

namespace srlnc {

namespace {

constexpr double kMonotoneSlack = 1e-12;
constexpr double kBracketTol = 1e-9;
constexpr int kMonotoneGrid = 50;

double chain_intercept(const ImConfig& cfg, double p) {
    CodeParams code = cfg.code;
    code.p = p;
    const RankTables tables(code.K, code.q, p, code.N_hat, cfg.reading);
    return intercept_probability(build_chain(code, cfg.chan, tables, cfg.mode), code.N_hat);
}

}  // namespace

const char* to_string(ImStatus status) noexcept {
    switch (status) {
        case ImStatus::interior_root: return "interior-root";
        case ImStatus::saturated_at_pmax: return "saturated-at-pmax";
        case ImStatus::infeasible: return "infeasible";
    }
    return "?";
}

void ImConfig::validate() const {
    CodeParams probe = code;
    probe.p = 1.0 / static_cast<double>(code.q);
    probe.validate();
    chan.validate();
    const double lo = lower();
    validate_sparsity(lo, code.q);
    if (!(p_max > lo && p_max < 1.0)) {
        std::ostringstream os;
        os << "need 1/q <= p_min < p_max < 1 (p_min=" << lo << ", p_max=" << p_max << ")";
        throw ConfigError(os.str());
    }
    if (!(D_hat >= 0.0 && D_hat <= 1.0)) throw ConfigError("D_hat must lie in [0,1]");
    if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
    if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
}

TablesFactory default_tables_factory(const ImConfig& cfg) {
    const int K = cfg.code.K;
    const unsigned q = cfg.code.q;
    const int rows = cfg.code.N_hat;
    const PiReading reading = cfg.reading;
    return [=](double p) { return RankTables(K, q, p, rows, reading); };
}

double im_delivery(const ImConfig& cfg, double p) {
    const RankTables tables = default_tables_factory(cfg)(p);
    return delivery_probability(cfg.code.K, cfg.code.N_hat, cfg.chan.eps_B, tables);
}

void check_delivery_monotone(const ImConfig& cfg, const TablesFactory& make) {
    const double lo = cfg.lower();
    const double step = (cfg.p_max - lo) / kMonotoneGrid;
    double prev_p = 0.0;
    double prev_D = 0.0;
    for (int k = 1; k <= kMonotoneGrid; ++k) {
        const double p = k == kMonotoneGrid ? cfg.p_max : lo + k * step;
        const double D = delivery_probability(cfg.code.K, cfg.code.N_hat, cfg.chan.eps_B, make(p));
        if (k > 1 && D > prev_D + kMonotoneSlack) {
            std::ostringstream os;
            os.precision(12);
            os << "delivery probability increases from " << prev_D << " at p=" << prev_p << " to " << D
               << " at p=" << p << "; bisection needs a nonincreasing D(p), evaluate on a finer grid";
            throw NumericalIntegrityError(os.str());
        }
        prev_p = p;
        prev_D = D;
    }
}

ImSolution solve_im(const ImConfig& cfg) { return solve_im(cfg, default_tables_factory(cfg)); }

ImSolution solve_im(const ImConfig& cfg, const TablesFactory& make) {
    cfg.validate();
    auto D = [&](double p) {
        return delivery_probability(cfg.code.K, cfg.code.N_hat, cfg.chan.eps_B, make(p));
    };

    ImSolution sol;
    double lo = cfg.lower();
    double hi = cfg.p_max;
    const double D_lo0 = D(lo);
    sol.I_at_p_min = chain_intercept(cfg, lo);

    if (D_lo0 < cfg.D_hat) {
        sol.status = ImStatus::infeasible;
        sol.p_star = lo;
        sol.D_at_p_star = D_lo0;
        sol.I_at_p_star = sol.I_at_p_min;
        return sol;
    }
    const double D_hi0 = D(hi);
    if (D_hi0 >= cfg.D_hat) {
        sol.status = ImStatus::saturated_at_pmax;
        sol.p_star = hi;
        sol.D_at_p_star = D_hi0;
        sol.I_at_p_star = chain_intercept(cfg, hi);
        return sol;
    }

    check_delivery_monotone(cfg, make);

    double D_lo = D_lo0;
    double D_hi = D_hi0;
    bool lo_is_lower_bound = true;
    int iter = 0;
    while (iter < cfg.max_iter) {
        if (!lo_is_lower_bound && D_lo - cfg.D_hat <= cfg.tol && hi - lo <= kBracketTol) break;
        ++iter;
        const double mid = 0.5 * (lo + hi);
        const double D_mid = D(mid);
        const bool above_lo = !lo_is_lower_bound && D_mid > D_lo + kMonotoneSlack;
        if (above_lo || D_mid < D_hi - kMonotoneSlack) {
            std::ostringstream os;
            os.precision(12);
            os << "non-monotone bracket: D(" << lo << ")=" << D_lo << ", D(" << mid << ")=" << D_mid
               << ", D(" << hi << ")=" << D_hi << "; evaluate D(p) on a finer grid";
            throw NumericalIntegrityError(os.str());
        }
        if (D_mid >= cfg.D_hat) {
            lo = mid;
            D_lo = D_mid;
            lo_is_lower_bound = false;
        } else {
            hi = mid;
            D_hi = D_mid;
        }
    }

    sol.status = ImStatus::interior_root;
    sol.p_star = lo;
    sol.D_at_p_star = D_lo;
    sol.iterations = iter;
    sol.bracket_width = hi - lo;
    sol.I_at_p_star = chain_intercept(cfg, lo);
    return sol;
}

GainPoint intercept_gain_point(const ImConfig& cfg, int N_hat, const GainSweep& sweep) {
    ImConfig local = cfg;
    local.code.N_hat = N_hat;

    GainPoint point;
    point.N_hat = N_hat;
    point.solution = solve_im(local);
    if (point.solution.status == ImStatus::infeasible) return point;
    point.feasible = true;

    SimConfig sim;
    sim.chan = local.chan;
    sim.trials = sweep.trials;
    sim.threads = sweep.threads;

    sim.code = local.code;
    sim.code.p = 1.0 / static_cast<double>(local.code.q);
    sim.base_seed = derive_seed(sweep.seed, static_cast<std::uint64_t>(N_hat), 0);
    point.classic = estimate(sim);

    sim.code.p = point.solution.p_star;
    sim.base_seed = derive_seed(sweep.seed, static_cast<std::uint64_t>(N_hat), 1);
    point.optimised = estimate(sim);

    point.gain = point.classic.intercept_hat - point.optimised.intercept_hat;
    const double n = static_cast<double>(sweep.trials);
    const double var = point.classic.intercept_hat * (1 - point.classic.intercept_hat) / n +
                       point.optimised.intercept_hat * (1 - point.optimised.intercept_hat) / n;
    const double half = 1.96 * std::sqrt(var);
    point.ci_low = point.gain - half;
    point.ci_high = point.gain + half;
    return point;
}

std::vector<GainPoint> intercept_gain(const ImConfig& cfg, std::span<const int> N_hat_grid,
                                      const GainSweep& sweep) {
    std::vector<GainPoint> curve;
    curve.reserve(N_hat_grid.size());
    for (int N_hat : N_hat_grid) curve.push_back(intercept_gain_point(cfg, N_hat, sweep));
    return curve;
}

}  // namespace srlnc
