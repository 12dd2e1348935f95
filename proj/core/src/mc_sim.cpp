#include "srlnc/mc_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "srlnc/error.hpp"
#include "srlnc/rng.hpp"
#include "srlnc/sparse_code.hpp"

namespace srlnc {

void SimConfig::validate() const {
    code.validate();
    chan.validate();
    if (trials < 1) throw ConfigError("trials must be >= 1, got " + std::to_string(trials));
}

double ci_halfwidth(double phat, std::int64_t trials) {
    if (trials <= 0) return 0.0;
    return 1.96 * std::sqrt(phat * (1.0 - phat) / static_cast<double>(trials));
}

namespace {

struct Workspace {
    Workspace(const CodeParams& code) : bob(code.K, code.q), eve(code.K, code.q) {}
    DecoderState bob;
    DecoderState eve;
    CodingVector v;
};

TrialOutcome run_trial_in(const SimConfig& cfg, std::uint64_t trial_index, const GaloisField& field) {
    const CodeParams& code = cfg.code;
    Rng rng = trial_stream(cfg.base_seed, trial_index);
    Workspace ws(code);
    TrialOutcome out;

    for (int slot = 1; slot <= code.N_hat; ++slot) {
        sample_coding_vector_into(field, code.K, code.p, rng, ws.v);
        const bool bob_rx = unit_uniform(rng) >= cfg.chan.eps_B;
        const bool eve_rx = unit_uniform(rng) >= cfg.chan.eps_E;

        if (bob_rx) {
            ++out.n_B;
            ws.bob.absorb(ws.v);
        }
        bool stop = false;
        if (ws.bob.decoded()) stop = unit_uniform(rng) >= cfg.chan.eps_K;
        if (eve_rx && (!stop || cfg.count_eve_in_ack_slot)) {
            ++out.n_E;
            ws.eve.absorb(ws.v);
        }
        out.slots_used = slot;
        if (stop) break;
    }
    out.bob_decoded = ws.bob.decoded();
    out.eve_decoded = ws.eve.decoded();
    return out;
}

struct Tally {
    std::int64_t intercepts = 0;
    std::int64_t deliveries = 0;
    std::int64_t slots = 0;
    std::int64_t n_B = 0;
    std::int64_t n_E = 0;

    void add(const TrialOutcome& t) {
        intercepts += t.eve_decoded;
        deliveries += t.bob_decoded;
        slots += t.slots_used;
        n_B += t.n_B;
        n_E += t.n_E;
    }
    void merge(const Tally& o) {
        intercepts += o.intercepts;
        deliveries += o.deliveries;
        slots += o.slots;
        n_B += o.n_B;
        n_E += o.n_E;
    }
};

}  // namespace

TrialOutcome run_trial(const SimConfig& cfg, std::uint64_t trial_index) {
    cfg.validate();
    return run_trial_in(cfg, trial_index, GaloisField::of(cfg.code.q));
}

SimStats estimate(const SimConfig& cfg) {
    cfg.validate();
    const GaloisField& field = GaloisField::of(cfg.code.q);

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, cfg.trials));

    // Integer tallies make the reduction order irrelevant.
    constexpr std::int64_t kChunk = 256;
    std::atomic<std::int64_t> next{0};
    std::vector<Tally> partial(workers);
    auto work = [&](unsigned w) {
        Tally& tally = partial[w];
        for (;;) {
            const std::int64_t begin = next.fetch_add(kChunk);
            if (begin >= cfg.trials) break;
            const std::int64_t end = std::min(cfg.trials, begin + kChunk);
            for (std::int64_t i = begin; i < end; ++i) {
                tally.add(run_trial_in(cfg, static_cast<std::uint64_t>(i), field));
            }
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    Tally total;
    for (const auto& t : partial) total.merge(t);

    SimStats s;
    const auto n = static_cast<double>(cfg.trials);
    s.trials = cfg.trials;
    s.intercepts = total.intercepts;
    s.deliveries = total.deliveries;
    s.intercept_hat = static_cast<double>(total.intercepts) / n;
    s.delivery_hat = static_cast<double>(total.deliveries) / n;
    s.intercept_ci = ci_halfwidth(s.intercept_hat, cfg.trials);
    s.delivery_ci = ci_halfwidth(s.delivery_hat, cfg.trials);
    s.mean_slots = static_cast<double>(total.slots) / n;
    s.mean_n_B = static_cast<double>(total.n_B) / n;
    s.mean_n_E = static_cast<double>(total.n_E) / n;
    return s;
}

}  // namespace srlnc
