#pragma once

#include <cstdint>

#include "srlnc/params.hpp"

namespace srlnc {

/// One Monte Carlo experiment.
///
/// Slot timeline: Alice draws one coding vector, Bob and Eve each receive it
/// unless independently erased, and if Bob's decoder is full rank he sends an
/// ACK that survives with probability 1 - eps_K. A delivered ACK stops the
/// transmission after the current slot; Eve keeps whatever she received in
/// that slot.
struct SimConfig {
    CodeParams code;
    ChannelParams chan;
    std::int64_t trials = 20000;
    std::uint64_t base_seed = 1;
    unsigned threads = 0;  ///< 0 = hardware concurrency
    /// Experiment flag: when false, Eve's packet in the slot whose ACK gets
    /// through is discarded (ACK processed before Eve's reception).
    bool count_eve_in_ack_slot = true;

    void validate() const;
};

struct TrialOutcome {
    int slots_used = 0;
    bool bob_decoded = false;
    bool eve_decoded = false;
    int n_B = 0;  ///< packets Bob received (innovative or not)
    int n_E = 0;
    friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

struct SimStats {
    std::int64_t trials = 0;
    std::int64_t intercepts = 0;
    std::int64_t deliveries = 0;
    double intercept_hat = 0.0;
    double delivery_hat = 0.0;
    double intercept_ci = 0.0;  ///< 95% normal-approximation half-width
    double delivery_ci = 0.0;
    double mean_slots = 0.0;
    double mean_n_B = 0.0;
    double mean_n_E = 0.0;
};

/// 1.96 sqrt(phat (1 - phat) / trials).
[[nodiscard]] double ci_halfwidth(double phat, std::int64_t trials);

/// Deterministic in (cfg, trial_index): the trial's random stream is seeded
/// from splitmix64(base_seed) ^ trial_index.
[[nodiscard]] TrialOutcome run_trial(const SimConfig& cfg, std::uint64_t trial_index);

/// Runs trials 0..cfg.trials-1 on a worker pool. The result depends only on
/// cfg, never on the number of threads.
[[nodiscard]] SimStats estimate(const SimConfig& cfg);

}  // namespace srlnc
