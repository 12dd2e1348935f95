#pragma once

#include <string>

namespace srlnc {

/// Sparse RLNC code configuration.
struct CodeParams {
    int K = 20;           ///< generation size (source packets)
    unsigned q = 2;       ///< field order, 2^m with 1 <= m <= 8
    double p = 0.5;       ///< probability that a coding coefficient is zero
    int N_hat = 40;       ///< transmission budget, must exceed K

    /// p == 1/q, i.e. classic (dense) RLNC. Exact comparison: 1/q is a
    /// dyadic rational and representable.
    [[nodiscard]] bool is_classic() const noexcept { return p == 1.0 / static_cast<double>(q); }

    /// Throws ConfigError on K < 1, bad q, p outside [1/q, 1) or N_hat <= K.
    void validate() const;

    /// Same as validate() minus the N_hat check; used by the analytical
    /// rank statistics which do not depend on the transmission budget.
    void validate_law() const;
};

/// Packet erasure probabilities of the broadcast and feedback channels.
struct ChannelParams {
    double eps_B = 0.01;  ///< Bob
    double eps_E = 0.26;  ///< Eve
    double eps_K = 1.0;   ///< ACK from Bob to Alice

    /// Requires 0 <= eps_B <= eps_E <= 1 and 0 <= eps_K <= 1.
    void validate() const;
};

/// Validates p in [1/q, 1) and q; shared by every entry point taking a raw
/// sparsity value.
void validate_sparsity(double p, unsigned q);

[[nodiscard]] std::string describe(const CodeParams& code);
[[nodiscard]] std::string describe(const ChannelParams& chan);

}  // namespace srlnc
