#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "srlnc/params.hpp"
#include "srlnc/rank_stat.hpp"

namespace srlnc {

/// Which variant of the d_B = 0, delta = 0 rows to build.
///
/// `paper_exact` sends "ACK delivered and Eve innovative" to (0, d_E, 1) and
/// "ACK delivered, Eve not innovative" to (0, d_E - 1, 1), exactly as the
/// published transition list does. `consistent` swaps the two destinations so
/// that Eve's defect drops only when she actually receives an innovative
/// packet. The two modes differ only when eps_K < 1.
enum class TransitionMode { paper_exact, consistent };

[[nodiscard]] const char* to_string(TransitionMode mode) noexcept;
/// Accepts "paper-exact" and "consistent"; throws ConfigError otherwise.
[[nodiscard]] TransitionMode parse_transition_mode(const std::string& text);

/// (d_B, d_E, delta): Bob's defect, Eve's defect, and whether Alice has
/// received the ACK. States with delta = 1 and d_B > 0 are unreachable.
struct ChainState {
    int d_B = 0;
    int d_E = 0;
    bool ack = false;
    friend bool operator==(const ChainState&, const ChainState&) = default;
};

/// (K+1)(K+2) reachable states.
[[nodiscard]] constexpr int state_count(int K) noexcept { return (K + 1) * (K + 2); }

/// Label of the starting state (K, K, 0): (K+1)^2 + K.
[[nodiscard]] constexpr int initial_label(int K) noexcept { return (K + 1) * (K + 1) + K; }

/// delta = 1 -> d_E; delta = 0 -> (d_B + 1)(K + 1) + d_E.
/// Throws DomainError for unreachable or out-of-range states.
[[nodiscard]] int label_of(const ChainState& state, int K);

/// Inverse of label_of. Throws DomainError for labels outside [0, S).
[[nodiscard]] ChainState state_of(int label, int K);

/// Labels tau (K+1), tau = 0..K+1: every state in which Eve has decoded.
[[nodiscard]] std::vector<int> intercept_labels(int K);

struct Transition {
    int to = 0;
    double prob = 0.0;
};

/// Sparse row-stochastic transition matrix over the labelled states. Each
/// row stores at most six entries, the self-loop included.
class TransitionMatrix {
public:
    static constexpr std::size_t kMaxRowEntries = 6;

    TransitionMatrix(int K, TransitionMode mode);

    [[nodiscard]] int K() const noexcept { return K_; }
    [[nodiscard]] int size() const noexcept { return state_count(K_); }
    [[nodiscard]] TransitionMode mode() const noexcept { return mode_; }

    [[nodiscard]] std::span<const Transition> row(int label) const;

    /// P(from -> to), zero when no entry is stored.
    [[nodiscard]] double at(int from, int to) const;

    /// Number of negative bracket terms that were clamped to zero while
    /// building the matrix.
    [[nodiscard]] std::size_t clamped_brackets() const noexcept { return clamped_; }

    /// Throws NumericalIntegrityError unless every row sums to one within
    /// 1e-9, entries lie in [0,1], every off-diagonal destination has a
    /// smaller label, and exactly rows 0..K are absorbing.
    void verify() const;

    /// "row,col,prob" lines, one per stored entry, preceded by a header.
    void write_triplets(std::ostream& out) const;

    // Builder interface.
    void set_row(int label, std::span<const Transition> entries);
    void note_clamped() noexcept { ++clamped_; }

private:
    int K_;
    TransitionMode mode_;
    std::vector<std::array<Transition, kMaxRowEntries>> rows_;
    std::vector<std::size_t> counts_;
    std::size_t clamped_ = 0;
};

/// Builds the chain for the sparse law in `tables` and the given channel.
/// Throws ConfigError if tables and code disagree on (K, q, p) and
/// NumericalIntegrityError if a row cannot be made stochastic.
[[nodiscard]] TransitionMatrix build_chain(const CodeParams& code, const ChannelParams& chan,
                                           const RankTables& tables,
                                           TransitionMode mode = TransitionMode::paper_exact);

/// State distribution after `steps` transitions from (K, K, 0).
[[nodiscard]] std::vector<double> propagate(const TransitionMatrix& P, int steps);

/// Probability mass on Eve-decoded labels after N_hat steps.
[[nodiscard]] double intercept_probability(const TransitionMatrix& P, int N_hat);

/// Intercept probability after 0, 1, ..., N_hat steps.
[[nodiscard]] std::vector<double> intercept_curve(const TransitionMatrix& P, int N_hat);

/// Probability mass on Bob-decoded labels (d_B = 0, i.e. labels 0..2K+1)
/// after N_hat steps.
[[nodiscard]] double chain_delivery_probability(const TransitionMatrix& P, int N_hat);

/// Binomial-mixture delivery probability
///   D = sum_{n=K}^{N_hat} C(N_hat, n) (1-eps_B)^n eps_B^{N_hat-n} R_{n,K}.
/// Returns 0 when N_hat < K.
[[nodiscard]] double delivery_probability(int K, int N_hat, double eps_B, const RankTables& tables);
[[nodiscard]] double delivery_probability(const CodeParams& code, const ChannelParams& chan,
                                          const RankTables& tables);

struct ChainMetrics {
    double intercept = 0.0;        ///< from the chain
    double delivery = 0.0;         ///< binomial-mixture formula
    double chain_delivery = 0.0;   ///< from the chain, diagnostic
    std::size_t clamped_brackets = 0;
    std::vector<double> intercept_trace;  ///< per step, only when requested
};

/// Convenience: tables + chain + all three probabilities for one parameter set.
[[nodiscard]] ChainMetrics evaluate_chain(const CodeParams& code, const ChannelParams& chan,
                                          TransitionMode mode = TransitionMode::paper_exact,
                                          PiReading reading = PiReading::corrected,
                                          bool with_trace = false);

}  // namespace srlnc
