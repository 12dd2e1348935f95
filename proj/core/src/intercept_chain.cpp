#include "srlnc/intercept_chain.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "srlnc/error.hpp"

namespace srlnc {

const char* to_string(TransitionMode mode) noexcept {
    return mode == TransitionMode::paper_exact ? "paper-exact" : "consistent";
}

TransitionMode parse_transition_mode(const std::string& text) {
    if (text == "paper-exact") return TransitionMode::paper_exact;
    if (text == "consistent") return TransitionMode::consistent;
    throw ConfigError("unknown transition mode '" + text + "' (expected paper-exact or consistent)");
}

int label_of(const ChainState& s, int K) {
    if (s.d_B < 0 || s.d_B > K || s.d_E < 0 || s.d_E > K) {
        throw DomainError("defects must lie in [0, K]");
    }
    if (s.ack) {
        if (s.d_B != 0) {
            throw DomainError("state (d_B=" + std::to_string(s.d_B) +
                              ", delta=1) is unreachable: Bob only acknowledges after decoding");
        }
        return s.d_E;
    }
    return (s.d_B + 1) * (K + 1) + s.d_E;
}

ChainState state_of(int label, int K) {
    if (label < 0 || label >= state_count(K)) {
        throw DomainError("label " + std::to_string(label) + " outside [0, " +
                          std::to_string(state_count(K)) + ")");
    }
    if (label <= K) return {0, label, true};
    return {label / (K + 1) - 1, label % (K + 1), false};
}

std::vector<int> intercept_labels(int K) {
    std::vector<int> labels;
    for (int tau = 0; tau <= K + 1; ++tau) labels.push_back(tau * (K + 1));
    return labels;
}

TransitionMatrix::TransitionMatrix(int K, TransitionMode mode)
    : K_(K), mode_(mode), rows_(static_cast<std::size_t>(state_count(K))),
      counts_(static_cast<std::size_t>(state_count(K)), 0) {
    if (K < 1) throw ConfigError("generation size K must be >= 1");
}

std::span<const Transition> TransitionMatrix::row(int label) const {
    const auto i = static_cast<std::size_t>(label);
    return {rows_.at(i).data(), counts_.at(i)};
}

double TransitionMatrix::at(int from, int to) const {
    for (const auto& t : row(from)) {
        if (t.to == to) return t.prob;
    }
    return 0.0;
}

void TransitionMatrix::set_row(int label, std::span<const Transition> entries) {
    if (entries.size() > kMaxRowEntries) throw DomainError("too many transitions in one row");
    const auto i = static_cast<std::size_t>(label);
    std::copy(entries.begin(), entries.end(), rows_.at(i).begin());
    counts_[i] = entries.size();
}

void TransitionMatrix::verify() const {
    auto fail = [&](int label, const std::string& what) {
        const ChainState s = state_of(label, K_);
        std::ostringstream os;
        os << "transition row " << label << " (d_B=" << s.d_B << ", d_E=" << s.d_E
           << ", delta=" << s.ack << "): " << what << "; entries:";
        for (const auto& t : row(label)) os << ' ' << t.to << ':' << t.prob;
        throw NumericalIntegrityError(os.str());
    };
    for (int i = 0; i < size(); ++i) {
        double sum = 0.0;
        bool absorbing = false;
        for (const auto& t : row(i)) {
            if (!std::isfinite(t.prob) || t.prob < 0.0 || t.prob > 1.0) fail(i, "probability outside [0,1]");
            if (t.to > i) fail(i, "entry above the diagonal");
            if (t.to == i && t.prob == 1.0) absorbing = true;
            sum += t.prob;
        }
        if (std::abs(sum - 1.0) > 1e-9) fail(i, "row sums to " + std::to_string(sum));
        // Rows above K may still be pure self-loops (e.g. eps_B = eps_E = 1).
        if (i <= K_ && !(absorbing && row(i).size() == 1)) fail(i, "row should be absorbing");
    }
}

void TransitionMatrix::write_triplets(std::ostream& out) const {
    out << "row,col,prob\n";
    for (int i = 0; i < size(); ++i) {
        for (const auto& t : row(i)) out << i << ',' << t.to << ',' << t.prob << '\n';
    }
}

namespace {

class RowBuilder {
public:
    RowBuilder(TransitionMatrix& P, int label) : P_(P), label_(label) {}

    void add(int to, double prob) {
        if (prob == 0.0) return;
        entries_[n_++] = {to, prob};
    }

    void finish() {
        double out = 0.0;
        for (std::size_t k = 0; k < n_; ++k) out += entries_[k].prob;
        double self = 1.0 - out;
        if (self < 0.0 && self > -1e-12) self = 0.0;
        entries_[n_++] = {label_, self};
        P_.set_row(label_, std::span<const Transition>(entries_.data(), n_));
    }

private:
    TransitionMatrix& P_;
    int label_;
    std::array<Transition, TransitionMatrix::kMaxRowEntries> entries_{};
    std::size_t n_ = 0;
};

}  // namespace

TransitionMatrix build_chain(const CodeParams& code, const ChannelParams& chan,
                             const RankTables& tables, TransitionMode mode) {
    code.validate_law();
    chan.validate();
    if (tables.K() != code.K || tables.q() != code.q || tables.p() != code.p) {
        throw ConfigError("rank tables were built for a different (K, q, p)");
    }

    const int K = code.K;
    const double eB = chan.eps_B;
    const double eE = chan.eps_E;
    const double eK = chan.eps_K;
    const auto W = tables.innovation();
    // Innovation probability of a receiver whose defect is d (rank K - d).
    auto Wd = [&](int d) { return d > 0 ? W[static_cast<std::size_t>(K - d)] : 0.0; };

    TransitionMatrix P(K, mode);
    auto bracket = [&](double x) {
        if (x < 0.0) {
            P.note_clamped();
            return 0.0;
        }
        return x;
    };

    for (int i = 0; i < state_count(K); ++i) {
        RowBuilder row(P, i);
        if (i <= K) {
            row.finish();  // absorbing
            continue;
        }
        const ChainState s = state_of(i, K);
        const double WB = Wd(s.d_B);
        const double WE = Wd(s.d_E);
        const double Wmin = Wd(std::min(s.d_B, s.d_E));

        // Eve-only, Bob-only and joint defect reductions for d_B, d_E >= 1.
        // When the receiver with the larger defect moves alone, the joint
        // term is (1-eB)(1-eE)(W_larger - W_smaller), hence the other
        // receiver's success probability inside the bracket.
        auto horizontal = [&] {
            return s.d_B >= s.d_E ? eB * (1 - eE) * WE : (1 - eE) * bracket(WE - (1 - eB) * WB);
        };
        auto vertical = [&] {
            return s.d_E >= s.d_B ? eE * (1 - eB) * WB : (1 - eB) * bracket(WB - (1 - eE) * WE);
        };
        auto diagonal = [&] { return (1 - eB) * (1 - eE) * Wmin; };

        if (i == K + 1) {
            // (0, 0, 0): waiting for the ACK.
            row.add(i - K - 1, 1 - eK);
        } else if (i <= 2 * K + 1) {
            // (0, d_E, 0), d_E >= 1: Bob decoded, ACK retried every slot.
            const double eve_gain = (1 - eE) * WE;
            row.add(i - 1, eK * eve_gain);
            if (mode == TransitionMode::paper_exact) {
                row.add(i - K - 1, (1 - eK) * eve_gain);
                row.add(i - K - 2, (1 - eK) * (1 - eve_gain));
            } else {
                row.add(i - K - 2, (1 - eK) * eve_gain);
                row.add(i - K - 1, (1 - eK) * (1 - eve_gain));
            }
        } else if (i == 2 * (K + 1)) {
            // (1, 0, 0): Bob's decoding packet also carries the first ACK.
            row.add(i - 2 * K - 2, (1 - eK) * (1 - eB) * WB);
            row.add(i - K - 1, eK * (1 - eB) * WB);
        } else if (i <= 3 * K + 2) {
            // (1, d_E, 0), d_E >= 1.
            const double v = vertical();
            const double d = diagonal();
            row.add(i - 1, horizontal());
            row.add(i - K - 1, eK * v);
            row.add(i - K - 2, eK * d);
            row.add(i - 2 * K - 2, (1 - eK) * v);
            row.add(i - 2 * K - 3, (1 - eK) * d);
        } else if (i % (K + 1) == 0) {
            // (d_B >= 2, 0, 0): Eve done, only Bob moves.
            row.add(i - K - 1, (1 - eB) * WB);
        } else {
            // (d_B >= 2, d_E >= 1, 0).
            row.add(i - 1, horizontal());
            row.add(i - K - 1, vertical());
            row.add(i - K - 2, diagonal());
        }
        row.finish();
    }
    P.verify();
    return P;
}

std::vector<double> propagate(const TransitionMatrix& P, int steps) {
    const auto S = static_cast<std::size_t>(P.size());
    std::vector<double> x(S, 0.0), next(S, 0.0);
    x[static_cast<std::size_t>(initial_label(P.K()))] = 1.0;
    for (int n = 0; n < steps; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < S; ++i) {
            if (x[i] == 0.0) continue;
            for (const auto& t : P.row(static_cast<int>(i))) next[static_cast<std::size_t>(t.to)] += x[i] * t.prob;
        }
        x.swap(next);
    }
    return x;
}

namespace {

double eve_mass(const std::vector<double>& x, int K) {
    double sum = 0.0;
    for (int label : intercept_labels(K)) sum += x[static_cast<std::size_t>(label)];
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

double intercept_probability(const TransitionMatrix& P, int N_hat) {
    if (N_hat < 0) throw DomainError("N_hat must be >= 0");
    return eve_mass(propagate(P, N_hat), P.K());
}

std::vector<double> intercept_curve(const TransitionMatrix& P, int N_hat) {
    if (N_hat < 0) throw DomainError("N_hat must be >= 0");
    const auto S = static_cast<std::size_t>(P.size());
    std::vector<double> curve;
    curve.reserve(static_cast<std::size_t>(N_hat) + 1);
    std::vector<double> x(S, 0.0), next(S, 0.0);
    x[static_cast<std::size_t>(initial_label(P.K()))] = 1.0;
    curve.push_back(eve_mass(x, P.K()));
    for (int n = 0; n < N_hat; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < S; ++i) {
            if (x[i] == 0.0) continue;
            for (const auto& t : P.row(static_cast<int>(i))) next[static_cast<std::size_t>(t.to)] += x[i] * t.prob;
        }
        x.swap(next);
        curve.push_back(eve_mass(x, P.K()));
    }
    return curve;
}

double chain_delivery_probability(const TransitionMatrix& P, int N_hat) {
    if (N_hat < 0) throw DomainError("N_hat must be >= 0");
    const auto x = propagate(P, N_hat);
    double sum = 0.0;
    for (int label = 0; label <= 2 * P.K() + 1; ++label) sum += x[static_cast<std::size_t>(label)];
    return std::clamp(sum, 0.0, 1.0);
}

double delivery_probability(int K, int N_hat, double eps_B, const RankTables& tables) {
    if (tables.K() != K) throw ConfigError("rank tables were built for a different K");
    if (N_hat < K) return 0.0;
    double sum = 0.0;
    for (int n = K; n <= N_hat; ++n) {
        const double weight = binomial_pmf(N_hat, n, 1.0 - eps_B);
        if (weight == 0.0) continue;
        const double R = n <= tables.max_rows()
                             ? tables.full_rank_prob(n, K)
                             : full_rank_prob(n, K, tables.p(), tables.q(), tables.reading());
        sum += weight * R;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double delivery_probability(const CodeParams& code, const ChannelParams& chan, const RankTables& tables) {
    if (tables.q() != code.q || tables.p() != code.p) {
        throw ConfigError("rank tables were built for a different (q, p)");
    }
    return delivery_probability(code.K, code.N_hat, chan.eps_B, tables);
}

ChainMetrics evaluate_chain(const CodeParams& code, const ChannelParams& chan, TransitionMode mode,
                            PiReading reading, bool with_trace) {
    code.validate_law();
    chan.validate();
    if (code.N_hat < 0) throw ConfigError("N_hat must be >= 0");
    const RankTables tables(code.K, code.q, code.p, code.N_hat, reading);
    const TransitionMatrix P = build_chain(code, chan, tables, mode);
    ChainMetrics m;
    const auto x = propagate(P, code.N_hat);
    m.intercept = eve_mass(x, code.K);
    double bob = 0.0;
    for (int label = 0; label <= 2 * code.K + 1; ++label) bob += x[static_cast<std::size_t>(label)];
    m.chain_delivery = std::clamp(bob, 0.0, 1.0);
    m.delivery = delivery_probability(code, chan, tables);
    m.clamped_brackets = P.clamped_brackets();
    if (with_trace) m.intercept_trace = intercept_curve(P, code.N_hat);
    return m;
}

}  // namespace srlnc
