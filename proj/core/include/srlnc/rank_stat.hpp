#pragma once

#include <span>
#include <vector>

namespace srlnc {

/// How the pi recursion is indexed.
///
/// The published recursion reads
///   pi_{l,r} = rho_{c,r} - sum_{s=1}^{l-1} C(l-1,s) rho_{s,l} pi_{l-s,r}
/// which has no free `c` and an inner `rho_{s,l}` whose row count is the
/// order l. `corrected` uses rho_{l,r} and rho_{s,r} (inclusion-exclusion
/// over the columns that vanish); it is the default because it agrees best
/// with exhaustive enumeration. The other two keep the printed subscripts.
enum class PiReading {
    corrected,       ///< rho_{l,r} - sum C(l-1,s) rho_{s,r} pi_{l-s,r}
    inner_verbatim,  ///< rho_{l,r} - sum C(l-1,s) rho_{s,l} pi_{l-s,r}
    printed,         ///< rho_{c,r} - sum C(l-1,s) rho_{s,l} pi_{l-s,r}, c = matrix columns
};

[[nodiscard]] const char* to_string(PiReading reading) noexcept;

/// C(n,k) in floating point: exact integer arithmetic for n < 60, log-gamma above.
[[nodiscard]] double binomial(int n, int k);

/// P[Binomial(n, prob) = k], stable for large n and exact at prob in {0,1}.
[[nodiscard]] double binomial_pmf(int n, int k, double prob);

/// Probability that a fixed all-nonzero combination of c i.i.d. sparse
/// columns of height r vanishes:
///   rho_{c,r} = [ (1 + (q-1) lambda^c) / q ]^r,  lambda = (q p - 1)/(q - 1).
/// rho_{0,r} = rho_{c,0} = 1. Throws ConfigError for invalid p, q and
/// DomainError for negative c or r.
[[nodiscard]] double rho(int c, int r, double p, unsigned q);

/// Exact probability that a uniform r x c matrix over F_q has rank c:
/// prod_{i=0}^{c-1} (1 - q^{i-r}).
[[nodiscard]] double classic_full_rank_prob(int r, int c, unsigned q);

/// Exact innovation probability of classic RLNC at rank t: 1 - q^{t-K}.
[[nodiscard]] double classic_innovation_probability(int t, int K, unsigned q);

/// Sparse full-rank approximation for an r x c matrix (r >= c), always the
/// exponential formula, even at p = 1/q:
///   R_{r,c} ~ (1-p^r)^c exp(-sum_{l=2}^{c} C(c,l) pi_{l,r} / (1-p^r)^l)
/// Clamped to [0,1].
[[nodiscard]] double sparse_full_rank_approx(int r, int c, double p, unsigned q,
                                             PiReading reading = PiReading::corrected);

/// R_{r,c}: the exact classic product at p = 1/q, sparse_full_rank_approx
/// otherwise. Throws DomainError when r < c or c < 0.
[[nodiscard]] double full_rank_prob(int r, int c, double p, unsigned q,
                                    PiReading reading = PiReading::corrected);

/// Memoised rank statistics for one sparse law (K, q, p).
///
/// Holds rho_{c,r} and pi_{l,r} for 0 <= c, l <= K and 0 <= r <= max_rows,
/// plus the innovation probabilities W_0..W_{K-1}. Everything is computed in
/// the constructor; the object is immutable afterwards.
class RankTables {
public:
    /// max_rows < K is raised to K. Throws ConfigError on invalid (K, q, p).
    RankTables(int K, unsigned q, double p, int max_rows = 0,
               PiReading reading = PiReading::corrected);

    [[nodiscard]] int K() const noexcept { return K_; }
    [[nodiscard]] unsigned q() const noexcept { return q_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] int max_rows() const noexcept { return max_rows_; }
    [[nodiscard]] PiReading reading() const noexcept { return reading_; }
    [[nodiscard]] bool is_classic() const noexcept { return classic_; }

    [[nodiscard]] double rho(int c, int r) const;

    /// pi_{l,r}. Under PiReading::printed the value also depends on the
    /// column count of the matrix being evaluated, passed as `columns`.
    [[nodiscard]] double pi(int ell, int r, int columns = 0) const;

    /// W_t, probability that a fresh coding vector raises the rank of a
    /// decoding matrix holding t independent vectors. Exact 1 - q^{t-K} at
    /// p = 1/q. Throws DomainError unless 0 <= t < K.
    [[nodiscard]] double innovation_probability(int t) const;

    /// W_0 .. W_{K-1}.
    [[nodiscard]] std::span<const double> innovation() const noexcept { return W_; }

    /// R_{r,c} for c <= K, c <= r <= max_rows.
    [[nodiscard]] double full_rank_prob(int r, int c) const;

private:
    [[nodiscard]] std::size_t at(int a, int r) const noexcept {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(max_rows_ + 1) +
               static_cast<std::size_t>(r);
    }
    [[nodiscard]] double pi_printed(int ell, int r, int columns) const;

    int K_;
    unsigned q_;
    double p_;
    int max_rows_;
    PiReading reading_;
    bool classic_;
    std::vector<double> rho_;  // (K+1) x (max_rows+1)
    std::vector<double> pi_;   // (K+1) x (max_rows+1), row 0 unused
    std::vector<double> W_;
};

}  // namespace srlnc
