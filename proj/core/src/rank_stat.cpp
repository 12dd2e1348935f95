#include "srlnc/rank_stat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "srlnc/error.hpp"
#include "srlnc/params.hpp"

namespace srlnc {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double sparsity_lambda(double p, unsigned q) {
    const double qd = static_cast<double>(q);
    return (qd * p - 1.0) / (qd - 1.0);
}

double rho_unchecked(int c, int r, double lambda, unsigned q) {
    if (c == 0 || r == 0) return 1.0;
    const double qd = static_cast<double>(q);
    const double base = (1.0 + (qd - 1.0) * std::pow(lambda, c)) / qd;
    return std::pow(base, r);
}

// pi_{l,r} for l = 1..L at a single row count r; `reading` must not be printed.
std::vector<double> pi_column(int L, int r, double lambda, unsigned q, PiReading reading) {
    std::vector<double> pi(static_cast<std::size_t>(L) + 1, 0.0);
    if (L >= 1) pi[1] = rho_unchecked(1, r, lambda, q);
    for (int l = 2; l <= L; ++l) {
        double acc = rho_unchecked(l, r, lambda, q);
        for (int s = 1; s < l; ++s) {
            const int inner_rows = reading == PiReading::corrected ? r : l;
            acc -= binomial(l - 1, s) * rho_unchecked(s, inner_rows, lambda, q) *
                   pi[static_cast<std::size_t>(l - s)];
        }
        pi[static_cast<std::size_t>(l)] = acc;
    }
    return pi;
}

std::vector<double> pi_column_printed(int L, int r, int columns, double lambda, unsigned q) {
    std::vector<double> pi(static_cast<std::size_t>(L) + 1, 0.0);
    if (L >= 1) pi[1] = rho_unchecked(1, r, lambda, q);
    for (int l = 2; l <= L; ++l) {
        double acc = rho_unchecked(columns, r, lambda, q);
        for (int s = 1; s < l; ++s) {
            acc -= binomial(l - 1, s) * rho_unchecked(s, l, lambda, q) * pi[static_cast<std::size_t>(l - s)];
        }
        pi[static_cast<std::size_t>(l)] = acc;
    }
    return pi;
}

}  // namespace

const char* to_string(PiReading reading) noexcept {
    switch (reading) {
        case PiReading::corrected: return "corrected";
        case PiReading::inner_verbatim: return "inner-verbatim";
        case PiReading::printed: return "printed";
    }
    return "?";
}

double binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    if (n < 60) {
        std::uint64_t result = 1;
        for (int i = 0; i < k; ++i) {
            result = result * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
        }
        return static_cast<double>(result);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double binomial_pmf(int n, int k, double prob) {
    if (k < 0 || k > n) return 0.0;
    if (prob <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (prob >= 1.0) return k == n ? 1.0 : 0.0;
    if (n < 60) {
        return binomial(n, k) * std::pow(prob, k) * std::pow(1.0 - prob, n - k);
    }
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_c + k * std::log(prob) + (n - k) * std::log1p(-prob));
}

double rho(int c, int r, double p, unsigned q) {
    validate_sparsity(p, q);
    if (c < 0 || r < 0) throw DomainError("rho requires c >= 0 and r >= 0");
    return rho_unchecked(c, r, sparsity_lambda(p, q), q);
}

double classic_full_rank_prob(int r, int c, unsigned q) {
    if (c < 0 || r < c) {
        throw DomainError("full-rank probability needs r >= c >= 0 (r=" + std::to_string(r) +
                          ", c=" + std::to_string(c) + ")");
    }
    const double qd = static_cast<double>(q);
    double prod = 1.0;
    for (int i = 0; i < c; ++i) prod *= 1.0 - std::pow(qd, i - r);
    return prod;
}

double classic_innovation_probability(int t, int K, unsigned q) {
    if (t < 0 || t >= K) {
        throw DomainError("innovation probability needs 0 <= t < K (t=" + std::to_string(t) +
                          ", K=" + std::to_string(K) + ")");
    }
    return 1.0 - std::pow(static_cast<double>(q), t - K);
}

double sparse_full_rank_approx(int r, int c, double p, unsigned q, PiReading reading) {
    validate_sparsity(p, q);
    if (c < 0 || r < c) {
        throw DomainError("full-rank probability needs r >= c >= 0 (r=" + std::to_string(r) +
                          ", c=" + std::to_string(c) + ")");
    }
    if (c == 0) return 1.0;
    const double lambda = sparsity_lambda(p, q);
    const auto pi = reading == PiReading::printed ? pi_column_printed(c, r, c, lambda, q)
                                                  : pi_column(c, r, lambda, q, reading);
    const double nonzero = 1.0 - std::pow(p, r);
    double exponent = 0.0;
    for (int l = 2; l <= c; ++l) {
        exponent += binomial(c, l) * pi[static_cast<std::size_t>(l)] / std::pow(nonzero, l);
    }
    return clamp01(std::pow(nonzero, c) * std::exp(-exponent));
}

double full_rank_prob(int r, int c, double p, unsigned q, PiReading reading) {
    validate_sparsity(p, q);
    if (p == 1.0 / static_cast<double>(q)) return classic_full_rank_prob(r, c, q);
    return sparse_full_rank_approx(r, c, p, q, reading);
}

RankTables::RankTables(int K, unsigned q, double p, int max_rows, PiReading reading)
    : K_(K), q_(q), p_(p), max_rows_(std::max(K, max_rows)), reading_(reading) {
    if (K < 1) throw ConfigError("generation size K must be >= 1, got " + std::to_string(K));
    validate_sparsity(p, q);
    classic_ = p == 1.0 / static_cast<double>(q);

    const double lambda = sparsity_lambda(p, q);
    const auto cells = static_cast<std::size_t>(K_ + 1) * static_cast<std::size_t>(max_rows_ + 1);
    rho_.assign(cells, 1.0);
    pi_.assign(cells, 0.0);
    for (int c = 0; c <= K_; ++c) {
        for (int r = 0; r <= max_rows_; ++r) rho_[at(c, r)] = rho_unchecked(c, r, lambda, q);
    }
    if (reading_ != PiReading::printed) {
        for (int r = 0; r <= max_rows_; ++r) {
            const auto column = pi_column(K_, r, lambda, q, reading_);
            for (int l = 1; l <= K_; ++l) pi_[at(l, r)] = column[static_cast<std::size_t>(l)];
        }
    }

    W_.resize(static_cast<std::size_t>(K_));
    const double nonzero = 1.0 - std::pow(p, K_);
    for (int t = 0; t < K_; ++t) {
        if (classic_) {
            W_[static_cast<std::size_t>(t)] = classic_innovation_probability(t, K_, q);
            continue;
        }
        double exponent = 0.0;
        for (int l = 2; l <= t + 1; ++l) {
            exponent += binomial(t, l - 1) * pi(l, K_, t + 1) / std::pow(nonzero, l);
        }
        W_[static_cast<std::size_t>(t)] = clamp01(nonzero * std::exp(-exponent));
    }
}

double RankTables::rho(int c, int r) const {
    if (c < 0 || c > K_ || r < 0 || r > max_rows_) {
        throw DomainError("rho(" + std::to_string(c) + "," + std::to_string(r) +
                          ") outside the tabulated range");
    }
    return rho_[at(c, r)];
}

double RankTables::pi_printed(int ell, int r, int columns) const {
    return pi_column_printed(ell, r, columns, sparsity_lambda(p_, q_), q_)[static_cast<std::size_t>(ell)];
}

double RankTables::pi(int ell, int r, int columns) const {
    if (ell < 1 || ell > K_ || r < 0 || r > max_rows_) {
        throw DomainError("pi(" + std::to_string(ell) + "," + std::to_string(r) +
                          ") outside the tabulated range");
    }
    if (reading_ == PiReading::printed) {
        if (columns < 1 || columns > K_) {
            throw DomainError("printed pi reading needs the matrix column count");
        }
        return pi_printed(ell, r, columns);
    }
    return pi_[at(ell, r)];
}

double RankTables::innovation_probability(int t) const {
    if (t < 0 || t >= K_) {
        throw DomainError("innovation probability needs 0 <= t < K (t=" + std::to_string(t) +
                          ", K=" + std::to_string(K_) + "); the matrix is already full rank");
    }
    return W_[static_cast<std::size_t>(t)];
}

double RankTables::full_rank_prob(int r, int c) const {
    if (c < 0 || r < c) {
        throw DomainError("full-rank probability needs r >= c >= 0 (r=" + std::to_string(r) +
                          ", c=" + std::to_string(c) + ")");
    }
    if (c > K_ || r > max_rows_) {
        throw DomainError("R(" + std::to_string(r) + "," + std::to_string(c) +
                          ") outside the tabulated range");
    }
    if (classic_) return classic_full_rank_prob(r, c, q_);
    if (c == 0) return 1.0;
    const double nonzero = 1.0 - std::pow(p_, r);
    double exponent = 0.0;
    for (int l = 2; l <= c; ++l) {
        exponent += binomial(c, l) * pi(l, r, c) / std::pow(nonzero, l);
    }
    return clamp01(std::pow(nonzero, c) * std::exp(-exponent));
}

}  // namespace srlnc
