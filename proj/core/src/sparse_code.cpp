#include "srlnc/sparse_code.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "srlnc/error.hpp"

namespace srlnc {

bool CodingVector::is_zero() const noexcept {
    return std::all_of(coefficients.begin(), coefficients.end(), [](Symbol s) { return s == 0; });
}

void sample_coding_vector_into(const GaloisField& field, int K, double p, Rng& rng,
                               CodingVector& out) {
    const unsigned nonzero = field.order() - 1;
    out.coefficients.resize(static_cast<std::size_t>(K));
    for (auto& g : out.coefficients) {
        if (unit_uniform(rng) < p) {
            g = 0;
        } else if (nonzero == 1) {
            g = 1;
        } else {
            g = static_cast<Symbol>(1 + rng() % nonzero);
        }
    }
}

CodingVector sample_coding_vector(int K, unsigned q, double p, Rng& rng) {
    if (K < 1) throw ConfigError("generation size K must be >= 1");
    validate_sparsity(p, q);
    CodingVector v;
    sample_coding_vector_into(GaloisField::of(q), K, p, rng, v);
    return v;
}

CodingVector sample_coding_vector(const CodeParams& params, Rng& rng) {
    return sample_coding_vector(params.K, params.q, params.p, rng);
}

DecoderState::DecoderState(int K, unsigned q, std::size_t payload_size)
    : K_(K), field_(&GaloisField::of(q)), payload_size_(payload_size) {
    if (K < 1) throw ConfigError("generation size K must be >= 1, got " + std::to_string(K));
    const auto k = static_cast<std::size_t>(K);
    row_of_col_.assign(k, -1);
    pivot_col_.reserve(k);
    if (q == 2) {
        words_ = (k + 63) / 64;
        bits_.reserve(k * words_);
        scratch_bits_.resize(words_);
    } else {
        symbols_.reserve(k * k);
        scratch_symbols_.resize(k);
    }
    payloads_.reserve(k * payload_size_);
    scratch_payload_.resize(payload_size_);
}

void DecoderState::check_vector(const CodingVector& v) const {
    if (v.size() != static_cast<std::size_t>(K_)) {
        throw DomainError("coding vector has length " + std::to_string(v.size()) + ", expected K=" +
                          std::to_string(K_));
    }
    for (Symbol s : v.coefficients) {
        if (!field_->contains(s)) {
            throw DomainError("coefficient " + std::to_string(s) + " outside GF(" +
                              std::to_string(field_->order()) + ")");
        }
    }
}

bool DecoderState::absorb(const CodingVector& v) {
    check_vector(v);
    if (payload_size_ != 0) {
        throw DomainError("decoder tracks payloads; use absorb(v, payload)");
    }
    return absorb_impl(v, {});
}

bool DecoderState::absorb(const CodingVector& v, std::span<const Symbol> payload) {
    check_vector(v);
    if (payload.size() != payload_size_) {
        throw DomainError("payload has length " + std::to_string(payload.size()) + ", expected " +
                          std::to_string(payload_size_));
    }
    return absorb_impl(v, payload);
}

bool DecoderState::absorb_impl(const CodingVector& v, std::span<const Symbol> payload) {
    if (rank_ == K_) return false;
    return field_->order() == 2 ? absorb_binary(v, payload) : absorb_symbols(v, payload);
}

bool DecoderState::absorb_binary(const CodingVector& v, std::span<const Symbol> payload) {
    auto& x = scratch_bits_;
    std::fill(x.begin(), x.end(), 0);
    for (int c = 0; c < K_; ++c) {
        if (v.coefficients[static_cast<std::size_t>(c)] != 0) {
            x[static_cast<std::size_t>(c) / 64] |= std::uint64_t{1} << (c % 64);
        }
    }
    std::copy(payload.begin(), payload.end(), scratch_payload_.begin());

    auto row_bits = [&](int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; };
    auto row_payload = [&](int r) {
        return std::span<Symbol>(payloads_.data() + static_cast<std::size_t>(r) * payload_size_,
                                 payload_size_);
    };

    // Rows are zero at every other pivot, so one sweep reduces x fully.
    for (int r = 0; r < rank_; ++r) {
        const int c = pivot_col_[static_cast<std::size_t>(r)];
        if (x[static_cast<std::size_t>(c) / 64] >> (c % 64) & 1u) {
            const std::uint64_t* row = row_bits(r);
            for (std::size_t w = 0; w < words_; ++w) x[w] ^= row[w];
            field_->axpy(scratch_payload_, 1, row_payload(r));
        }
    }

    int pivot = -1;
    for (std::size_t w = 0; w < words_; ++w) {
        if (x[w] != 0) {
            pivot = static_cast<int>(w * 64) + std::countr_zero(x[w]);
            break;
        }
    }
    if (pivot < 0) return false;

    const std::size_t pw = static_cast<std::size_t>(pivot) / 64;
    const std::uint64_t pmask = std::uint64_t{1} << (pivot % 64);
    for (int r = 0; r < rank_; ++r) {
        std::uint64_t* row = row_bits(r);
        if (row[pw] & pmask) {
            for (std::size_t w = 0; w < words_; ++w) row[w] ^= x[w];
            field_->axpy(row_payload(r), 1, scratch_payload_);
        }
    }
    bits_.insert(bits_.end(), x.begin(), x.end());
    payloads_.insert(payloads_.end(), scratch_payload_.begin(), scratch_payload_.end());
    pivot_col_.push_back(pivot);
    row_of_col_[static_cast<std::size_t>(pivot)] = rank_;
    ++rank_;
    return true;
}

bool DecoderState::absorb_symbols(const CodingVector& v, std::span<const Symbol> payload) {
    const auto k = static_cast<std::size_t>(K_);
    auto& x = scratch_symbols_;
    std::copy(v.coefficients.begin(), v.coefficients.end(), x.begin());
    std::copy(payload.begin(), payload.end(), scratch_payload_.begin());

    auto row = [&](int r) { return std::span<Symbol>(symbols_.data() + static_cast<std::size_t>(r) * k, k); };
    auto row_payload = [&](int r) {
        return std::span<Symbol>(payloads_.data() + static_cast<std::size_t>(r) * payload_size_,
                                 payload_size_);
    };

    for (int r = 0; r < rank_; ++r) {
        const auto c = static_cast<std::size_t>(pivot_col_[static_cast<std::size_t>(r)]);
        const Symbol f = x[c];
        if (f != 0) {
            field_->axpy(x, f, row(r));
            field_->axpy(scratch_payload_, f, row_payload(r));
        }
    }

    const auto it = std::find_if(x.begin(), x.end(), [](Symbol s) { return s != 0; });
    if (it == x.end()) return false;
    const auto pivot = static_cast<std::size_t>(it - x.begin());

    const Symbol lead_inv = field_->inv(x[pivot]);
    field_->scale(x, lead_inv);
    field_->scale(scratch_payload_, lead_inv);

    for (int r = 0; r < rank_; ++r) {
        auto existing = row(r);
        const Symbol f = existing[pivot];
        if (f != 0) {
            field_->axpy(existing, f, x);
            field_->axpy(row_payload(r), f, scratch_payload_);
        }
    }
    symbols_.insert(symbols_.end(), x.begin(), x.end());
    payloads_.insert(payloads_.end(), scratch_payload_.begin(), scratch_payload_.end());
    pivot_col_.push_back(static_cast<int>(pivot));
    row_of_col_[pivot] = rank_;
    ++rank_;
    return true;
}

std::vector<CodingVector> DecoderState::basis() const {
    const auto k = static_cast<std::size_t>(K_);
    std::vector<CodingVector> out(static_cast<std::size_t>(rank_));
    for (int r = 0; r < rank_; ++r) {
        auto& coeffs = out[static_cast<std::size_t>(r)].coefficients;
        coeffs.resize(k);
        for (std::size_t c = 0; c < k; ++c) {
            if (field_->order() == 2) {
                coeffs[c] = static_cast<Symbol>(bits_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64) & 1u);
            } else {
                coeffs[c] = symbols_[static_cast<std::size_t>(r) * k + c];
            }
        }
    }
    return out;
}

std::vector<Payload> DecoderState::decode_payloads() const {
    if (rank_ < K_) {
        throw NotDecodableError("decoding matrix has defect " + std::to_string(defect()) +
                                "; need K=" + std::to_string(K_) + " independent packets");
    }
    if (payload_size_ == 0) {
        throw DomainError("decoder was built without payload tracking");
    }
    std::vector<Payload> sources(static_cast<std::size_t>(K_));
    for (int c = 0; c < K_; ++c) {
        const auto r = static_cast<std::size_t>(row_of_col_[static_cast<std::size_t>(c)]);
        const auto* begin = payloads_.data() + r * payload_size_;
        sources[static_cast<std::size_t>(c)].assign(begin, begin + payload_size_);
    }
    return sources;
}

Payload encode_payload(std::span<const Payload> sources, const CodingVector& v, unsigned q) {
    const GaloisField& field = GaloisField::of(q);
    if (sources.size() != v.size()) {
        throw DomainError("coding vector length " + std::to_string(v.size()) + " does not match " +
                          std::to_string(sources.size()) + " source blocks");
    }
    if (sources.empty()) return {};
    const std::size_t len = sources.front().size();
    for (const auto& s : sources) {
        if (s.size() != len) throw DomainError("source blocks have unequal lengths");
        if (q > 2 && std::any_of(s.begin(), s.end(), [&](Symbol x) { return !field.contains(x); })) {
            throw DomainError("payload symbol outside GF(" + std::to_string(q) + ")");
        }
    }
    Payload out(len, 0);
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const Symbol g = v.coefficients[i];
        if (!field.contains(g)) throw DomainError("coefficient outside field");
        field.axpy(out, g, sources[i]);
    }
    return out;
}

std::vector<Payload> decode_payloads(const DecoderState& state) { return state.decode_payloads(); }

}  // namespace srlnc
