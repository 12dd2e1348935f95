#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "srlnc/gf.hpp"
#include "srlnc/params.hpp"
#include "srlnc/rng.hpp"

namespace srlnc {

/// Coefficients g_1..g_K of one coded packet.
struct CodingVector {
    std::vector<Symbol> coefficients;

    [[nodiscard]] std::size_t size() const noexcept { return coefficients.size(); }
    [[nodiscard]] bool is_zero() const noexcept;
    friend bool operator==(const CodingVector&, const CodingVector&) = default;
};

/// Payload block. For q = 2 every byte carries eight GF(2) symbols; for
/// q > 2 every byte is one symbol and must be < q.
using Payload = std::vector<Symbol>;

/// Draws K coefficients independently: zero with probability p, otherwise
/// uniform over the q-1 nonzero symbols. Throws ConfigError on invalid K, q, p.
[[nodiscard]] CodingVector sample_coding_vector(int K, unsigned q, double p, Rng& rng);
[[nodiscard]] CodingVector sample_coding_vector(const CodeParams& params, Rng& rng);

/// In-place variant used by the simulator; `out` is resized to K.
void sample_coding_vector_into(const GaloisField& field, int K, double p, Rng& rng,
                               CodingVector& out);

/// Incremental Gaussian elimination over F_q.
///
/// The basis is kept in reduced row echelon form: each stored row has a 1 in
/// its pivot column and 0 in every other row's pivot column, so testing a new
/// vector for independence is one reduction pass. For q = 2 coefficients are
/// packed 64 per word. Optionally each row carries a payload that undergoes
/// the same row operations, which makes the payload of a full-rank decoder
/// the source block directly.
class DecoderState {
public:
    DecoderState(int K, unsigned q, std::size_t payload_size = 0);

    [[nodiscard]] int K() const noexcept { return K_; }
    [[nodiscard]] unsigned q() const noexcept { return field_->order(); }
    [[nodiscard]] int rank() const noexcept { return rank_; }
    [[nodiscard]] int defect() const noexcept { return K_ - rank_; }
    [[nodiscard]] bool decoded() const noexcept { return rank_ == K_; }
    [[nodiscard]] std::size_t payload_size() const noexcept { return payload_size_; }

    /// Adds v to the span. Returns true iff v was innovative; the state is
    /// left untouched otherwise. Throws DomainError if v.size() != K or a
    /// symbol is outside the field.
    bool absorb(const CodingVector& v);

    /// Same, carrying the packet payload along. Throws DomainError if the
    /// payload length differs from payload_size().
    bool absorb(const CodingVector& v, std::span<const Symbol> payload);

    /// Basis rows in insertion order (reduced echelon form).
    [[nodiscard]] std::vector<CodingVector> basis() const;

    /// Pivot column of each basis row, same order as basis().
    [[nodiscard]] std::vector<int> pivots() const { return pivot_col_; }

    /// Recovered source blocks, ordered by source index. Throws
    /// NotDecodableError while defect() > 0, DomainError without payloads.
    [[nodiscard]] std::vector<Payload> decode_payloads() const;

private:
    bool absorb_impl(const CodingVector& v, std::span<const Symbol> payload);
    bool absorb_binary(const CodingVector& v, std::span<const Symbol> payload);
    bool absorb_symbols(const CodingVector& v, std::span<const Symbol> payload);
    void check_vector(const CodingVector& v) const;

    int K_;
    const GaloisField* field_;
    std::size_t payload_size_;
    int rank_ = 0;
    std::size_t words_ = 0;                // q == 2: 64-bit words per row
    std::vector<std::uint64_t> bits_;      // q == 2: rank_ * words_
    std::vector<Symbol> symbols_;          // q > 2: rank_ * K_
    std::vector<Symbol> payloads_;         // rank_ * payload_size_
    std::vector<int> pivot_col_;           // per row
    std::vector<int> row_of_col_;          // per column, -1 if not a pivot
    std::vector<std::uint64_t> scratch_bits_;
    std::vector<Symbol> scratch_symbols_;
    std::vector<Symbol> scratch_payload_;
};

/// sum_i v_i * sources[i], symbol-wise. Throws DomainError when
/// sources.size() != v.size() or the blocks differ in length.
[[nodiscard]] Payload encode_payload(std::span<const Payload> sources, const CodingVector& v,
                                     unsigned q);

/// Free-function form of DecoderState::decode_payloads().
[[nodiscard]] std::vector<Payload> decode_payloads(const DecoderState& state);

}  // namespace srlnc
