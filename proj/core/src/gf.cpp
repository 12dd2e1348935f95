#include "srlnc/gf.hpp"

#include <bit>
#include <string>

#include "srlnc/error.hpp"

namespace srlnc {

namespace {

constexpr std::array<unsigned, 9> kPolynomials = {
    0,      // unused
    0x3,    // x + 1
    0x7,    // x^2 + x + 1
    0xB,    // x^3 + x + 1
    0x13,   // x^4 + x + 1
    0x25,   // x^5 + x^2 + 1
    0x43,   // x^6 + x + 1
    0x83,   // x^7 + x + 1
    0x11B,  // x^8 + x^4 + x^3 + x + 1
};

// Shift-and-add multiply with reduction after each shift.
unsigned slow_mul(unsigned a, unsigned b, unsigned m, unsigned poly) {
    unsigned result = 0;
    const unsigned top = 1u << m;
    while (b != 0) {
        if (b & 1u) result ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= poly;
    }
    return result;
}

}  // namespace

unsigned GaloisField::canonical_polynomial(unsigned m) {
    if (m < 1 || m > 8) {
        throw ConfigError("field degree must be in [1,8], got " + std::to_string(m));
    }
    return kPolynomials[m];
}

GaloisField::GaloisField(unsigned q) : q_(q) {
    if (q < 2 || q > 256 || !std::has_single_bit(q)) {
        throw ConfigError("field order q must be a power of two in [2,256], got " +
                          std::to_string(q));
    }
    m_ = static_cast<unsigned>(std::countr_zero(q));
    poly_ = canonical_polynomial(m_);

    for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = 0; b < q_; ++b) {
            mul_[a << 8 | b] = static_cast<Symbol>(slow_mul(a, b, m_, poly_));
        }
    }
    for (unsigned a = 1; a < q_; ++a) {
        for (unsigned b = 1; b < q_; ++b) {
            if (mul_[a << 8 | b] == 1) {
                inv_[a] = static_cast<Symbol>(b);
                break;
            }
        }
    }
}

const GaloisField& GaloisField::of(unsigned q) {
    if (q < 2 || q > 256 || !std::has_single_bit(q)) {
        throw ConfigError("field order q must be a power of two in [2,256], got " +
                          std::to_string(q));
    }
    static const std::array<GaloisField, 8> fields = {
        GaloisField(2),  GaloisField(4),  GaloisField(8),   GaloisField(16),
        GaloisField(32), GaloisField(64), GaloisField(128), GaloisField(256)};
    return fields[static_cast<std::size_t>(std::countr_zero(q)) - 1];
}

Symbol GaloisField::inv(Symbol a) const {
    if (a == 0) throw DomainError("inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

void GaloisField::axpy(std::span<Symbol> dst, Symbol c, std::span<const Symbol> src) const noexcept {
    if (c == 0) return;
    const std::size_t n = dst.size() < src.size() ? dst.size() : src.size();
    if (c == 1) {
        for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
        return;
    }
    const Symbol* row = &mul_[static_cast<std::size_t>(c) << 8];
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= row[src[i]];
}

void GaloisField::scale(std::span<Symbol> v, Symbol c) const noexcept {
    if (c == 1) return;
    const Symbol* row = &mul_[static_cast<std::size_t>(c) << 8];
    for (auto& x : v) x = row[x];
}

}  // namespace srlnc
