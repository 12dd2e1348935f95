#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace srlnc {

/// One symbol of F_q, stored in a byte. Always < q for the owning field.
using Symbol = std::uint8_t;

/// Arithmetic in F_{2^m}, 1 <= m <= 8.
///
/// Elements are polynomials over F_2 packed into the low m bits of a byte.
/// Addition is XOR; multiplication is carried out through full product and
/// inverse tables built once at construction, so every operation is a table
/// lookup and the object is safe to share between threads.
///
/// Reduction polynomials (bit i = coefficient of x^i):
///   m=1 x+1,  m=2 x^2+x+1,  m=3 x^3+x+1,  m=4 x^4+x+1,  m=5 x^5+x^2+1,
///   m=6 x^6+x+1,  m=7 x^7+x+1,  m=8 x^8+x^4+x^3+x+1.
class GaloisField {
public:
    /// Throws ConfigError unless q is a power of two in [2, 256].
    explicit GaloisField(unsigned q);

    [[nodiscard]] unsigned order() const noexcept { return q_; }
    [[nodiscard]] unsigned degree() const noexcept { return m_; }
    [[nodiscard]] unsigned polynomial() const noexcept { return poly_; }
    [[nodiscard]] bool contains(unsigned value) const noexcept { return value < q_; }

    [[nodiscard]] static constexpr Symbol add(Symbol a, Symbol b) noexcept {
        return static_cast<Symbol>(a ^ b);
    }
    [[nodiscard]] static constexpr Symbol sub(Symbol a, Symbol b) noexcept { return add(a, b); }

    [[nodiscard]] Symbol mul(Symbol a, Symbol b) const noexcept {
        return mul_[static_cast<std::size_t>(a) << 8 | b];
    }

    /// Multiplicative inverse. Throws DomainError for a == 0.
    [[nodiscard]] Symbol inv(Symbol a) const;

    [[nodiscard]] Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

    /// dst[i] += c * src[i] over the field.
    void axpy(std::span<Symbol> dst, Symbol c, std::span<const Symbol> src) const noexcept;

    /// v[i] *= c.
    void scale(std::span<Symbol> v, Symbol c) const noexcept;

    /// Process-wide immutable instance for order q (built on first use).
    [[nodiscard]] static const GaloisField& of(unsigned q);

    /// Canonical reduction polynomial for F_{2^m}.
    [[nodiscard]] static unsigned canonical_polynomial(unsigned m);

private:
    unsigned q_;
    unsigned m_;
    unsigned poly_;
    std::array<Symbol, 256 * 256> mul_{};
    std::array<Symbol, 256> inv_{};
};

}  // namespace srlnc
