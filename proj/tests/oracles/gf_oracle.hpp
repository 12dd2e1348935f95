#pragma once

#include <cstdint>

namespace oracle {

/// Shift-and-add product of two polynomials over F_2, reduced modulo `poly`
/// (degree m, bit m set).
inline unsigned poly_mul(unsigned a, unsigned b, unsigned poly, unsigned m) {
    unsigned acc = 0;
    for (unsigned i = 0; i < m; ++i) {
        if (b >> i & 1u) acc ^= a << i;
    }
    for (int bit = static_cast<int>(2 * m) - 2; bit >= static_cast<int>(m); --bit) {
        if (acc >> bit & 1u) acc ^= poly << (bit - static_cast<int>(m));
    }
    return acc;
}

}  // namespace oracle
