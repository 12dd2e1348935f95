#include "enumeration.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "srlnc/error.hpp"
#include "srlnc/gf.hpp"

namespace srlnc::cli {

namespace {

// Vectors of F_q^rows are packed m bits per coordinate, so vector addition
// is XOR of the packed indices.
struct Space {
    unsigned q;
    int rows;
    unsigned m;
    unsigned size;
    const GaloisField& field;

    unsigned scale(unsigned v, unsigned a) const {
        unsigned out = 0;
        const unsigned mask = q - 1;
        for (int i = 0; i < rows; ++i) {
            const unsigned sym = (v >> (i * m)) & mask;
            out |= static_cast<unsigned>(field.mul(static_cast<Symbol>(sym), static_cast<Symbol>(a)))
                   << (i * m);
        }
        return out;
    }

    double weight(unsigned v, double p) const {
        const double nonzero = (1.0 - p) / static_cast<double>(q - 1);
        const unsigned mask = q - 1;
        double w = 1.0;
        for (int i = 0; i < rows; ++i) w *= ((v >> (i * m)) & mask) ? nonzero : p;
        return w;
    }

    std::uint64_t extend(std::uint64_t members, unsigned v) const {
        std::uint64_t out = members;
        for (unsigned s = 0; s < size; ++s) {
            if (!((members >> s) & 1u)) continue;
            for (unsigned a = 1; a < q; ++a) out |= std::uint64_t{1} << (s ^ scale(v, a));
        }
        return out;
    }
};

}  // namespace

std::vector<double> exact_full_rank_probs(int rows, int max_cols, double p, unsigned q) {
    if (rows < 1 || max_cols < 0) throw ConfigError("enumeration needs rows >= 1 and columns >= 0");
    if (q < 2 || q > 256 || !std::has_single_bit(q)) throw ConfigError("unsupported field order " + std::to_string(q));
    const unsigned m = static_cast<unsigned>(std::countr_zero(q));
    if (static_cast<unsigned>(rows) * m > 6) {
        throw ConfigError("exact enumeration needs q^rows <= 64 (q=" + std::to_string(q) +
                          ", rows=" + std::to_string(rows) + ")");
    }
    const Space space{q, rows, m, 1u << (static_cast<unsigned>(rows) * m), GaloisField::of(q)};

    std::vector<double> weights(space.size);
    for (unsigned v = 0; v < space.size; ++v) weights[v] = space.weight(v, p);

    std::vector<double> result(static_cast<std::size_t>(max_cols) + 1, 0.0);
    std::unordered_map<std::uint64_t, double> level{{std::uint64_t{1}, 1.0}};
    result[0] = 1.0;
    for (int c = 1; c <= max_cols; ++c) {
        std::unordered_map<std::uint64_t, double> next;
        double total = 0.0;
        for (const auto& [members, prob] : level) {
            for (unsigned v = 0; v < space.size; ++v) {
                if ((members >> v) & 1u) continue;
                const double mass = prob * weights[v];
                next[space.extend(members, v)] += mass;
                total += mass;
            }
        }
        result[static_cast<std::size_t>(c)] = total;
        level = std::move(next);
    }
    return result;
}

}  // namespace srlnc::cli
