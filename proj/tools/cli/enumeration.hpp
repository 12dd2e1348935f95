#pragma once

#include <vector>

namespace srlnc::cli {

/// Exact P[c i.i.d. sparse columns in F_q^rows are linearly independent]
/// for c = 0..max_cols, by dynamic programming over the spanned subspaces.
/// Needs q^rows <= 64; throws ConfigError otherwise.
[[nodiscard]] std::vector<double> exact_full_rank_probs(int rows, int max_cols, double p, unsigned q);

}  // namespace srlnc::cli
