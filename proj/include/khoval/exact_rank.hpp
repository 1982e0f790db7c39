#pragma once

#include "khoval/numeric.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace khoval {

// Sparse integer matrix handed to the rank engine. Rows hold (column, value)
// entries sorted by column with no duplicates and no zeros.
struct RankMatrix {
    Dim rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::int64_t, int>>> row_entries;
};

// Exact rank over the rationals by fraction-free sparse elimination: pivots
// are chosen by a Markowitz-style fill heuristic preferring unit entries, row
// updates stay integral (a := p*a - q*b with gcd content reduction), and the
// arithmetic runs on checked int64, restarting the block with arbitrary
// precision integers if anything overflows.
Dim exact_rank(const RankMatrix& m);

} // namespace khoval
