#pragma once

#include "khoval/diagram.hpp"
#include "khoval/numeric.hpp"

#include <utility>
#include <vector>

namespace khoval {

// Circles of the oriented (Seifert) resolution. Circle ids are 1..circle_count,
// ordered by the smallest arc they contain; crossing-free unknot components
// come last.
struct SeifertData {
    int circle_count = 0;
    std::vector<int> circle_of_arc;               // index 1..arc_count
    std::vector<std::pair<int, int>> crossing_pairs; // per crossing, {lo, hi}
};

SeifertData seifert(const Diagram& d);

// Genus of the surface produced by Seifert's algorithm: (n - s + 2 - #L) / 2.
// Requires a connected diagram.
Rational canonical_genus(const Diagram& d);

struct PositivityClass {
    enum class Kind { positive, almost_positive, other };
    Kind kind = Kind::positive;
    int n_minus = 0;
    int negative_index = -1;       // almost_positive: index of the negative crossing
    int theorem_case = 0;          // almost_positive: 1 or 2
    bool negative_pair_is_self = false; // p joins a Seifert circle to itself
};

PositivityClass classify(const Diagram& d);
PositivityClass classify(const Diagram& d, const SeifertData& sd);

} // namespace khoval
