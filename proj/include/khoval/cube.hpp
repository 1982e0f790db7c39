#pragma once

#include "khoval/diagram.hpp"

#include <cstdint>
#include <vector>

namespace khoval {

// One vertex of the resolution cube: bit i of `bits` picks the smoothing of
// crossing i (0: a~b, c~d; 1: a~d, b~c). For a positive crossing the
// 0-smoothing is the oriented one, for a negative crossing the 1-smoothing is.
// Circles are indexed 0..circle_count-1 by ascending smallest arc; circles of
// crossing-free unknot components come last.
struct State {
    std::uint32_t bits = 0;
    int circle_count = 0;
    std::vector<std::int16_t> circle_of_arc; // index 1..arc_count

    int circle(int arc) const { return circle_of_arc[arc]; }
};

State resolve(const Diagram& d, std::uint32_t bits);

// Bit word of the oriented resolution: 0 at positive crossings, 1 at negative.
std::uint32_t seifert_state_index(const Diagram& d);

// (-1)^l with l = number of set bits below `position`.
int edge_sign(std::uint32_t from_bits, int position);

struct CubeEdge {
    std::uint32_t from_bits = 0, to_bits = 0;
    int position = 0;
    int sign = 1;
    bool is_merge = false;
    // merge: circles src1, src2 of `from` fuse into dst of `to`
    int src1 = -1, src2 = -1, dst = -1;
    // split: circle src of `from` divides into dst1, dst2 of `to`
    int src = -1, dst1 = -1, dst2 = -1;
};

CubeEdge classify_edge(const Diagram& d, const State& from, const State& to, int position);

// All n * 2^(n-1) edges, ordered by (from_bits, position).
std::vector<CubeEdge> edges(const Diagram& d);

} // namespace khoval
