#pragma once

#include <string>
#include <vector>

namespace khoval {

// One crossing of a planar diagram. Arcs a,b,c,d are listed counterclockwise
// starting from the incoming under-strand arc a; the under-strand runs a -> c.
// The over-strand direction is resolved during parsing: when it runs d -> b
// the crossing is positive, when it runs b -> d it is negative.
struct Crossing {
    int a = 0, b = 0, c = 0, d = 0;
    bool over_runs_d_to_b = false; // resolved orientation of the over-strand
    int sign = 0;                  // +1 / -1 once derive_signs has run, else 0

    int over_in() const { return over_runs_d_to_b ? d : b; }
    int over_out() const { return over_runs_d_to_b ? b : d; }
};

// An oriented link diagram. Arc ids are 1..arc_count; the arcs of each link
// component are numbered consecutively along the orientation and close up
// cyclically, so the successor of an arc is id+1 except at a component's
// largest id, which wraps to its smallest. Crossing-free unknot components
// carry no arcs and are only counted.
struct Diagram {
    std::vector<Crossing> crossings;
    int arc_count = 0;
    std::vector<std::vector<int>> components; // arcs in orientation order, sorted by smallest arc
    int extra_unknot_components = 0;
    bool has_signs = false;
    int n_plus = 0, n_minus = 0;

    int crossing_count() const { return static_cast<int>(crossings.size()); }
    int component_count() const {
        return static_cast<int>(components.size()) + extra_unknot_components;
    }
    int writhe() const { return n_plus - n_minus; }

    // Next arc along the orientation. arc must be in 1..arc_count.
    int successor(int arc) const { return successors[arc]; }

    // Connectivity of the underlying 4-valent graph; a single crossing-free
    // circle counts as connected.
    bool connected() const;

    std::vector<int> successors; // filled by the builder, 1-based
};

// Parse the PD text format: whitespace-separated tokens `X(a,b,c,d)` plus
// `O` for crossing-free unknot components.
Diagram parse_pd(const std::string& text);

// Return a copy with crossing signs filled in and n_plus/n_minus counted.
Diagram derive_signs(const Diagram& d);

// Diagram of the closure of a braid word on the given number of strands.
// Entry +i crosses strands i,i+1 positively, -i negatively. The result is
// already signed (verified against the word).
Diagram braid_to_pd(const std::vector<int>& word, int strands);

// PD text round-trip.
std::string to_pd_text(const Diagram& d);

// Mirror image: every crossing switched. Requires signs. Signs all negate.
Diagram mirror(const Diagram& d);

// Switch over- and under-strand at one crossing (0-based index). Requires signs.
Diagram change_crossing(const Diagram& d, int index);

// Same diagram with crossings listed in a different order.
Diagram reorder_crossings(const Diagram& d, const std::vector<int>& perm);

// Relabel the arcs of one component by a cyclic shift (orientation kept).
Diagram rotate_component_arcs(const Diagram& d, int component, int shift);

// Insert a Reidemeister-I kink on the given arc (or on a crossing-free unknot
// component when arc == 0). Requires signs.
Diagram add_positive_kink(const Diagram& d, int arc);
Diagram add_negative_kink(const Diagram& d, int arc);

} // namespace khoval
