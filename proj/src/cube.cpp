#include "khoval/cube.hpp"

#include "khoval/errors.hpp"
#include "khoval/union_find.hpp"

#include <array>
#include <bit>

namespace khoval {

State resolve(const Diagram& d, std::uint32_t bits) {
    const int n = d.crossing_count();
    if (n > 30) fail(errc::complexity_budget_exceeded, "more than 30 crossings");
    if (n < 32 && bits >= (1u << n)) fail(errc::internal, "state word out of range");

    UnionFind uf(std::max(4 * n, 1));
    std::vector<std::array<int, 2>> darts_of_arc(d.arc_count + 1, {-1, -1});
    for (int t = 0; t < n; ++t) {
        if ((bits >> t) & 1u) {
            uf.unite(4 * t + 0, 4 * t + 3);
            uf.unite(4 * t + 1, 4 * t + 2);
        } else {
            uf.unite(4 * t + 0, 4 * t + 1);
            uf.unite(4 * t + 2, 4 * t + 3);
        }
        const Crossing& c = d.crossings[t];
        const int arcs[4] = {c.a, c.b, c.c, c.d};
        for (int s = 0; s < 4; ++s) {
            auto& occ = darts_of_arc[arcs[s]];
            (occ[0] < 0 ? occ[0] : occ[1]) = 4 * t + s;
        }
    }
    for (int arc = 1; arc <= d.arc_count; ++arc)
        uf.unite(darts_of_arc[arc][0], darts_of_arc[arc][1]);

    State st;
    st.bits = bits;
    st.circle_of_arc.assign(d.arc_count + 1, -1);
    std::vector<std::int16_t> id_of_rep(std::max(4 * n, 1), -1);
    for (int arc = 1; arc <= d.arc_count; ++arc) {
        int rep = uf.find(darts_of_arc[arc][0]);
        if (id_of_rep[rep] < 0) id_of_rep[rep] = static_cast<std::int16_t>(st.circle_count++);
        st.circle_of_arc[arc] = id_of_rep[rep];
    }
    st.circle_count += d.extra_unknot_components;
    return st;
}

std::uint32_t seifert_state_index(const Diagram& d) {
    if (!d.has_signs) fail(errc::not_applicable, "seifert state requires a signed diagram");
    std::uint32_t bits = 0;
    for (int t = 0; t < d.crossing_count(); ++t)
        if (d.crossings[t].sign < 0) bits |= 1u << t;
    return bits;
}

int edge_sign(std::uint32_t from_bits, int position) {
    return std::popcount(from_bits & ((1u << position) - 1u)) % 2 == 0 ? 1 : -1;
}

CubeEdge classify_edge(const Diagram& d, const State& from, const State& to, int position) {
    if (((from.bits >> position) & 1u) != 0 || (to.bits ^ from.bits) != (1u << position))
        fail(errc::internal, "states are not adjacent along the given position");
    CubeEdge e;
    e.from_bits = from.bits;
    e.to_bits = to.bits;
    e.position = position;
    e.sign = edge_sign(from.bits, position);

    const Crossing& c = d.crossings[position];
    // from has the 0-smoothing at `position`: circles through it are those of
    // arcs a and c; to has the 1-smoothing: arcs a and b.
    int f1 = from.circle(c.a), f2 = from.circle(c.c);
    int t1 = to.circle(c.a), t2 = to.circle(c.b);
    if (to.circle_count == from.circle_count - 1) {
        if (f1 == f2 || t1 != t2)
            fail(errc::internal, "merge edge with inconsistent circle structure");
        e.is_merge = true;
        e.src1 = std::min(f1, f2);
        e.src2 = std::max(f1, f2);
        e.dst = t1;
    } else if (to.circle_count == from.circle_count + 1) {
        if (f1 != f2 || t1 == t2)
            fail(errc::internal, "split edge with inconsistent circle structure");
        e.is_merge = false;
        e.src = f1;
        e.dst1 = std::min(t1, t2);
        e.dst2 = std::max(t1, t2);
    } else {
        fail(errc::internal, "adjacent states must differ by exactly one circle");
    }
    return e;
}

std::vector<CubeEdge> edges(const Diagram& d) {
    const int n = d.crossing_count();
    if (n > 20) fail(errc::complexity_budget_exceeded, "explicit cube limited to 20 crossings");
    std::vector<State> states;
    states.reserve(std::size_t{1} << n);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) states.push_back(resolve(d, bits));
    std::vector<CubeEdge> out;
    out.reserve(n == 0 ? 0 : (static_cast<std::size_t>(n) << (n - 1)));
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits)
        for (int p = 0; p < n; ++p)
            if (!((bits >> p) & 1u))
                out.push_back(classify_edge(d, states[bits], states[bits | (1u << p)], p));
    return out;
}

} // namespace khoval
