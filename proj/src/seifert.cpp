#include "khoval/seifert.hpp"

#include "khoval/errors.hpp"
#include "khoval/union_find.hpp"

#include <algorithm>

namespace khoval {

SeifertData seifert(const Diagram& d) {
    if (!d.has_signs) fail(errc::not_applicable, "seifert requires a signed diagram");
    const int n = d.crossing_count();

    // Glue arc-ends with the orientation-respecting smoothing at every crossing.
    // Darts 4t..4t+3 are the ends of arcs a,b,c,d at crossing t.
    UnionFind uf(4 * n);
    std::vector<std::array<int, 2>> darts_of_arc(d.arc_count + 1, {-1, -1});
    for (int t = 0; t < n; ++t) {
        const Crossing& c = d.crossings[t];
        if (c.sign > 0) {
            uf.unite(4 * t + 0, 4 * t + 1);
            uf.unite(4 * t + 2, 4 * t + 3);
        } else {
            uf.unite(4 * t + 0, 4 * t + 3);
            uf.unite(4 * t + 1, 4 * t + 2);
        }
        const int arcs[4] = {c.a, c.b, c.c, c.d};
        for (int s = 0; s < 4; ++s) {
            auto& occ = darts_of_arc[arcs[s]];
            (occ[0] < 0 ? occ[0] : occ[1]) = 4 * t + s;
        }
    }
    for (int arc = 1; arc <= d.arc_count; ++arc)
        uf.unite(darts_of_arc[arc][0], darts_of_arc[arc][1]);

    SeifertData sd;
    sd.circle_of_arc.assign(d.arc_count + 1, 0);
    std::vector<int> id_of_rep(std::max(4 * n, 1), 0);
    for (int arc = 1; arc <= d.arc_count; ++arc) {
        int rep = uf.find(darts_of_arc[arc][0]);
        if (id_of_rep[rep] == 0) id_of_rep[rep] = ++sd.circle_count;
        sd.circle_of_arc[arc] = id_of_rep[rep];
    }
    sd.circle_count += d.extra_unknot_components;

    sd.crossing_pairs.reserve(n);
    for (int t = 0; t < n; ++t) {
        const Crossing& c = d.crossings[t];
        int c1 = sd.circle_of_arc[c.a];
        int c2 = c.sign > 0 ? sd.circle_of_arc[c.c] : sd.circle_of_arc[c.b];
        sd.crossing_pairs.emplace_back(std::min(c1, c2), std::max(c1, c2));
    }
    return sd;
}

Rational canonical_genus(const Diagram& d) {
    if (!d.connected())
        fail(errc::disconnected_diagram, "canonical genus requires a connected diagram");
    SeifertData sd = seifert(d);
    int n = d.crossing_count();
    return Rational(n - sd.circle_count + 2 - d.component_count(), 2);
}

PositivityClass classify(const Diagram& d) { return classify(d, seifert(d)); }

PositivityClass classify(const Diagram& d, const SeifertData& sd) {
    if (!d.has_signs) fail(errc::not_applicable, "classify requires a signed diagram");
    PositivityClass pc;
    pc.n_minus = d.n_minus;
    if (d.n_minus == 0) {
        pc.kind = PositivityClass::Kind::positive;
        return pc;
    }
    if (d.n_minus >= 2) {
        pc.kind = PositivityClass::Kind::other;
        return pc;
    }
    pc.kind = PositivityClass::Kind::almost_positive;
    for (int t = 0; t < d.crossing_count(); ++t)
        if (d.crossings[t].sign < 0) pc.negative_index = t;
    const auto p_pair = sd.crossing_pairs[pc.negative_index];
    pc.negative_pair_is_self = p_pair.first == p_pair.second;
    pc.theorem_case = 1;
    for (int t = 0; t < d.crossing_count(); ++t) {
        if (t == pc.negative_index) continue;
        if (sd.crossing_pairs[t] == p_pair) {
            pc.theorem_case = 2;
            break;
        }
    }
    return pc;
}

} // namespace khoval
