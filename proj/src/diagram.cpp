#include "khoval/diagram.hpp"

#include "khoval/errors.hpp"
#include "khoval/union_find.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <sstream>

namespace khoval {

const char* errc_name(errc code) {
    switch (code) {
        case errc::malformed_token: return "MalformedToken";
        case errc::inconsistent_arcs: return "InconsistentArcs";
        case errc::empty_input: return "EmptyInput";
        case errc::orientation_conflict: return "OrientationConflict";
        case errc::generator_out_of_range: return "GeneratorOutOfRange";
        case errc::empty_word: return "EmptyWord";
        case errc::disconnected_diagram: return "DisconnectedDiagram";
        case errc::not_applicable: return "NotApplicable";
        case errc::complexity_budget_exceeded: return "ComplexityBudgetExceeded";
        case errc::nondivisible_euler_characteristic: return "NondivisibleEulerCharacteristic";
        case errc::double_normalization: return "DoubleNormalization";
        case errc::internal: return "InternalError";
    }
    return "Error";
}

namespace {

constexpr int kMaxArcId = 1 << 20;

struct RawCrossing {
    int a, b, c, d;
    int slot(int s) const { return s == 0 ? a : s == 1 ? b : s == 2 ? c : d; }
};

// Count faces of the rotation system (slots listed counterclockwise) and
// require Euler characteristic 2 on every connected piece of the 4-valent
// graph. This rejects PD codes with no planar realization, for which the
// merge/split dichotomy of the resolution cube would break down.
void check_planarity(const std::vector<RawCrossing>& tuples, int arc_count) {
    const int n = static_cast<int>(tuples.size());
    if (n == 0) return;
    std::vector<std::array<int, 2>> darts_of_arc(arc_count + 1, {-1, -1});
    for (int t = 0; t < n; ++t) {
        for (int s = 0; s < 4; ++s) {
            int arc = tuples[t].slot(s);
            auto& occ = darts_of_arc[arc];
            (occ[0] < 0 ? occ[0] : occ[1]) = 4 * t + s;
        }
    }
    std::vector<int> alpha(4 * n);
    for (int arc = 1; arc <= arc_count; ++arc) {
        alpha[darts_of_arc[arc][0]] = darts_of_arc[arc][1];
        alpha[darts_of_arc[arc][1]] = darts_of_arc[arc][0];
    }

    UnionFind comp(n);
    for (int arc = 1; arc <= arc_count; ++arc)
        comp.unite(darts_of_arc[arc][0] / 4, darts_of_arc[arc][1] / 4);

    // faces = orbits of dart -> rotate(alpha(dart))
    std::vector<int> faces_of(n, 0), verts_of(n, 0), edges_of(n, 0);
    std::vector<bool> seen(4 * n, false);
    for (int start = 0; start < 4 * n; ++start) {
        if (seen[start]) continue;
        int x = start;
        do {
            seen[x] = true;
            int y = alpha[x];
            x = (y & ~3) | ((y + 1) & 3);
        } while (x != start);
        ++faces_of[comp.find(start / 4)];
    }
    for (int t = 0; t < n; ++t) ++verts_of[comp.find(t)];
    for (int arc = 1; arc <= arc_count; ++arc) ++edges_of[comp.find(darts_of_arc[arc][0] / 4)];
    for (int t = 0; t < n; ++t) {
        if (comp.find(t) != t) continue;
        if (verts_of[t] - edges_of[t] + faces_of[t] != 2)
            fail(errc::inconsistent_arcs,
                 "PD code admits no planar embedding (Euler characteristic check failed)");
    }
}

// Build a validated Diagram out of raw crossing tuples. When the over-strand
// directions are already known (transforms, braid closures) they are taken
// as-is and only checked; otherwise they are inferred from the consecutive
// arc numbering.
Diagram finalize_diagram(const std::vector<RawCrossing>& tuples, int unknots,
                         const std::vector<bool>* known_over_d2b) {
    const int n = static_cast<int>(tuples.size());
    if (n == 0 && unknots == 0) fail(errc::empty_input, "no crossings and no unknot components");

    int arc_count = 0;
    for (const auto& t : tuples) arc_count = std::max({arc_count, t.a, t.b, t.c, t.d});
    std::vector<int> uses(arc_count + 1, 0);
    for (const auto& t : tuples)
        for (int s = 0; s < 4; ++s) {
            int arc = t.slot(s);
            if (arc < 1) fail(errc::malformed_token, "arc ids must be positive integers");
            ++uses[arc];
        }
    for (int arc = 1; arc <= arc_count; ++arc)
        if (uses[arc] != 2)
            fail(errc::inconsistent_arcs,
                 "arc " + std::to_string(arc) + " is used " + std::to_string(uses[arc]) +
                     " times (expected exactly 2)");
    if (arc_count != 2 * n)
        fail(errc::inconsistent_arcs, "expected " + std::to_string(2 * n) + " arcs, found " +
                                          std::to_string(arc_count));

    // Orient every arc: out/in mark whether an arc's successor/predecessor is
    // already claimed. Under-strands always run a -> c; over-strand directions
    // are propagated until forced, with the numbering convention breaking ties.
    std::vector<char> out(arc_count + 1, 0), in(arc_count + 1, 0);
    std::vector<int> next(arc_count + 1, 0);
    auto claim = [&](int from, int to) {
        if (out[from])
            fail(errc::inconsistent_arcs, "arc " + std::to_string(from) + " has two successors");
        if (in[to])
            fail(errc::inconsistent_arcs, "arc " + std::to_string(to) + " has two predecessors");
        out[from] = in[to] = 1;
        next[from] = to;
    };
    for (const auto& t : tuples) claim(t.a, t.c);

    std::vector<bool> over_d2b(n, false);
    if (known_over_d2b) {
        for (int t = 0; t < n; ++t) {
            over_d2b[t] = (*known_over_d2b)[t];
            if (over_d2b[t]) claim(tuples[t].d, tuples[t].b);
            else claim(tuples[t].b, tuples[t].d);
        }
    } else {
        std::vector<int> pending(n);
        std::iota(pending.begin(), pending.end(), 0);
        while (!pending.empty()) {
            bool progress = false;
            std::vector<int> still;
            for (int t : pending) {
                int b = tuples[t].b, d = tuples[t].d;
                if (b == d) {
                    claim(b, b);
                    over_d2b[t] = false;
                    progress = true;
                    continue;
                }
                bool can_b2d = !out[b] && !in[d];
                bool can_d2b = !out[d] && !in[b];
                if (!can_b2d && !can_d2b)
                    fail(errc::inconsistent_arcs,
                         "over-strand of crossing " + std::to_string(t + 1) +
                             " cannot be oriented consistently");
                if (can_b2d && can_d2b) {
                    still.push_back(t);
                    continue;
                }
                over_d2b[t] = can_d2b;
                claim(can_d2b ? d : b, can_d2b ? b : d);
                progress = true;
            }
            pending = std::move(still);
            if (!progress && !pending.empty()) {
                // Both directions are still open; orient along the numbering.
                int t = pending.front();
                pending.erase(pending.begin());
                int b = tuples[t].b, d = tuples[t].d;
                bool d2b = (b == d + 1) || (d != b + 1 && b > d);
                over_d2b[t] = d2b;
                claim(d2b ? d : b, d2b ? b : d);
            }
        }
    }

    for (int arc = 1; arc <= arc_count; ++arc)
        if (!out[arc] || !in[arc])
            fail(errc::inconsistent_arcs, "arc " + std::to_string(arc) + " is not on a closed cycle");

    // Successor cycles must be consecutive blocks [lo..hi] wrapping hi -> lo.
    std::vector<std::vector<int>> components;
    std::vector<bool> visited(arc_count + 1, false);
    for (int lo = 1; lo <= arc_count; ++lo) {
        if (visited[lo]) continue;
        std::vector<int> cyc{lo};
        visited[lo] = true;
        int cur = lo;
        while (next[cur] != lo) {
            if (next[cur] != cur + 1 || next[cur] > arc_count || visited[next[cur]])
                fail(errc::inconsistent_arcs,
                     "arcs are not numbered consecutively along their component (arc " +
                         std::to_string(cur) + ")");
            cur = next[cur];
            visited[cur] = true;
            cyc.push_back(cur);
        }
        components.push_back(std::move(cyc));
    }

    check_planarity(tuples, arc_count);

    Diagram d;
    d.crossings.reserve(n);
    for (int t = 0; t < n; ++t)
        d.crossings.push_back({tuples[t].a, tuples[t].b, tuples[t].c, tuples[t].d, over_d2b[t], 0});
    d.arc_count = arc_count;
    d.components = std::move(components);
    d.extra_unknot_components = unknots;
    d.successors = std::move(next);
    return d;
}

std::vector<RawCrossing> raw_tuples(const Diagram& d) {
    std::vector<RawCrossing> out;
    out.reserve(d.crossings.size());
    for (const auto& c : d.crossings) out.push_back({c.a, c.b, c.c, c.d});
    return out;
}

std::vector<bool> over_flags(const Diagram& d) {
    std::vector<bool> f;
    f.reserve(d.crossings.size());
    for (const auto& c : d.crossings) f.push_back(c.over_runs_d_to_b);
    return f;
}

Diagram resign(const Diagram& src, Diagram rebuilt) {
    return src.has_signs ? derive_signs(rebuilt) : rebuilt;
}

} // namespace

bool Diagram::connected() const {
    if (crossings.empty()) return arc_count == 0 && extra_unknot_components == 1;
    if (extra_unknot_components > 0) return false;
    const int n = crossing_count();
    UnionFind uf(n);
    std::vector<int> first_use(arc_count + 1, -1);
    for (int t = 0; t < n; ++t) {
        for (int arc : {crossings[t].a, crossings[t].b, crossings[t].c, crossings[t].d}) {
            if (first_use[arc] < 0) first_use[arc] = t;
            else uf.unite(first_use[arc], t);
        }
    }
    for (int t = 0; t < n; ++t)
        if (uf.find(t) != uf.find(0)) return false;
    return true;
}

Diagram parse_pd(const std::string& text) {
    std::vector<RawCrossing> tuples;
    int unknots = 0;

    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    while (skip_ws(), i < text.size()) {
        std::size_t tok_start = i;
        auto bad_token = [&]() -> std::string {
            std::size_t end = tok_start;
            while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
                ++end;
            return text.substr(tok_start, end - tok_start);
        };
        char head = text[i];
        if (head == 'O' || head == 'o') {
            ++i;
            if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                fail(errc::malformed_token, "unexpected token '" + bad_token() + "'");
            ++unknots;
            continue;
        }
        if (head != 'X' && head != 'x')
            fail(errc::malformed_token, "unexpected token '" + bad_token() + "'");
        ++i;
        skip_ws();
        if (i >= text.size() || text[i] != '(')
            fail(errc::malformed_token, "expected '(' in token '" + bad_token() + "'");
        ++i;
        int vals[4];
        for (int k = 0; k < 4; ++k) {
            skip_ws();
            if (k > 0) {
                if (i >= text.size() || text[i] != ',')
                    fail(errc::malformed_token, "expected 4 arc ids in token '" + bad_token() + "'");
                ++i;
                skip_ws();
            }
            std::size_t num_start = i;
            long v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > kMaxArcId) fail(errc::malformed_token, "arc id too large");
                ++i;
            }
            if (i == num_start)
                fail(errc::malformed_token, "expected arc id in token '" + bad_token() + "'");
            if (v < 1) fail(errc::malformed_token, "arc ids must be positive");
            vals[k] = static_cast<int>(v);
        }
        skip_ws();
        if (i >= text.size() || text[i] != ')')
            fail(errc::malformed_token, "expected ')' in token '" + bad_token() + "'");
        ++i;
        tuples.push_back({vals[0], vals[1], vals[2], vals[3]});
    }
    if (tuples.empty() && unknots == 0) fail(errc::empty_input, "empty PD input");
    return finalize_diagram(tuples, unknots, nullptr);
}

Diagram derive_signs(const Diagram& d) {
    Diagram out = d;
    out.n_plus = out.n_minus = 0;
    for (auto& c : out.crossings) {
        bool succ_d2b = d.successor(c.d) == c.b;
        bool succ_b2d = d.successor(c.b) == c.d;
        if (!succ_d2b && !succ_b2d)
            fail(errc::orientation_conflict,
                 "over-strand of crossing with under-arc " + std::to_string(c.a) +
                     " matches neither successor relation");
        // When both relations hold (a two-arc component) keep the direction
        // resolved at build time.
        if (succ_d2b != succ_b2d && c.over_runs_d_to_b != succ_d2b)
            fail(errc::orientation_conflict,
                 "stored over-strand direction contradicts the arc numbering");
        c.sign = c.over_runs_d_to_b ? 1 : -1;
        (c.sign > 0 ? out.n_plus : out.n_minus)++;
    }
    out.has_signs = true;
    return out;
}

Diagram braid_to_pd(const std::vector<int>& word, int strands) {
    if (strands < 1) fail(errc::generator_out_of_range, "strand count must be positive");
    for (int e : word)
        if (e == 0 || std::abs(e) >= strands)
            fail(errc::generator_out_of_range,
                 "braid generator " + std::to_string(e) + " out of range for " +
                     std::to_string(strands) + " strands");
    if (word.empty()) {
        if (strands != 1)
            fail(errc::empty_word, "empty braid word is only allowed on a single strand");
        Diagram d;
        d.extra_unknot_components = 1;
        d.successors.assign(1, 0);
        d.has_signs = true;
        return d;
    }

    const int n = static_cast<int>(word.size());
    // Segment ids: 0..strands-1 are the bottom ends, two fresh ids per letter.
    int next_seg = strands;
    std::vector<int> cur(strands);
    std::iota(cur.begin(), cur.end(), 0);
    struct SegCrossing {
        int a, b, c, d;
        bool positive;
    };
    std::vector<SegCrossing> segs;
    segs.reserve(n);
    for (int e : word) {
        int i = std::abs(e) - 1;
        int L = cur[i], R = cur[i + 1];
        int l_out = next_seg++, r_out = next_seg++;
        if (e > 0) segs.push_back({R, r_out, l_out, L, true});
        else segs.push_back({L, R, r_out, l_out, false});
        cur[i] = l_out;
        cur[i + 1] = r_out;
    }
    UnionFind uf(next_seg);
    for (int p = 0; p < strands; ++p) uf.unite(cur[p], p); // braid closure

    std::vector<bool> used(next_seg, false);
    for (const auto& s : segs)
        for (int seg : {s.a, s.b, s.c, s.d}) used[uf.find(seg)] = true;
    int unknots = 0;
    for (int p = 0; p < strands; ++p)
        if (uf.find(p) == p && !used[p]) ++unknots;

    // Successor along the strands: under runs a -> c, over runs over_in -> over_out.
    std::vector<int> succ(next_seg, -1);
    for (const auto& s : segs) {
        succ[uf.find(s.a)] = uf.find(s.c);
        if (s.positive) succ[uf.find(s.d)] = uf.find(s.b);
        else succ[uf.find(s.b)] = uf.find(s.d);
    }
    std::vector<int> arc_of(next_seg, 0);
    int next_arc = 1;
    for (int rep = 0; rep < next_seg; ++rep) {
        if (uf.find(rep) != rep || !used[rep] || arc_of[rep] != 0) continue;
        int cls = rep;
        do {
            arc_of[cls] = next_arc++;
            cls = succ[cls];
        } while (cls != rep);
    }

    std::vector<RawCrossing> tuples;
    std::vector<bool> flags;
    tuples.reserve(n);
    for (const auto& s : segs) {
        tuples.push_back({arc_of[uf.find(s.a)], arc_of[uf.find(s.b)], arc_of[uf.find(s.c)],
                          arc_of[uf.find(s.d)]});
        flags.push_back(s.positive);
    }
    Diagram d = derive_signs(finalize_diagram(tuples, unknots, &flags));
    for (int t = 0; t < n; ++t)
        if (d.crossings[t].sign != (word[t] > 0 ? 1 : -1))
            fail(errc::internal, "braid closure produced an unexpected crossing sign");
    return d;
}

std::string to_pd_text(const Diagram& d) {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : d.crossings) {
        if (!first) os << ' ';
        os << "X(" << c.a << ',' << c.b << ',' << c.c << ',' << c.d << ')';
        first = false;
    }
    for (int k = 0; k < d.extra_unknot_components; ++k) {
        if (!first) os << ' ';
        os << 'O';
        first = false;
    }
    return os.str();
}

Diagram mirror(const Diagram& d) {
    if (!d.has_signs) fail(errc::not_applicable, "mirror requires a signed diagram");
    std::vector<RawCrossing> tuples;
    std::vector<bool> flags;
    for (const auto& c : d.crossings) {
        // Switching the crossing makes the old over-strand the new under-strand;
        // the counterclockwise listing restarts at its incoming arc.
        if (c.sign > 0) tuples.push_back({c.d, c.a, c.b, c.c});
        else tuples.push_back({c.b, c.c, c.d, c.a});
        flags.push_back(c.sign < 0); // new over-strand = old under, runs a -> c
    }
    return derive_signs(finalize_diagram(tuples, d.extra_unknot_components, &flags));
}

Diagram change_crossing(const Diagram& d, int index) {
    if (!d.has_signs) fail(errc::not_applicable, "change_crossing requires a signed diagram");
    if (index < 0 || index >= d.crossing_count())
        fail(errc::not_applicable, "crossing index out of range");
    std::vector<RawCrossing> tuples = raw_tuples(d);
    std::vector<bool> flags = over_flags(d);
    const Crossing& c = d.crossings[index];
    if (c.sign > 0) tuples[index] = {c.d, c.a, c.b, c.c};
    else tuples[index] = {c.b, c.c, c.d, c.a};
    flags[index] = c.sign < 0;
    return derive_signs(finalize_diagram(tuples, d.extra_unknot_components, &flags));
}

Diagram reorder_crossings(const Diagram& d, const std::vector<int>& perm) {
    if (perm.size() != d.crossings.size())
        fail(errc::not_applicable, "permutation size mismatch");
    std::vector<RawCrossing> tuples(perm.size());
    std::vector<bool> flags(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t k = 0; k < perm.size(); ++k) {
        int p = perm[k];
        if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p])
            fail(errc::not_applicable, "invalid permutation");
        seen[p] = true;
        const Crossing& c = d.crossings[p];
        tuples[k] = {c.a, c.b, c.c, c.d};
        flags[k] = c.over_runs_d_to_b;
    }
    return resign(d, finalize_diagram(tuples, d.extra_unknot_components, &flags));
}

Diagram rotate_component_arcs(const Diagram& d, int component, int shift) {
    if (component < 0 || component >= static_cast<int>(d.components.size()))
        fail(errc::not_applicable, "component index out of range");
    const auto& arcs = d.components[component];
    int lo = arcs.front();
    int len = static_cast<int>(arcs.size());
    auto remap = [&](int arc) {
        if (arc < lo || arc >= lo + len) return arc;
        return lo + ((arc - lo + shift) % len + len) % len;
    };
    std::vector<RawCrossing> tuples;
    std::vector<bool> flags = over_flags(d);
    for (const auto& c : d.crossings)
        tuples.push_back({remap(c.a), remap(c.b), remap(c.c), remap(c.d)});
    return resign(d, finalize_diagram(tuples, d.extra_unknot_components, &flags));
}

namespace {

Diagram add_kink(const Diagram& d, int arc, bool positive) {
    if (!d.has_signs) fail(errc::not_applicable, "kink insertion requires a signed diagram");
    std::vector<RawCrossing> tuples = raw_tuples(d);
    std::vector<bool> flags = over_flags(d);
    int m = d.arc_count;
    if (arc == 0) {
        // Kink a crossing-free unknot component into a one-crossing circle.
        if (d.extra_unknot_components < 1)
            fail(errc::not_applicable, "no crossing-free component to kink");
        if (positive) tuples.push_back({m + 1, m + 1, m + 2, m + 2});
        else tuples.push_back({m + 1, m + 2, m + 2, m + 1});
        flags.push_back(positive);
        return resign(d, finalize_diagram(tuples, d.extra_unknot_components - 1, &flags));
    }
    if (arc < 1 || arc > m) fail(errc::not_applicable, "arc id out of range");

    // Split `arc` into arc, arc+1 (the loop), arc+2 (the continuation); the
    // occurrence where `arc` enters a crossing becomes arc+2.
    auto shift = [&](int x) { return x > arc ? x + 2 : x; };
    bool replaced = false;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        const Crossing& c = d.crossings[t];
        int in_slot = c.a == arc ? 0 : c.over_in() == arc ? (c.over_runs_d_to_b ? 3 : 1) : -1;
        RawCrossing nt{shift(c.a), shift(c.b), shift(c.c), shift(c.d)};
        if (in_slot >= 0) {
            if (replaced) fail(errc::internal, "arc enters two crossings");
            replaced = true;
            if (in_slot == 0) nt.a = arc + 2;
            else if (in_slot == 1) nt.b = arc + 2;
            else nt.d = arc + 2;
        }
        tuples[t] = nt;
    }
    if (!replaced) fail(errc::internal, "arc is not incoming anywhere");
    if (positive) tuples.push_back({arc, arc + 2, arc + 1, arc + 1});
    else tuples.push_back({arc, arc + 1, arc + 1, arc + 2});
    flags.push_back(positive);
    return resign(d, finalize_diagram(tuples, d.extra_unknot_components, &flags));
}

} // namespace

Diagram add_positive_kink(const Diagram& d, int arc) { return add_kink(d, arc, true); }
Diagram add_negative_kink(const Diagram& d, int arc) { return add_kink(d, arc, false); }

} // namespace khoval
