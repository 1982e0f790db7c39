#include "khoval/fixtures.hpp"

#include "khoval/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace khoval {

namespace {

std::string word_id(int strands, const std::vector<int>& word) {
    std::ostringstream os;
    os << 'b' << strands << '-';
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) os << '.';
        os << word[i];
    }
    return os.str();
}

bool single_cycle(int strands, const std::vector<int>& word) {
    std::vector<int> perm(strands);
    std::iota(perm.begin(), perm.end(), 0);
    for (int e : word) {
        int i = std::abs(e) - 1;
        std::swap(perm[i], perm[i + 1]);
    }
    // one component iff the closure permutation is a single cycle
    int seen = 1, at = perm[0];
    while (at != 0) {
        at = perm[at];
        ++seen;
    }
    return seen == strands;
}

void append_generated(std::vector<Fixture>& out, int strands, int max_len) {
    std::vector<int> gens;
    for (int g = 1; g < strands; ++g) {
        gens.push_back(g);
        gens.push_back(-g);
    }
    std::vector<int> word;
    auto emit = [&] {
        int negatives = 0;
        std::vector<bool> used(strands, false);
        for (int e : word) {
            if (e < 0) ++negatives;
            used[std::abs(e) - 1] = true;
        }
        if (negatives > 1) return;
        for (int g = 1; g < strands; ++g)
            if (!used[g - 1]) return; // closure would be split
        if (!single_cycle(strands, word)) return;
        out.push_back({word_id(strands, word), "", word, strands, std::nullopt});
    };
    // iterate words of length 1..max_len in lexicographic order over gens
    std::vector<int> idx;
    for (int len = 1; len <= max_len; ++len) {
        idx.assign(len, 0);
        for (;;) {
            word.clear();
            for (int i : idx) word.push_back(gens[i]);
            emit();
            int pos = len - 1;
            while (pos >= 0 && idx[pos] + 1 == static_cast<int>(gens.size())) {
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[pos];
        }
    }
}

using Kh = std::vector<std::tuple<int, int, long long>>;
using Poly = std::map<int, long long>;

std::vector<Fixture> build_catalog() {
    // Expected blocks are frozen outputs of this pipeline (each one
    // cross-checked against the bracket oracle when first recorded).
    std::vector<Fixture> cat;
    cat.push_back({"unknot-o", "O", {}, 0,
                   FixtureExpected{"positive", std::nullopt, Rational(0), 0, Poly{{0, 1}},
                                   Kh{{0, -1, 1}, {0, 1, 1}}}});
    cat.push_back({"kink-pos", "X(1,1,2,2)", {}, 0,
                   FixtureExpected{"positive", std::nullopt, Rational(0), 0, Poly{{0, 1}},
                                   Kh{{0, -1, 1}, {0, 1, 1}}}});
    cat.push_back({"kink-neg", "X(1,2,2,1)", {}, 0,
                   FixtureExpected{"almost_positive", 1, Rational(0), 0, Poly{{0, 1}},
                                   Kh{{0, -1, 1}, {0, 1, 1}}}});
    cat.push_back({"trefoil-pos", "", {1, 1, 1}, 2,
                   FixtureExpected{"positive", std::nullopt, Rational(1), 2,
                                   Poly{{2, 1}, {6, 1}, {8, -1}},
                                   Kh{{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {3, 9, 1}}}});
    cat.push_back({"trefoil-left-pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", {}, 0,
                   FixtureExpected{"other", std::nullopt, Rational(1), std::nullopt,
                                   Poly{{-2, 1}, {-6, 1}, {-8, -1}},
                                   Kh{{-3, -9, 1}, {-2, -5, 1}, {0, -3, 1}, {0, -1, 1}}}});
    cat.push_back({"unknot-case2", "", {1, 1, -1}, 2,
                   FixtureExpected{"almost_positive", 2, Rational(1), 0, Poly{{0, 1}},
                                   Kh{{0, -1, 1}, {0, 1, 1}}}});
    cat.push_back({"cinquefoil", "", {1, 1, 1, 1, 1}, 2,
                   FixtureExpected{"positive", std::nullopt, Rational(2), 4,
                                   Poly{{4, 1}, {8, 1}, {10, -1}, {12, 1}, {14, -1}},
                                   Kh{{0, 3, 1}, {0, 5, 1}, {2, 7, 1}, {3, 11, 1}, {4, 11, 1},
                                      {5, 15, 1}}}});
    cat.push_back({"t33", "", {1, 2, 1, 2, 1, 2}, 3,
                   FixtureExpected{"positive", std::nullopt, Rational(1), std::nullopt,
                                   Poly{{4, 1}, {8, 1}, {12, 2}},
                                   Kh{{0, 3, 1}, {0, 5, 1}, {2, 7, 1}, {3, 11, 1}, {4, 9, 1},
                                      {4, 11, 3}, {4, 13, 2}}}});
    // positive trefoil with one negative Reidemeister-I kink (Case 1)
    cat.push_back({"trefoil-neg-kink", "", {}, 0,
                   FixtureExpected{"almost_positive", 1, Rational(1), 2,
                                   Poly{{2, 1}, {6, 1}, {8, -1}},
                                   Kh{{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {3, 9, 1}}}});
    {
        Diagram t = braid_to_pd({1, 1, 1}, 2);
        cat.back().pd = to_pd_text(add_negative_kink(t, 1));
    }

    append_generated(cat, 2, 8);
    append_generated(cat, 3, 8);
    return cat;
}

} // namespace

const std::vector<Fixture>& fixture_catalog() {
    static const std::vector<Fixture> cat = build_catalog();
    return cat;
}

Diagram fixture_diagram(const Fixture& f) {
    if (f.is_braid()) return braid_to_pd(f.braid, f.strands);
    return derive_signs(parse_pd(f.pd));
}

} // namespace khoval
