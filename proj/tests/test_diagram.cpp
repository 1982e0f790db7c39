#include "khoval/diagram.hpp"
#include "khoval/errors.hpp"
#include "khoval/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace khoval;

namespace {

const char* kTrefoilPd = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

std::vector<int> signs_of(const Diagram& d) {
    std::vector<int> s;
    for (const auto& c : d.crossings) s.push_back(c.sign);
    return s;
}

} // namespace

TEST_CASE("parse_pd accepts the standard trefoil code") {
    Diagram d = parse_pd(kTrefoilPd);
    CHECK(d.crossing_count() == 3);
    CHECK(d.arc_count == 6);
    CHECK(d.components.size() == 1);
    CHECK(d.extra_unknot_components == 0);
    CHECK(d.components[0] == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(d.successor(6) == 1);
    CHECK(d.successor(2) == 3);
    CHECK(d.connected());
}

TEST_CASE("parse_pd handles crossing-free unknot components") {
    Diagram d = parse_pd("O");
    CHECK(d.crossing_count() == 0);
    CHECK(d.arc_count == 0);
    CHECK(d.component_count() == 1);
    CHECK(d.connected());

    Diagram dd = parse_pd("O O");
    CHECK(dd.component_count() == 2);
    CHECK(!dd.connected());
}

TEST_CASE("parse_pd rejects malformed input") {
    CHECK_THROWS_WITH_AS(parse_pd("X(1,2,3)"), doctest::Contains("X(1,2,3)"), Error);
    try {
        parse_pd("X(1,2,3)");
    } catch (const Error& e) {
        CHECK(e.code() == errc::malformed_token);
    }
    CHECK_THROWS_AS(parse_pd(""), Error);
    try {
        parse_pd("  \n ");
    } catch (const Error& e) {
        CHECK(e.code() == errc::empty_input);
    }
    try {
        parse_pd("X(1,2,3,4)"); // arcs used once
    } catch (const Error& e) {
        CHECK(e.code() == errc::inconsistent_arcs);
    }
    try {
        parse_pd("Y(1,2,3,4)");
    } catch (const Error& e) {
        CHECK(e.code() == errc::malformed_token);
    }
    // two closed curves cannot cross exactly once
    try {
        parse_pd("X(1,2,1,2)");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::inconsistent_arcs);
    }
}

TEST_CASE("derive_signs follows the over-strand convention") {
    Diagram d = derive_signs(parse_pd(kTrefoilPd));
    CHECK(signs_of(d) == std::vector<int>{-1, -1, -1});
    CHECK(d.n_plus == 0);
    CHECK(d.n_minus == 3);

    // rotating each crossing to start at the old over-in arc mirrors the diagram
    Diagram m = derive_signs(parse_pd("X(4,2,5,1) X(6,4,1,3) X(2,6,3,5)"));
    CHECK(signs_of(m) == std::vector<int>{1, 1, 1});

    Diagram o = derive_signs(parse_pd("O"));
    CHECK(o.n_plus == 0);
    CHECK(o.n_minus == 0);
}

TEST_CASE("one-crossing kinks parse with the expected signs") {
    Diagram pos = derive_signs(parse_pd("X(1,1,2,2)"));
    CHECK(pos.n_plus == 1);
    CHECK(pos.component_count() == 1);
    Diagram neg = derive_signs(parse_pd("X(1,2,2,1)"));
    CHECK(neg.n_minus == 1);
    CHECK(neg.component_count() == 1);
}

TEST_CASE("braid closures") {
    Diagram t = braid_to_pd({1, 1, 1}, 2);
    CHECK(t.crossing_count() == 3);
    CHECK(t.component_count() == 1);
    CHECK(t.n_plus == 3);
    CHECK(t.n_minus == 0);

    Diagram u = braid_to_pd({1, 1, -1}, 2);
    CHECK(u.crossing_count() == 3);
    CHECK(u.component_count() == 1);
    CHECK(u.n_plus == 2);
    CHECK(u.n_minus == 1);

    Diagram empty = braid_to_pd({}, 1);
    CHECK(empty.crossing_count() == 0);
    CHECK(empty.component_count() == 1);

    CHECK_THROWS_AS(braid_to_pd({}, 2), Error);
    try {
        braid_to_pd({}, 3);
    } catch (const Error& e) {
        CHECK(e.code() == errc::empty_word);
    }
    try {
        braid_to_pd({2}, 2);
    } catch (const Error& e) {
        CHECK(e.code() == errc::generator_out_of_range);
    }
    try {
        braid_to_pd({0}, 2);
    } catch (const Error& e) {
        CHECK(e.code() == errc::generator_out_of_range);
    }

    // unused strand closes into a crossing-free circle
    Diagram split = braid_to_pd({1, 1, 1}, 3);
    CHECK(split.extra_unknot_components == 1);
    CHECK(!split.connected());
}

TEST_CASE("mirror negates every sign and is an involution") {
    for (const auto& word : {std::vector<int>{1, 1, 1}, {1, 1, -1}, {1, 2, 1, 2}, {1, -2, 1, 1}}) {
        int strands = 1;
        for (int e : word) strands = std::max(strands, std::abs(e) + 1);
        Diagram d = braid_to_pd(word, strands);
        Diagram m = mirror(d);
        REQUIRE(m.crossing_count() == d.crossing_count());
        for (int i = 0; i < d.crossing_count(); ++i) CHECK(m.crossings[i].sign == -d.crossings[i].sign);
        CHECK(to_pd_text(mirror(m)) == to_pd_text(d));
    }
    Diagram pd = derive_signs(parse_pd(kTrefoilPd));
    Diagram m = mirror(pd);
    CHECK(signs_of(m) == std::vector<int>{1, 1, 1});
}

TEST_CASE("change_crossing flips exactly one sign") {
    Diagram d = braid_to_pd({1, 1, -1}, 2);
    Diagram plus = change_crossing(d, 2);
    CHECK(plus.n_minus == 0);
    CHECK(plus.n_plus == 3);
    CHECK(plus.component_count() == 1);
}

TEST_CASE("crossing reordering and arc rotation preserve structure") {
    Diagram d = braid_to_pd({1, 1, 1}, 2);
    Diagram r = reorder_crossings(d, {2, 0, 1});
    CHECK(r.n_plus == 3);
    CHECK(r.components == d.components);

    Diagram rot = rotate_component_arcs(d, 0, 2);
    CHECK(rot.n_plus == 3);
    CHECK(rot.arc_count == d.arc_count);
    CHECK(rot.components.size() == d.components.size());
}

TEST_CASE("kink insertion") {
    Diagram t = braid_to_pd({1, 1, 1}, 2);
    Diagram tp = add_positive_kink(t, 1);
    CHECK(tp.crossing_count() == 4);
    CHECK(tp.n_plus == 4);
    CHECK(tp.component_count() == 1);

    Diagram tn = add_negative_kink(t, 1);
    CHECK(tn.n_plus == 3);
    CHECK(tn.n_minus == 1);
    CHECK(tn.component_count() == 1);

    // kink each arc in turn; all results stay valid one-component diagrams
    for (int arc = 1; arc <= t.arc_count; ++arc) {
        Diagram k = add_positive_kink(t, arc);
        CHECK(k.component_count() == 1);
        CHECK(k.n_plus == 4);
    }

    Diagram o = derive_signs(parse_pd("O"));
    Diagram ok = add_positive_kink(o, 0);
    CHECK(ok.crossing_count() == 1);
    CHECK(ok.extra_unknot_components == 0);
    CHECK(ok.n_plus == 1);
}

TEST_CASE("mirror round-trips across the fixture catalog") {
    int checked = 0;
    for (const auto& f : fixture_catalog()) {
        Diagram d = fixture_diagram(f);
        Diagram m = mirror(d);
        CHECK(m.n_plus == d.n_minus);
        CHECK(m.n_minus == d.n_plus);
        CHECK(to_pd_text(mirror(m)) == to_pd_text(d));
        if (++checked >= 300) break;
    }
    CHECK(checked >= 300);
}

TEST_CASE("sign counts always add up") {
    for (const auto& word :
         {std::vector<int>{1}, {1, 1, 1}, {1, 1, -1}, {1, 2, 1, 2, 1, 2}, {-1, 2, 1, 2}}) {
        int strands = 1;
        for (int e : word) strands = std::max(strands, std::abs(e) + 1);
        Diagram d = braid_to_pd(word, strands);
        CHECK(d.n_plus + d.n_minus == d.crossing_count());
    }
}
