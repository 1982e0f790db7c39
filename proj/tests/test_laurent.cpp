#include "khoval/laurent.hpp"

#include <doctest.h>

using namespace khoval;

namespace {

Laurent poly(PolyVar v, std::initializer_list<std::pair<int, int>> terms) {
    Laurent p(v);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

} // namespace

TEST_CASE("laurent arithmetic") {
    Laurent a = poly(PolyVar::q, {{1, 1}, {-1, 1}});
    Laurent b = poly(PolyVar::q, {{0, 2}});
    CHECK((a + b).coeff(0) == 2);
    CHECK((a - a).is_zero());
    Laurent sq = a * a;
    CHECK(sq == poly(PolyVar::q, {{2, 1}, {0, 2}, {-2, 1}}));
    CHECK(sq.coeff(5) == 0);
}

TEST_CASE("cancelling terms vanish") {
    Laurent p(PolyVar::q);
    p.add_term(3, 2);
    p.add_term(3, -2);
    CHECK(p.is_zero());
    p.add_term(0, 0);
    CHECK(p.is_zero());
}

TEST_CASE("exact laurent division") {
    Laurent divisor = poly(PolyVar::q, {{1, 1}, {-1, 1}});
    Laurent v = poly(PolyVar::q, {{2, 1}, {6, 1}, {8, -1}});
    Laurent product = v * divisor;
    auto q = product.divided_exactly_by(divisor);
    REQUIRE(q.has_value());
    CHECK(*q == v);

    CHECK(!poly(PolyVar::q, {{0, 1}}).divided_exactly_by(divisor).has_value());
    CHECK(!poly(PolyVar::q, {{2, 1}}).divided_exactly_by(divisor).has_value());

    auto zero = Laurent(PolyVar::q).divided_exactly_by(divisor);
    REQUIRE(zero.has_value());
    CHECK(zero->is_zero());
}

TEST_CASE("negated substitution flips odd exponents") {
    Laurent vq = poly(PolyVar::q, {{2, 1}, {3, 1}});
    Laurent st = vq.substituted_negated(PolyVar::sqrt_t);
    CHECK(st.var() == PolyVar::sqrt_t);
    CHECK(st.coeff(2) == 1);
    CHECK(st.coeff(3) == -1);
    CHECK(st.substituted_negated(PolyVar::q) == vq);
}

TEST_CASE("pretty printing") {
    CHECK(poly(PolyVar::sqrt_t, {{8, -1}, {6, 1}, {2, 1}}).to_string() == "-t^4 + t^3 + t");
    CHECK(poly(PolyVar::sqrt_t, {{0, 1}}).to_string() == "1");
    CHECK(poly(PolyVar::sqrt_t, {{-5, 1}}).to_string() == "t^(-5/2)");
    CHECK(poly(PolyVar::q, {{2, 3}, {0, -1}}).to_string() == "3*q^2 - 1");
    CHECK(Laurent(PolyVar::q).to_string() == "0");
}
