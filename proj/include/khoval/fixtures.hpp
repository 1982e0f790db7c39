#pragma once

#include "khoval/diagram.hpp"
#include "khoval/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace khoval {

// Frozen regression values, produced by this artifact's own pipeline (they
// pin behavior, they are not independent ground truth).
struct FixtureExpected {
    std::string cls; // "positive" | "almost_positive" | "other"
    std::optional<int> theorem_case;
    std::optional<Rational> g3_diagram;
    std::optional<long long> s;
    std::optional<std::map<int, long long>> jones_sqrt_t; // exponent of t^(1/2) -> coeff
    std::optional<std::vector<std::tuple<int, int, long long>>> kh; // normalized (i, j, dim)
};

struct Fixture {
    std::string id;
    std::string pd;          // set when the fixture is a PD text
    std::vector<int> braid;  // set when the fixture is a braid closure
    int strands = 0;
    std::optional<FixtureExpected> expected;

    bool is_braid() const { return strands > 0; }
};

// Named fixtures plus a generated family: all connected one-component braid
// closures with at most one negative letter, words of length <= 8 over the
// generators of 2- and 3-strand braids.
const std::vector<Fixture>& fixture_catalog();

Diagram fixture_diagram(const Fixture& f); // parsed/built and signed

} // namespace khoval
