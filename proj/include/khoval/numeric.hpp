#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <string>

namespace khoval {

// Exact scalars. Homology ranks run on a checked int64 fast path and fall
// back to BigInt when entries outgrow it; polynomial coefficients are
// rationals throughout.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Dim = long long;

inline std::string rational_to_string(const Rational& r) {
    return r.str();
}

inline Rational rational_from_string(const std::string& s) {
    return Rational(s);
}

// C(n, k), n <= 63. Out-of-range k yields 0.
inline std::uint64_t binomial(int n, int k) {
    struct Table {
        std::array<std::array<std::uint64_t, 64>, 64> c{};
        Table() {
            for (int i = 0; i < 64; ++i) {
                c[i][0] = 1;
                for (int j = 1; j <= i; ++j)
                    c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
            }
        }
    };
    static const Table t;
    if (k < 0 || k > n || n < 0 || n > 63) return 0;
    return t.c[n][k];
}

// Rank of a bitmask among all masks of equal popcount in increasing numeric
// order (combinatorial number system: sum of C(position, index+1)).
inline std::uint64_t subset_rank(std::uint64_t mask) {
    std::uint64_t r = 0;
    int idx = 1;
    while (mask) {
        int p = std::countr_zero(mask);
        r += binomial(p, idx++);
        mask &= mask - 1;
    }
    return r;
}

// Next bitmask with the same popcount (Gosper's hack). mask must be nonzero.
inline std::uint64_t next_same_popcount(std::uint64_t mask) {
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    return (((r ^ mask) >> 2) / c) | r;
}

} // namespace khoval
