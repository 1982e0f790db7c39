#include "khoval/exact_rank.hpp"
#include "khoval/numeric.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace khoval;

namespace {

// Independent oracle: dense Gaussian elimination over exact rationals.
Dim dense_rank(const RankMatrix& m) {
    std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols, 0));
    for (std::size_t r = 0; r < m.row_entries.size(); ++r)
        for (const auto& [c, v] : m.row_entries[r]) a[r][static_cast<std::size_t>(c)] = v;
    Dim rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < static_cast<std::size_t>(m.cols) && row < a.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[pivot], a[row]);
        for (std::size_t r = row + 1; r < a.size(); ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[row][col];
            for (std::size_t c = col; c < static_cast<std::size_t>(m.cols); ++c)
                a[r][c] -= f * a[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

RankMatrix random_matrix(std::mt19937& rng, int rows, int cols, double density, int vmax) {
    RankMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_entries.resize(rows);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> val(-vmax, vmax);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (coin(rng) < density) {
                int v = val(rng);
                if (v != 0) m.row_entries[r].emplace_back(c, v);
            }
    return m;
}

} // namespace

TEST_CASE("rank of simple matrices") {
    RankMatrix empty;
    CHECK(exact_rank(empty) == 0);

    RankMatrix id;
    id.rows = id.cols = 5;
    id.row_entries.resize(5);
    for (int i = 0; i < 5; ++i) id.row_entries[i] = {{i, 1}};
    CHECK(exact_rank(id) == 5);

    RankMatrix zero;
    zero.rows = 3;
    zero.cols = 4;
    zero.row_entries.resize(3);
    CHECK(exact_rank(zero) == 0);

    RankMatrix dup; // two equal rows and their sum
    dup.rows = 3;
    dup.cols = 3;
    dup.row_entries = {{{0, 1}, {1, 2}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 4}}};
    CHECK(exact_rank(dup) == 1);
}

TEST_CASE("random sparse matrices agree with the dense rational oracle") {
    std::mt19937 rng(20240917);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 24);
        int cols = 1 + static_cast<int>(rng() % 24);
        double density = 0.05 + 0.4 * (trial % 7) / 7.0;
        int vmax = (trial % 5 == 0) ? 50 : 3;
        RankMatrix m = random_matrix(rng, rows, cols, density, vmax);
        CAPTURE(trial);
        CHECK(exact_rank(m) == dense_rank(m));
    }
}

TEST_CASE("rank-one products stay rank one") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(rng() % 8);
        std::vector<int> u(n), v(n);
        for (int& x : u) x = static_cast<int>(rng() % 7) - 3;
        for (int& x : v) x = static_cast<int>(rng() % 7) - 3;
        RankMatrix m;
        m.rows = m.cols = n;
        m.row_entries.resize(n);
        bool nonzero = false;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (u[r] * v[c] != 0) {
                    m.row_entries[r].emplace_back(c, u[r] * v[c]);
                    nonzero = true;
                }
        CHECK(exact_rank(m) == (nonzero ? 1 : 0));
    }
}

TEST_CASE("huge entries trigger the arbitrary-precision path and stay exact") {
    // Hilbert-like dense blocks with entries near 2^31 force int64 overflow
    // during elimination.
    std::mt19937 rng(99);
    std::uniform_int_distribution<long long> val(1, (1LL << 31));
    for (int trial = 0; trial < 10; ++trial) {
        int n = 6;
        RankMatrix m;
        m.rows = m.cols = n;
        m.row_entries.resize(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                long long v = val(rng);
                m.row_entries[r].emplace_back(c, static_cast<int>(v % 1000000007) - 500000003);
            }
        CHECK(exact_rank(m) == dense_rank(m));
    }
}
