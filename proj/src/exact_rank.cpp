#include "khoval/exact_rank.hpp"

#include "khoval/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

namespace khoval {

namespace {

struct Overflow {};

struct Int64Ops {
    using S = std::int64_t;
    static S from_int(int v) { return v; }
    // p*a - q*b with overflow detection (INT64_MIN excluded so negation and
    // std::gcd stay safe)
    static S combine(S p, S a, S q, S b) {
        __int128 r = static_cast<__int128>(p) * a - static_cast<__int128>(q) * b;
        if (r > std::numeric_limits<S>::max() || r <= std::numeric_limits<S>::min()) throw Overflow{};
        return static_cast<S>(r);
    }
    static bool is_unit(const S& v) { return v == 1 || v == -1; }
    static bool is_large(const S& v) { return v >= (S{1} << 40) || v <= -(S{1} << 40); }
    static bool abs_less(const S& x, const S& y) {
        return (x < 0 ? -x : x) < (y < 0 ? -y : y);
    }
    static S gcd(const S& a, const S& b) { return std::gcd(a, b); }
    static void divide(S& a, const S& g) { a /= g; }
};

struct BigOps {
    using S = BigInt;
    static S from_int(int v) { return S(v); }
    static S combine(const S& p, const S& a, const S& q, const S& b) { return p * a - q * b; }
    static bool is_unit(const S& v) { return v == 1 || v == -1; }
    static bool is_large(const S& v) {
        static const S limit = S(1) << 512;
        return v >= limit || v <= -limit;
    }
    static bool abs_less(const S& x, const S& y) { return abs(x) < abs(y); }
    static S gcd(const S& a, const S& b) { return boost::multiprecision::gcd(a, b); }
    static void divide(S& a, const S& g) { a /= g; }
};

template <class Ops>
Dim run_elimination(const RankMatrix& m) {
    using S = typename Ops::S;
    using Entry = std::pair<std::int32_t, S>;

    // Remap the (possibly huge) column ids onto a dense range.
    std::vector<std::int64_t> cols;
    for (const auto& row : m.row_entries)
        for (const auto& e : row) cols.push_back(e.first);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    const std::int32_t ncols = static_cast<std::int32_t>(cols.size());
    const std::int32_t nrows = static_cast<std::int32_t>(m.row_entries.size());

    std::vector<std::vector<Entry>> rows(nrows);
    std::vector<std::int32_t> col_count(ncols, 0);
    std::vector<std::vector<std::int32_t>> col_rows(ncols);
    for (std::int32_t r = 0; r < nrows; ++r) {
        rows[r].reserve(m.row_entries[r].size());
        for (const auto& e : m.row_entries[r]) {
            auto it = std::lower_bound(cols.begin(), cols.end(), e.first);
            auto c = static_cast<std::int32_t>(it - cols.begin());
            rows[r].emplace_back(c, Ops::from_int(e.second));
            ++col_count[c];
            col_rows[c].push_back(r);
        }
    }

    using HeapItem = std::pair<std::int32_t, std::int32_t>; // (count, col)
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    for (std::int32_t c = 0; c < ncols; ++c)
        if (col_count[c] > 0) heap.emplace(col_count[c], c);

    std::vector<char> alive(nrows, 1);
    auto find_entry = [](const std::vector<Entry>& row, std::int32_t c) {
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::int32_t col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? it : row.end();
    };

    Dim rank = 0;
    std::vector<std::int32_t> touched;
    while (!heap.empty()) {
        auto [cnt, col] = heap.top();
        heap.pop();
        if (col_count[col] != cnt || cnt == 0) continue; // stale

        // Compact the row list for this column and collect live candidates.
        auto& list = col_rows[col];
        std::vector<std::int32_t> cand;
        for (std::int32_t r : list)
            if (alive[r] && find_entry(rows[r], col) != rows[r].end()) cand.push_back(r);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        list.assign(cand.begin(), cand.end());
        if (cand.empty()) {
            col_count[col] = 0;
            continue;
        }

        // Pivot: prefer unit values, then short rows, then low index.
        std::int32_t pivot_row = -1;
        bool pivot_unit = false;
        std::size_t pivot_len = 0;
        for (std::int32_t r : cand) {
            const S& v = find_entry(rows[r], col)->second;
            bool unit = Ops::is_unit(v);
            std::size_t len = rows[r].size();
            bool better;
            if (pivot_row < 0) better = true;
            else if (unit != pivot_unit) better = unit;
            else if (len != pivot_len) better = len < pivot_len;
            else better = false;
            if (better) {
                pivot_row = r;
                pivot_unit = unit;
                pivot_len = len;
            }
        }
        if (!pivot_unit) {
            // fall back to the smallest magnitude among equally short rows
            for (std::int32_t r : cand) {
                const S& v = find_entry(rows[r], col)->second;
                if (r != pivot_row && rows[r].size() == pivot_len &&
                    Ops::abs_less(v, find_entry(rows[pivot_row], col)->second))
                    pivot_row = r;
            }
        }

        ++rank;
        const std::vector<Entry> prow = std::move(rows[pivot_row]); // detach pivot row
        rows[pivot_row].clear();
        alive[pivot_row] = 0;
        const S pivot_val = find_entry(prow, col)->second;

        touched.clear();
        for (std::int32_t r : cand) {
            if (r == pivot_row) continue;
            auto& row = rows[r];
            const S rv = find_entry(row, col)->second;
            std::vector<Entry> merged;
            merged.reserve(row.size() + prow.size());
            bool needs_gcd = false;
            auto ia = row.begin();
            auto ib = prow.begin();
            const S zero = Ops::from_int(0);
            while (ia != row.end() || ib != prow.end()) {
                if (ib == prow.end() || (ia != row.end() && ia->first < ib->first)) {
                    S v = Ops::combine(pivot_val, ia->second, zero, zero);
                    needs_gcd = needs_gcd || Ops::is_large(v);
                    merged.emplace_back(ia->first, std::move(v));
                    ++ia;
                } else if (ia == row.end() || ib->first < ia->first) {
                    S v = Ops::combine(zero, zero, rv, ib->second);
                    needs_gcd = needs_gcd || Ops::is_large(v);
                    ++col_count[ib->first];
                    col_rows[ib->first].push_back(r);
                    touched.push_back(ib->first);
                    merged.emplace_back(ib->first, std::move(v));
                    ++ib;
                } else {
                    S v = Ops::combine(pivot_val, ia->second, rv, ib->second);
                    if (v == 0) {
                        --col_count[ia->first];
                        touched.push_back(ia->first);
                    } else {
                        needs_gcd = needs_gcd || Ops::is_large(v);
                        merged.emplace_back(ia->first, std::move(v));
                    }
                    ++ia;
                    ++ib;
                }
            }
            if (needs_gcd && merged.size() > 1) {
                S g = merged.front().second < 0 ? S(-merged.front().second) : merged.front().second;
                for (const auto& e : merged) {
                    g = Ops::gcd(g, e.second);
                    if (Ops::is_unit(g)) break;
                }
                if (!Ops::is_unit(g) && g != 0)
                    for (auto& e : merged) Ops::divide(e.second, g);
            }
            row = std::move(merged);
        }

        // Retire the pivot row's entries.
        for (const auto& e : prow) {
            --col_count[e.first];
            touched.push_back(e.first);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::int32_t c : touched)
            if (col_count[c] > 0) heap.emplace(col_count[c], c);
    }
    return rank;
}

} // namespace

Dim exact_rank(const RankMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    try {
        return run_elimination<Int64Ops>(m);
    } catch (const Overflow&) {
        return run_elimination<BigOps>(m);
    }
}

} // namespace khoval
