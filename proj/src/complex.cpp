#include "khoval/complex.hpp"

#include "khoval/errors.hpp"
#include "khoval/exact_rank.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace khoval {

namespace {

std::uint32_t remove_bit(std::uint32_t w, int p) {
    return (w & ((1u << p) - 1u)) | ((w >> (p + 1)) << p);
}

std::uint32_t insert_bit(std::uint32_t w, int p, std::uint32_t bit) {
    return (w & ((1u << p) - 1u)) | (bit << p) | ((w >> p) << (p + 1));
}

template <class F>
void for_each_label(int circles, int x_count, F&& f) {
    if (x_count < 0 || x_count > circles) return;
    if (x_count == 0) {
        f(0u);
        return;
    }
    std::uint64_t mask = (std::uint64_t{1} << x_count) - 1;
    const std::uint64_t last = mask << (circles - x_count);
    while (true) {
        f(static_cast<std::uint32_t>(mask));
        if (mask == last) break;
        mask = next_same_popcount(mask);
    }
}

void run_jobs(std::size_t njobs, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || njobs <= 1) {
        for (std::size_t i = 0; i < njobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= njobs) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t nworkers = std::min<std::size_t>(threads, njobs);
    pool.reserve(nworkers);
    for (std::size_t i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

int effective_threads(const KhOptions& opt) {
    if (opt.threads > 0) return opt.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct LevelStates {
    int weight = 0;
    std::vector<State> states; // ascending by bit word

    int index_of(std::uint32_t bits) const {
        auto it = std::lower_bound(states.begin(), states.end(), bits,
                                   [](const State& s, std::uint32_t b) { return s.bits < b; });
        return static_cast<int>(it - states.begin());
    }
};

LevelStates resolve_level(const Diagram& d, int weight) {
    LevelStates lvl;
    lvl.weight = weight;
    const int n = d.crossing_count();
    const std::uint64_t count = binomial(n, weight);
    lvl.states.reserve(count);
    std::uint64_t bits = weight == 0 ? 0 : (std::uint64_t{1} << weight) - 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        lvl.states.push_back(resolve(d, static_cast<std::uint32_t>(bits)));
        if (lvl.states.back().circle_count > 31)
            fail(errc::complexity_budget_exceeded, "more than 31 circles in one smoothing");
        if (i + 1 < count) bits = next_same_popcount(bits);
    }
    return lvl;
}

// Per-edge recipe for transporting label words between adjacent states. The
// circle orderings of the two states agree on untouched circles, so the label
// word only needs bit removals at the source circles and insertions at the
// target ones.
struct Transport {
    std::int32_t to_state = 0;
    std::int8_t sign = 1;
    bool merge = false;
    std::int8_t x = 0, y = 0, z = 0; // merge: s1<s2 -> dst; split: src -> d1<d2
};

std::vector<std::vector<Transport>> build_transports(const Diagram& d, const LevelStates& cur,
                                                     const LevelStates& next) {
    const int n = d.crossing_count();
    std::vector<std::vector<Transport>> all(cur.states.size());
    for (std::size_t si = 0; si < cur.states.size(); ++si) {
        const State& from = cur.states[si];
        auto& list = all[si];
        list.reserve(n - cur.weight);
        for (int p = 0; p < n; ++p) {
            if ((from.bits >> p) & 1u) continue;
            int ti = next.index_of(from.bits | (1u << p));
            CubeEdge e = classify_edge(d, from, next.states[ti], p);
            Transport t;
            t.to_state = ti;
            t.sign = static_cast<std::int8_t>(e.sign);
            t.merge = e.is_merge;
            if (e.is_merge) {
                t.x = static_cast<std::int8_t>(e.src1);
                t.y = static_cast<std::int8_t>(e.src2);
                t.z = static_cast<std::int8_t>(e.dst);
            } else {
                t.x = static_cast<std::int8_t>(e.src);
                t.y = static_cast<std::int8_t>(e.dst1);
                t.z = static_cast<std::int8_t>(e.dst2);
            }
            list.push_back(t);
        }
    }
    return all;
}

std::map<int, Dim> level_dims(const LevelStates& lvl) {
    std::map<int, Dim> dims;
    for (const State& s : lvl.states)
        for (int m = 0; m <= s.circle_count; ++m)
            dims[lvl.weight + s.circle_count - 2 * m] +=
                static_cast<Dim>(binomial(s.circle_count, m));
    return dims;
}

// Matrix of d^{w,j} with rows indexed by the source generators.
RankMatrix build_block(const LevelStates& cur, const LevelStates& next,
                       const std::vector<std::vector<Transport>>& transports, int j) {
    const int w = cur.weight;
    RankMatrix block;

    std::vector<Dim> off(next.states.size() + 1, 0);
    for (std::size_t ti = 0; ti < next.states.size(); ++ti) {
        int k = next.states[ti].circle_count;
        int twice_m = w + 1 + k - j;
        Dim cnt = (twice_m >= 0 && twice_m % 2 == 0) ? static_cast<Dim>(binomial(k, twice_m / 2)) : 0;
        off[ti + 1] = off[ti] + cnt;
    }
    block.cols = off.back();

    for (std::size_t si = 0; si < cur.states.size(); ++si) {
        const int k = cur.states[si].circle_count;
        int twice_m = w + k - j;
        if (twice_m < 0 || twice_m % 2 != 0 || twice_m / 2 > k) continue;
        const auto& tlist = transports[si];
        for_each_label(k, twice_m / 2, [&](std::uint32_t labels) {
            std::vector<std::pair<std::int64_t, int>> row;
            row.reserve(2 * tlist.size());
            for (const Transport& t : tlist) {
                if (t.merge) {
                    std::uint32_t x1 = (labels >> t.x) & 1u;
                    std::uint32_t x2 = (labels >> t.y) & 1u;
                    if (x1 & x2) continue; // m(X (x) X) = 0
                    std::uint32_t rest = remove_bit(remove_bit(labels, t.y), t.x);
                    std::uint32_t out = insert_bit(rest, t.z, x1 | x2);
                    row.emplace_back(off[t.to_state] + static_cast<Dim>(subset_rank(out)), t.sign);
                } else {
                    std::uint32_t x = (labels >> t.x) & 1u;
                    std::uint32_t rest = remove_bit(labels, t.x);
                    if (x) { // Delta(X) = X (x) X
                        std::uint32_t out = insert_bit(insert_bit(rest, t.y, 1u), t.z, 1u);
                        row.emplace_back(off[t.to_state] + static_cast<Dim>(subset_rank(out)),
                                         t.sign);
                    } else { // Delta(1) = 1 (x) X + X (x) 1
                        std::uint32_t out1 = insert_bit(insert_bit(rest, t.y, 0u), t.z, 1u);
                        std::uint32_t out2 = insert_bit(insert_bit(rest, t.y, 1u), t.z, 0u);
                        row.emplace_back(off[t.to_state] + static_cast<Dim>(subset_rank(out1)),
                                         t.sign);
                        row.emplace_back(off[t.to_state] + static_cast<Dim>(subset_rank(out2)),
                                         t.sign);
                    }
                }
            }
            std::sort(row.begin(), row.end());
            block.row_entries.push_back(std::move(row));
        });
    }
    block.rows = static_cast<Dim>(block.row_entries.size());
    return block;
}

void check_budget(const Diagram& d, const KhOptions& opt) {
    if (!d.has_signs) fail(errc::not_applicable, "homology requires a signed diagram");
    const int n = d.crossing_count();
    if (n > opt.max_crossings)
        fail(errc::complexity_budget_exceeded,
             "diagram has " + std::to_string(n) + " crossings, budget is " +
                 std::to_string(opt.max_crossings) + " (raise --max-crossings to override)");
    if (n > 30) fail(errc::complexity_budget_exceeded, "more than 30 crossings");
}

} // namespace

HomologyTable kh_unnormalized(const Diagram& d, const KhOptions& opt) {
    check_budget(d, opt);
    const int n = d.crossing_count();
    const int threads = effective_threads(opt);

    HomologyTable table;
    table.flavor = HomologyTable::Flavor::unnormalized;

    LevelStates cur = resolve_level(d, 0);
    std::map<int, Dim> prev_rank;
    for (int w = 0; w <= n; ++w) {
        LevelStates next;
        std::map<int, Dim> ranks;
        std::map<int, Dim> cdim = level_dims(cur);
        if (w < n) {
            next = resolve_level(d, w + 1);
            auto transports = build_transports(d, cur, next);
            std::vector<int> jobs;
            jobs.reserve(cdim.size());
            for (const auto& [j, dim] : cdim) jobs.push_back(j);
            std::vector<Dim> results(jobs.size(), 0);
            run_jobs(jobs.size(), threads, [&](std::size_t idx) {
                results[idx] = exact_rank(build_block(cur, next, transports, jobs[idx]));
            });
            for (std::size_t idx = 0; idx < jobs.size(); ++idx) ranks[jobs[idx]] = results[idx];
        }
        for (const auto& [j, dim] : cdim) {
            Dim h = dim;
            if (auto it = ranks.find(j); it != ranks.end()) h -= it->second;
            if (auto it = prev_rank.find(j); it != prev_rank.end()) h -= it->second;
            if (h < 0) fail(errc::internal, "negative homology dimension");
            if (h > 0) table.dims[{w, j}] = h;
        }
        prev_rank = std::move(ranks);
        cur = std::move(next);
    }
    return table;
}

HomologyTable normalize(const HomologyTable& t, int n_plus, int n_minus) {
    if (t.flavor == HomologyTable::Flavor::normalized)
        fail(errc::double_normalization, "table is already normalized");
    HomologyTable out;
    out.flavor = HomologyTable::Flavor::normalized;
    out.n_plus = n_plus;
    out.n_minus = n_minus;
    for (const auto& [key, dim] : t.dims)
        out.dims[{key.first - n_minus, key.second + n_plus - 2 * n_minus}] = dim;
    return out;
}

HomologyTable kh(const Diagram& d, const KhOptions& opt) {
    return normalize(kh_unnormalized(d, opt), d.n_plus, d.n_minus);
}

ChainComplex build_complex(const Diagram& d, const KhOptions& opt) {
    check_budget(d, opt);
    const int n = d.crossing_count();

    ChainComplex cc;
    cc.n = n;
    cc.n_plus = d.n_plus;
    cc.n_minus = d.n_minus;
    cc.levels.resize(n + 1);

    LevelStates cur = resolve_level(d, 0);
    for (int w = 0; w <= n; ++w) {
        auto& level = cc.levels[w];
        std::vector<Dim> off(cur.states.size() + 1, 0);
        for (std::size_t si = 0; si < cur.states.size(); ++si) {
            off[si + 1] = off[si] + (Dim{1} << cur.states[si].circle_count);
            const State& s = cur.states[si];
            for (std::uint32_t labels = 0; labels < (1u << s.circle_count); ++labels) {
                int q = w + s.circle_count - 2 * std::popcount(labels);
                level.gens.push_back({s.bits, labels, q});
            }
        }
        if (w == n) break;

        LevelStates next = resolve_level(d, w + 1);
        std::vector<Dim> off_next(next.states.size() + 1, 0);
        for (std::size_t ti = 0; ti < next.states.size(); ++ti)
            off_next[ti + 1] = off_next[ti] + (Dim{1} << next.states[ti].circle_count);

        auto transports = build_transports(d, cur, next);
        for (std::size_t si = 0; si < cur.states.size(); ++si) {
            const State& s = cur.states[si];
            for (std::uint32_t labels = 0; labels < (1u << s.circle_count); ++labels) {
                Dim src = off[si] + labels;
                for (const Transport& t : transports[si]) {
                    if (t.merge) {
                        std::uint32_t x1 = (labels >> t.x) & 1u;
                        std::uint32_t x2 = (labels >> t.y) & 1u;
                        if (x1 & x2) continue;
                        std::uint32_t rest = remove_bit(remove_bit(labels, t.y), t.x);
                        std::uint32_t out = insert_bit(rest, t.z, x1 | x2);
                        level.d.push_back({src, off_next[t.to_state] + out, t.sign});
                    } else {
                        std::uint32_t x = (labels >> t.x) & 1u;
                        std::uint32_t rest = remove_bit(labels, t.x);
                        if (x) {
                            std::uint32_t out = insert_bit(insert_bit(rest, t.y, 1u), t.z, 1u);
                            level.d.push_back({src, off_next[t.to_state] + out, t.sign});
                        } else {
                            std::uint32_t out1 = insert_bit(insert_bit(rest, t.y, 0u), t.z, 1u);
                            std::uint32_t out2 = insert_bit(insert_bit(rest, t.y, 1u), t.z, 0u);
                            level.d.push_back({src, off_next[t.to_state] + out1, t.sign});
                            level.d.push_back({src, off_next[t.to_state] + out2, t.sign});
                        }
                    }
                }
            }
        }
        cur = std::move(next);
    }
    return cc;
}

HomologyTable homology_dims(const ChainComplex& cc, const KhOptions& opt) {
    const int threads = effective_threads(opt);

    // Local (per-j) index of every generator at every level.
    std::vector<std::map<int, Dim>> counts(cc.levels.size());
    std::vector<std::vector<Dim>> local(cc.levels.size());
    for (std::size_t w = 0; w < cc.levels.size(); ++w) {
        local[w].resize(cc.levels[w].gens.size());
        for (std::size_t g = 0; g < cc.levels[w].gens.size(); ++g)
            local[w][g] = counts[w][cc.levels[w].gens[g].q]++;
    }

    std::vector<std::map<int, Dim>> ranks(cc.levels.size());
    for (std::size_t w = 0; w + 1 < cc.levels.size(); ++w) {
        std::map<int, RankMatrix> blocks;
        for (const auto& [j, cnt] : counts[w]) {
            RankMatrix& b = blocks[j];
            b.rows = cnt;
            auto it = counts[w + 1].find(j);
            b.cols = it == counts[w + 1].end() ? 0 : it->second;
            b.row_entries.resize(cnt);
        }
        for (const auto& e : cc.levels[w].d) {
            int jq = cc.levels[w].gens[e.src].q;
            if (cc.levels[w + 1].gens[e.dst].q != jq)
                fail(errc::internal, "differential does not preserve the q-grading");
            blocks[jq].row_entries[local[w][e.src]].emplace_back(local[w + 1][e.dst], e.coeff);
        }
        std::vector<int> jobs;
        for (auto& [j, b] : blocks) {
            for (auto& row : b.row_entries) std::sort(row.begin(), row.end());
            jobs.push_back(j);
        }
        std::vector<Dim> results(jobs.size(), 0);
        run_jobs(jobs.size(), threads, [&](std::size_t idx) {
            results[idx] = exact_rank(blocks.at(jobs[idx]));
        });
        for (std::size_t idx = 0; idx < jobs.size(); ++idx) ranks[w][jobs[idx]] = results[idx];
    }

    HomologyTable table;
    table.flavor = HomologyTable::Flavor::unnormalized;
    for (std::size_t w = 0; w < cc.levels.size(); ++w) {
        for (const auto& [j, dimc] : counts[w]) {
            Dim h = dimc;
            if (auto it = ranks[w].find(j); it != ranks[w].end()) h -= it->second;
            if (w > 0)
                if (auto it = ranks[w - 1].find(j); it != ranks[w - 1].end()) h -= it->second;
            if (h < 0) fail(errc::internal, "negative homology dimension");
            if (h > 0) table.dims[{static_cast<int>(w), j}] = h;
        }
    }
    return table;
}

} // namespace khoval
