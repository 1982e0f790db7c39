#include "khoval/invariants.hpp"

#include "khoval/errors.hpp"

#include <bit>
#include <sstream>

namespace khoval {

const char* verdict_status_name(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::pass: return "pass";
        case Verdict::Status::fail: return "fail";
        case Verdict::Status::not_applicable: return "not_applicable";
        case Verdict::Status::skipped: return "skipped";
    }
    return "?";
}

Laurent graded_euler_characteristic(const HomologyTable& t) {
    Laurent e(PolyVar::q);
    for (const auto& [key, dim] : t.dims) {
        Rational c(dim);
        if (key.first % 2 != 0) c = -c;
        e.add_term(key.second, c);
    }
    return e;
}

Laurent jones_from_kh(const HomologyTable& t, int components) {
    if (t.flavor != HomologyTable::Flavor::normalized)
        fail(errc::internal, "jones_from_kh expects a normalized table");
    Laurent e = graded_euler_characteristic(t);
    Laurent divisor(PolyVar::q);
    divisor.add_term(1, 1);
    divisor.add_term(-1, 1);
    auto v = e.divided_exactly_by(divisor);
    if (!v)
        fail(errc::nondivisible_euler_characteristic,
             "graded Euler characteristic is not divisible by (q + 1/q); "
             "this indicates a homology computation bug");
    Laurent out = v->substituted_negated(PolyVar::sqrt_t);
    for (const auto& [exp, c] : out.terms())
        if (((exp - components + 1) % 2 + 2) % 2 != 0)
            fail(errc::internal, "Jones polynomial has the wrong exponent parity");
    return out;
}

Laurent jones_oracle(const Diagram& d, const OracleOptions& opt) {
    if (!d.has_signs) fail(errc::not_applicable, "oracle requires a signed diagram");
    const int n = d.crossing_count();
    if (n > opt.max_crossings)
        fail(errc::complexity_budget_exceeded,
             "diagram has " + std::to_string(n) + " crossings, oracle budget is " +
                 std::to_string(opt.max_crossings) + " (raise --oracle-max to override)");
    if (n > 30) fail(errc::complexity_budget_exceeded, "more than 30 crossings");

    // delta = -A^2 - A^-2; bracket state sum over the whole cube.
    const int max_circles = n + 1 + d.extra_unknot_components + 1;
    std::vector<Laurent> delta_pow(max_circles + 1, Laurent(PolyVar::A));
    delta_pow[0].add_term(0, 1);
    Laurent delta(PolyVar::A);
    delta.add_term(2, -1);
    delta.add_term(-2, -1);
    for (int k = 1; k <= max_circles; ++k) delta_pow[k] = delta_pow[k - 1] * delta;

    Laurent bracket(PolyVar::A);
    const std::uint64_t nstates = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < nstates; ++bits) {
        State st = resolve(d, static_cast<std::uint32_t>(bits));
        int ones = std::popcount(static_cast<std::uint32_t>(bits));
        if (st.circle_count < 1) fail(errc::internal, "smoothing with no circles");
        bracket += Laurent::monomial(PolyVar::A, 1, n - 2 * ones) * delta_pow[st.circle_count - 1];
    }

    // V = (-A)^{-3w} <D> at A = t^{-1/4}.
    const int w = d.writhe();
    Laurent x(PolyVar::A);
    for (const auto& [e, c] : bracket.terms()) x.add_term(e - 3 * w, w % 2 == 0 ? c : -c);

    Laurent v(PolyVar::sqrt_t);
    for (const auto& [e, c] : x.terms()) {
        if (e % 2 != 0) fail(errc::internal, "bracket exponent parity violated");
        v.add_term(-e / 2, c);
    }
    return v;
}

Rational genus_from_diagram(const Diagram& d) {
    if (!d.connected())
        fail(errc::not_applicable, "genus formula requires a connected diagram");
    PositivityClass pc = classify(d);
    if (pc.kind == PositivityClass::Kind::other)
        fail(errc::not_applicable, "diagram has more than one negative crossing");
    Rational g3d = canonical_genus(d);
    if (pc.kind == PositivityClass::Kind::almost_positive && pc.theorem_case == 2)
        return g3d - 1;
    return g3d;
}

long long rasmussen_from_diagram(const Diagram& d) {
    if (d.component_count() != 1)
        fail(errc::not_applicable, "Rasmussen formula requires a one-component diagram");
    if (!d.connected()) fail(errc::not_applicable, "Rasmussen formula requires a connected diagram");
    PositivityClass pc = classify(d);
    if (pc.kind == PositivityClass::Kind::other)
        fail(errc::not_applicable, "diagram has more than one negative crossing");
    Rational twice_g3 = 2 * canonical_genus(d);
    if (denominator(twice_g3) != 1) fail(errc::internal, "2*g3(D) is not an integer for a knot");
    long long s = static_cast<long long>(numerator(twice_g3));
    if (pc.kind == PositivityClass::Kind::almost_positive && pc.theorem_case == 2) s -= 2;
    return s;
}

Verdict check_lemma_vanishing(const Diagram& d, const HomologyTable& t) {
    Verdict v{"lemma_vanishing", Verdict::Status::not_applicable, ""};
    if (!d.connected() || !d.has_signs) return v;
    PositivityClass pc = classify(d);
    if (pc.kind != PositivityClass::Kind::almost_positive || pc.theorem_case != 1) return v;
    if (t.flavor != HomologyTable::Flavor::normalized)
        fail(errc::internal, "lemma check expects a normalized table");
    Rational jr = 2 * canonical_genus(d) + d.component_count() - 4;
    if (denominator(jr) != 1) fail(errc::internal, "vanishing degree is not an integer");
    int j = static_cast<int>(numerator(jr));
    Dim dim = t.dim(0, j);
    std::ostringstream os;
    os << "dim KH^{0," << j << "} = " << dim;
    v.details = os.str();
    v.status = dim == 0 ? Verdict::Status::pass : Verdict::Status::fail;
    return v;
}

Verdict check_support(long long s, const HomologyTable& t) {
    if (t.flavor != HomologyTable::Flavor::normalized)
        fail(errc::internal, "support check expects a normalized table");
    Verdict v{"kh0_support", Verdict::Status::not_applicable, ""};
    Dim lo = t.dim(0, static_cast<int>(s) - 1);
    Dim hi = t.dim(0, static_cast<int>(s) + 1);
    std::ostringstream os;
    os << "dim KH^{0,s-1} = " << lo << ", dim KH^{0,s+1} = " << hi << " (s = " << s << ")";
    v.details = os.str();
    v.status = (lo >= 1 && hi >= 1) ? Verdict::Status::pass : Verdict::Status::fail;
    return v;
}

Verdict check_crossing_change_bounds(const Diagram& d) {
    Verdict v{"crossing_change_bounds", Verdict::Status::not_applicable, ""};
    if (!d.has_signs || d.component_count() != 1 || !d.connected()) return v;
    PositivityClass pc = classify(d);
    if (pc.kind != PositivityClass::Kind::almost_positive) return v;

    Diagram plus = change_crossing(d, pc.negative_index);
    if (plus.n_minus != 0) fail(errc::internal, "crossing change did not yield a positive diagram");
    Rational twice_g3_plus = 2 * canonical_genus(plus);
    long long s_plus = static_cast<long long>(numerator(twice_g3_plus));
    long long s = rasmussen_from_diagram(d);
    Rational g3 = genus_from_diagram(d);

    bool ok = (s_plus - 2 <= s) && (s <= s_plus) &&
              (Rational(s < 0 ? -s : s) <= 2 * g3);
    std::ostringstream os;
    os << "s(K+) = " << s_plus << ", s = " << s << ", g3 = " << rational_to_string(g3);
    v.details = os.str();
    v.status = ok ? Verdict::Status::pass : Verdict::Status::fail;
    return v;
}

Verdict check_d_squared(const Diagram& d, const KhOptions& opt) {
    Verdict v{"d_squared_and_grading", Verdict::Status::skipped, ""};
    ChainComplex cc;
    try {
        cc = build_complex(d, opt);
    } catch (const Error& e) {
        if (e.code() == errc::complexity_budget_exceeded) {
            v.details = "diagram too large for the explicit complex";
            return v;
        }
        throw;
    }
    for (std::size_t w = 0; w < cc.levels.size(); ++w) {
        for (const auto& e : cc.levels[w].d) {
            if (cc.levels[w].gens[e.src].q != cc.levels[w + 1].gens[e.dst].q) {
                v.status = Verdict::Status::fail;
                v.details = "q-grading not preserved at level " + std::to_string(w);
                return v;
            }
        }
    }
    for (std::size_t w = 0; w + 2 < cc.levels.size(); ++w) {
        // images of level w+1 generators, grouped by source
        std::vector<std::vector<std::pair<Dim, int>>> adj(cc.levels[w + 1].gens.size());
        for (const auto& e : cc.levels[w + 1].d) adj[e.src].emplace_back(e.dst, e.coeff);
        std::vector<std::vector<std::pair<Dim, int>>> by_src(cc.levels[w].gens.size());
        for (const auto& e : cc.levels[w].d) by_src[e.src].emplace_back(e.dst, e.coeff);
        for (std::size_t g = 0; g < by_src.size(); ++g) {
            std::map<Dim, long long> acc;
            for (const auto& [mid, c1] : by_src[g])
                for (const auto& [dst, c2] : adj[mid]) acc[dst] += static_cast<long long>(c1) * c2;
            for (const auto& [dst, total] : acc) {
                if (total != 0) {
                    v.status = Verdict::Status::fail;
                    v.details = "d^2 != 0 at level " + std::to_string(w);
                    return v;
                }
            }
        }
    }
    v.status = Verdict::Status::pass;
    v.details = "all " + std::to_string(cc.levels.size()) + " levels";
    return v;
}

Verdict check_euler_vs_oracle(const Diagram& d, const KhOptions& kh_opt,
                              const OracleOptions& oracle_opt) {
    Verdict v{"euler_vs_oracle", Verdict::Status::skipped, ""};
    Laurent euler(PolyVar::q), rhs(PolyVar::q);
    try {
        euler = graded_euler_characteristic(kh(d, kh_opt));
        Laurent oracle_q = jones_oracle(d, oracle_opt).substituted_negated(PolyVar::q);
        Laurent unknot(PolyVar::q);
        unknot.add_term(1, 1);
        unknot.add_term(-1, 1);
        rhs = oracle_q * unknot;
    } catch (const Error& e) {
        if (e.code() == errc::complexity_budget_exceeded) {
            v.details = "budget exceeded";
            return v;
        }
        throw;
    }
    v.status = euler == rhs ? Verdict::Status::pass : Verdict::Status::fail;
    if (v.failed())
        v.details = "euler: " + euler.to_string() + " | (q+1/q)*oracle: " + rhs.to_string();
    return v;
}

std::vector<Verdict> run_verification(const Diagram& d0, const VerifyOptions& opt) {
    Diagram d = d0.has_signs ? d0 : derive_signs(d0);
    std::vector<Verdict> out;

    KhOptions d2_opt = opt.kh;
    d2_opt.max_crossings = std::min(opt.kh.max_crossings, opt.d2_cap);
    out.push_back(check_d_squared(d, d2_opt));
    out.push_back(check_euler_vs_oracle(d, opt.kh, opt.oracle));

    std::optional<HomologyTable> table;
    try {
        table = kh(d, opt.kh);
    } catch (const Error& e) {
        if (e.code() != errc::complexity_budget_exceeded) throw;
    }
    if (table) {
        out.push_back(check_lemma_vanishing(d, *table));
        if (d.component_count() == 1 && d.connected() && d.n_minus <= 1)
            out.push_back(check_support(rasmussen_from_diagram(d), *table));
    } else {
        out.push_back({"lemma_vanishing", Verdict::Status::skipped, "budget exceeded"});
        out.push_back({"kh0_support", Verdict::Status::skipped, "budget exceeded"});
    }
    out.push_back(check_crossing_change_bounds(d));
    return out;
}

InvariantReport report(const Diagram& d0, const ReportOptions& opt) {
    Diagram d = d0.has_signs ? d0 : derive_signs(d0);
    InvariantReport r;
    r.crossings = d.crossing_count();
    r.n_plus = d.n_plus;
    r.n_minus = d.n_minus;
    r.components = d.component_count();
    r.connected = d.connected();
    SeifertData sd = seifert(d);
    r.seifert_circles = sd.circle_count;
    r.cls = classify(d, sd);
    r.theorem_case = r.cls.theorem_case;

    try {
        r.g3_diagram = canonical_genus(d);
    } catch (const Error&) {
    }
    try {
        r.g3_link = genus_from_diagram(d);
    } catch (const Error&) {
    }
    try {
        r.s = rasmussen_from_diagram(d);
        r.g4 = Rational(*r.s, 2); // s = 2*g4 = 2*g3 where the formula applies
    } catch (const Error&) {
    }

    if (opt.with_homology) {
        try {
            r.kh_table = kh(d, opt.kh);
        } catch (const Error& e) {
            if (e.code() != errc::complexity_budget_exceeded) throw;
        }
    }
    if (r.kh_table) {
        if (opt.with_jones) r.jones_kh = jones_from_kh(*r.kh_table, r.components);
        for (const auto& [key, dim] : r.kh_table->dims)
            if (key.first == 0) r.kh0_support.push_back(key.second);
    }
    if (opt.with_jones) {
        try {
            r.jones_oracle_poly = jones_oracle(d, opt.oracle);
        } catch (const Error& e) {
            if (e.code() != errc::complexity_budget_exceeded) throw;
        }
    }

    if (r.jones_kh && r.jones_oracle_poly) {
        Verdict v{"jones_match", Verdict::Status::not_applicable, ""};
        bool ok = *r.jones_kh == *r.jones_oracle_poly;
        v.details = "kh: " + r.jones_kh->to_string() + " | oracle: " + r.jones_oracle_poly->to_string();
        v.status = ok ? Verdict::Status::pass : Verdict::Status::fail;
        r.checks.push_back(v);
    }
    if (r.kh_table) {
        r.checks.push_back(check_lemma_vanishing(d, *r.kh_table));
        if (r.s && r.components == 1) r.checks.push_back(check_support(*r.s, *r.kh_table));
    }
    r.checks.push_back(check_crossing_change_bounds(d));
    return r;
}

} // namespace khoval
