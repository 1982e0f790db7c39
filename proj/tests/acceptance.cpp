// Acceptance suite: one line per criterion, exit code = number of failures.
#include "khoval/complex.hpp"
#include "khoval/diagram.hpp"
#include "khoval/fixtures.hpp"
#include "khoval/invariants.hpp"
#include "khoval/laurent.hpp"
#include "khoval/seifert.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

using namespace khoval;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void result(int criterion, const std::string& name, bool pass, double elapsed,
            const std::string& note = "") {
    std::printf("%s  %2d. %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                elapsed, note.empty() ? "" : " -- ", note.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double peak_rss_gib() {
    struct rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<double>(ru.ru_maxrss) / (1024.0 * 1024.0); // KiB on Linux
}

HomologyTable dims_only(HomologyTable t) {
    t.n_plus = t.n_minus = 0;
    return t;
}

void criterion_1() {
    auto t0 = Clock::now();
    HomologyTable expected;
    expected.flavor = HomologyTable::Flavor::normalized;
    expected.dims[{0, 1}] = 1;
    expected.dims[{0, -1}] = 1;
    bool pass = true;
    std::string note;
    std::vector<Diagram> unknots{derive_signs(parse_pd("O")), derive_signs(parse_pd("X(1,1,2,2)")),
                                 braid_to_pd({1, 1, -1}, 2)};
    for (const auto& d : unknots) {
        auto t1 = Clock::now();
        if (!(dims_only(kh(d)) == expected)) {
            pass = false;
            note = "wrong table";
        }
        if (seconds_since(t1) >= 1.0) {
            pass = false;
            note = "single unknot took over 1 s";
        }
    }
    result(1, "unknot normalization", pass, seconds_since(t0), note);
}

void criterion_2() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string note;
    long checked = 0;
    Laurent unknot_factor(PolyVar::q);
    unknot_factor.add_term(1, 1);
    unknot_factor.add_term(-1, 1);
    for (const auto& f : fixture_catalog()) {
        Diagram d = fixture_diagram(f);
        if (d.crossing_count() > 14) continue;
        Laurent euler = graded_euler_characteristic(kh(d));
        Laurent rhs = jones_oracle(d).substituted_negated(PolyVar::q) * unknot_factor;
        if (!(euler == rhs)) {
            pass = false;
            note = "mismatch on fixture " + f.id;
            break;
        }
        ++checked;
    }
    double el = seconds_since(t0);
    if (el >= 300.0) {
        pass = false;
        note = "sweep exceeded 5 minutes";
    }
    result(2, "Jones cross-validation over " + std::to_string(checked) + " fixtures", pass, el,
           note);
}

void criterion_3() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string note;
    long checked = 0;
    for (const auto& f : fixture_catalog()) {
        Diagram d = fixture_diagram(f);
        if (d.crossing_count() > 10) continue;
        Verdict v = check_d_squared(d);
        if (v.status != Verdict::Status::pass) {
            pass = false;
            note = "fixture " + f.id + ": " + v.details;
            break;
        }
        ++checked;
    }
    double el = seconds_since(t0);
    if (el >= 60.0) {
        pass = false;
        note = "sweep exceeded 1 minute";
    }
    result(3, "d^2 = 0 and grading over " + std::to_string(checked) + " fixtures", pass, el, note);
}

void criterion_4() {
    auto t0 = Clock::now();
    Diagram d = braid_to_pd({1, 1, -1}, 2);
    bool pass = rasmussen_from_diagram(d) == 0 && genus_from_diagram(d) == 0;
    result(4, "case-2 sanity (closure of s1 s1 s1^-1)", pass, seconds_since(t0));
}

void criterion_5() {
    auto t0 = Clock::now();
    Diagram trefoil = braid_to_pd({1, 1, 1}, 2);
    Diagram d = add_negative_kink(trefoil, 1);
    Rational twice_g3 = 2 * canonical_genus(trefoil);
    bool pass = rasmussen_from_diagram(d) == 2 && Rational(rasmussen_from_diagram(d)) == twice_g3;
    result(5, "case-1 sanity (trefoil plus negative kink)", pass, seconds_since(t0));
}

void criterion_6() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string note;
    long checked = 0;
    for (const auto& f : fixture_catalog()) {
        Diagram d = fixture_diagram(f);
        if (d.crossing_count() > 14 || !d.connected()) continue;
        PositivityClass pc = classify(d);
        if (pc.kind != PositivityClass::Kind::almost_positive || pc.theorem_case != 1) continue;
        Verdict v = check_lemma_vanishing(d, kh(d));
        if (v.status != Verdict::Status::pass) {
            pass = false;
            note = "fixture " + f.id + ": " + v.details;
            break;
        }
        ++checked;
    }
    result(6, "lemma vanishing over " + std::to_string(checked) + " case-1 fixtures", pass,
           seconds_since(t0), note);
}

void criterion_7() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string note;
    long checked = 0;
    for (const auto& f : fixture_catalog()) {
        Diagram d = fixture_diagram(f);
        if (d.crossing_count() > 14 || d.component_count() != 1 || !d.connected() || d.n_minus > 1)
            continue;
        Verdict v = check_support(rasmussen_from_diagram(d), kh(d));
        if (v.status != Verdict::Status::pass) {
            pass = false;
            note = "fixture " + f.id + ": " + v.details;
            break;
        }
        ++checked;
    }
    result(7, "KH^{0,s+-1} support over " + std::to_string(checked) + " fixtures", pass,
           seconds_since(t0), note);
}

void criterion_8() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string note;
    long checked = 0;
    for (const auto& f : fixture_catalog()) {
        Diagram d = fixture_diagram(f);
        if (d.component_count() != 1 || !d.connected() || d.n_minus != 1) continue;
        Verdict v = check_crossing_change_bounds(d);
        if (v.status != Verdict::Status::pass) {
            pass = false;
            note = "fixture " + f.id + ": " + v.details;
            break;
        }
        ++checked;
    }
    result(8, "crossing-change bounds over " + std::to_string(checked) + " fixtures", pass,
           seconds_since(t0), note);
}

void criterion_9() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string note;
    long checked = 0;
    for (const auto& f : fixture_catalog()) {
        Diagram d = fixture_diagram(f);
        int n = d.crossing_count();
        if (n > 10) continue;
        HomologyTable base = kh(d);
        if (n >= 2) {
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::rotate(perm.begin(), perm.begin() + 1, perm.end());
            if (!(kh(reorder_crossings(d, perm)) == base)) {
                pass = false;
                note = "reordering changed kh on " + f.id;
                break;
            }
        }
        Diagram kinked = add_positive_kink(d, d.arc_count >= 1 ? 1 : 0);
        if (!(dims_only(kh(kinked)) == dims_only(base))) {
            pass = false;
            note = "positive kink changed kh on " + f.id;
            break;
        }
        ++checked;
    }
    result(9, "invariance sampling over " + std::to_string(checked) + " fixtures", pass,
           seconds_since(t0), note);
}

void criterion_10() {
    auto t0 = Clock::now();
    // torus knot T(3,8): a 16-crossing positive one-component diagram
    std::vector<int> word;
    for (int k = 0; k < 8; ++k) {
        word.push_back(1);
        word.push_back(2);
    }
    Diagram d = braid_to_pd(word, 3);
    bool pass = d.crossing_count() == 16 && d.component_count() == 1;
    std::string note;

    KhOptions defaults;
    HomologyTable table = kh(d, defaults);
    double el = seconds_since(t0);
    double rss = peak_rss_gib();
    if (el >= 600.0) {
        pass = false;
        note = "exceeded 10 minutes";
    }
    if (rss >= 8.0) {
        pass = false;
        note = "exceeded 8 GiB (" + std::to_string(rss) + ")";
    }

    KhOptions one;
    one.threads = 1;
    KhOptions many;
    many.threads = 4;
    if (!(kh(d, one) == table) || !(kh(d, many) == table)) {
        pass = false;
        note = "thread count changed the table";
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "kh in %.1f s, peak rss %.2f GiB, dim %lld", el, rss,
                  static_cast<long long>(table.total()));
    result(10, "16-crossing budget and determinism", pass, seconds_since(t0),
           note.empty() ? buf : note);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%s (%d criteria failed)\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures;
}
