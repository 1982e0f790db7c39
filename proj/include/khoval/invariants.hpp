#pragma once

#include "khoval/complex.hpp"
#include "khoval/diagram.hpp"
#include "khoval/laurent.hpp"
#include "khoval/seifert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace khoval {

struct Verdict {
    enum class Status { pass, fail, not_applicable, skipped };
    std::string name;
    Status status = Status::not_applicable;
    std::string details;

    bool failed() const { return status == Status::fail; }
};

const char* verdict_status_name(Verdict::Status s);

// Graded Euler characteristic sum((-1)^i q^j dim) of a normalized table.
Laurent graded_euler_characteristic(const HomologyTable& t);

// Jones polynomial from Khovanov homology: divide the graded Euler
// characteristic exactly by (q + q^-1) and substitute q = -t^(1/2).
Laurent jones_from_kh(const HomologyTable& t, int components);

struct OracleOptions {
    int max_crossings = 20;
};

// Independent Jones polynomial via the Kauffman bracket state sum over all
// 2^n smoothings, with the writhe normalization (-A)^{-3w} and t = A^-4.
Laurent jones_oracle(const Diagram& d, const OracleOptions& opt = {});

// g3 of the underlying link for positive and almost positive diagrams
// (genus dichotomy: Case 1 keeps g3(D), Case 2 drops by one).
Rational genus_from_diagram(const Diagram& d);

// Rasmussen invariant of the knot of a connected one-component diagram with
// at most one negative crossing: 2*g3(D) in the positive and Case 1 almost
// positive cases, 2*g3(D) - 2 in Case 2.
long long rasmussen_from_diagram(const Diagram& d);

// KH^{0, 2*g3(D) + #L - 4} must vanish for Case 1 almost positive diagrams.
Verdict check_lemma_vanishing(const Diagram& d, const HomologyTable& t);

// KH^{0, s-1} and KH^{0, s+1} must both be nonzero for a knot.
Verdict check_support(long long s, const HomologyTable& t);

// s(K+) - 2 <= s(K) <= s(K+) for the crossing change at the negative
// crossing, and |s| <= 2*g3.
Verdict check_crossing_change_bounds(const Diagram& d);

// d o d = 0 and q-grading preservation on the explicit complex.
Verdict check_d_squared(const Diagram& d, const KhOptions& opt = {});

// Graded Euler characteristic of kh(d) equals (q + q^-1) times the oracle
// Jones polynomial under t^(1/2) -> -q, coefficient by coefficient.
Verdict check_euler_vs_oracle(const Diagram& d, const KhOptions& kh_opt = {},
                              const OracleOptions& oracle_opt = {});

struct VerifyOptions {
    KhOptions kh;
    OracleOptions oracle;
    int d2_cap = 12; // explicit-complex checks are skipped above this size
};

// Every applicable consistency check for one diagram.
std::vector<Verdict> run_verification(const Diagram& d, const VerifyOptions& opt = {});

struct ReportOptions {
    KhOptions kh;
    OracleOptions oracle;
    bool with_homology = true;
    bool with_jones = true;
};

struct InvariantReport {
    PositivityClass cls;
    int crossings = 0;
    int n_plus = 0, n_minus = 0;
    int components = 0;
    bool connected = false;
    int seifert_circles = 0;
    std::optional<Rational> g3_diagram;
    int theorem_case = 0; // 0 = not applicable
    std::optional<Rational> g3_link;
    std::optional<Rational> g4;
    std::optional<long long> s;
    std::optional<HomologyTable> kh_table; // normalized
    std::optional<Laurent> jones_kh;
    std::optional<Laurent> jones_oracle_poly;
    std::vector<int> kh0_support; // q-degrees with nonzero KH^{0,q}
    std::vector<Verdict> checks;
};

// Full pipeline over one diagram; fields that are out of budget or out of
// scope stay unset, the report itself never fails.
InvariantReport report(const Diagram& d, const ReportOptions& opt = {});

} // namespace khoval
