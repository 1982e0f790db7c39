#pragma once

#include "khoval/invariants.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace khoval {

// Flat, serialization-friendly view of one CLI invocation's results. All
// optional fields serialize as null; the JSON round-trips byte-identically.
struct PolyDoc {
    std::string variable;
    std::map<int, std::string> coefficients; // exponent -> exact rational

    bool operator==(const PolyDoc&) const = default;
};

struct CheckDoc {
    std::string name, status, details;

    bool operator==(const CheckDoc&) const = default;
};

struct TableEntryDoc {
    int i = 0, j = 0;
    long long dim = 0;

    bool operator==(const TableEntryDoc&) const = default;
};

struct ReportDocument {
    int schema_version = 1;
    std::string command;

    std::string input_kind; // "pd" | "braid" | "file"
    std::optional<std::string> input_pd;
    std::optional<std::vector<int>> input_braid;
    std::optional<int> input_strands;
    std::optional<std::string> input_path;

    int crossings = 0, arcs = 0, components = 0, unknot_components = 0;
    int n_plus = 0, n_minus = 0, writhe = 0;
    bool connected = false;

    std::optional<std::string> positivity;
    std::optional<int> negative_crossing; // 1-based
    std::optional<int> theorem_case;
    bool negative_pair_is_self = false;
    std::optional<int> seifert_circles;
    std::optional<std::string> g3_diagram;

    std::optional<std::string> g3_link;
    std::optional<std::string> g4;
    std::optional<long long> s;
    std::optional<std::string> formula;

    std::optional<PolyDoc> jones_from_homology;
    std::optional<PolyDoc> jones_oracle;
    std::optional<bool> jones_match;

    std::optional<std::vector<TableEntryDoc>> homology; // normalized, sorted by (i, j)
    std::optional<std::vector<TableEntryDoc>> homology_raw;
    std::optional<std::vector<int>> kh0_support;

    std::vector<CheckDoc> checks;

    long long elapsed_ms = 0;
    int max_crossings = 0, oracle_max = 0, threads = 0;

    bool operator==(const ReportDocument&) const = default;
};

PolyDoc poly_doc(const Laurent& p);
std::vector<TableEntryDoc> table_doc(const HomologyTable& t);
CheckDoc check_doc(const Verdict& v);

// Fill the diagram/classification/invariant sections from a report.
void fill_from_report(ReportDocument& doc, const InvariantReport& r);

std::string to_json_string(const ReportDocument& doc, bool pretty = false);
ReportDocument report_document_from_json(const std::string& text);

// Human-readable rendering for --pretty.
std::string to_pretty_text(const ReportDocument& doc);

} // namespace khoval
