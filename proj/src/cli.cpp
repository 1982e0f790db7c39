#include "khoval/cli.hpp"

#include "khoval/complex.hpp"
#include "khoval/diagram.hpp"
#include "khoval/errors.hpp"
#include "khoval/fixtures.hpp"
#include "khoval/invariants.hpp"
#include "khoval/report_io.hpp"
#include "khoval/seifert.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace khoval {

namespace {

using Clock = std::chrono::steady_clock;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case errc::malformed_token:
        case errc::inconsistent_arcs:
        case errc::empty_input:
        case errc::orientation_conflict:
        case errc::generator_out_of_range:
        case errc::empty_word:
            return 2;
        case errc::not_applicable:
        case errc::disconnected_diagram:
            return 3;
        case errc::complexity_budget_exceeded:
            return 4;
        default:
            return 1;
    }
}

struct CommonOpts {
    std::string pd;
    std::string braid;
    int strands = 0;
    std::string file;
    bool raw = false;
    bool pretty = false;
    bool fixtures = false;
    int max_crossings = 18;
    int oracle_max = 20;
    int threads = 0;

    KhOptions kh_options() const { return {max_crossings, threads}; }
    OracleOptions oracle_options() const { return {oracle_max}; }
};

std::vector<int> parse_braid_word(const std::string& s) {
    std::vector<int> word;
    std::string piece;
    std::istringstream is(s);
    std::string normalized = s;
    for (char& ch : normalized)
        if (ch == ',') ch = ' ';
    std::istringstream in(normalized);
    while (in >> piece) {
        try {
            std::size_t used = 0;
            int v = std::stoi(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            word.push_back(v);
        } catch (const std::exception&) {
            fail(errc::malformed_token, "bad braid letter '" + piece + "'");
        }
    }
    return word;
}

std::string strip_comments(const std::string& text) {
    std::string out;
    bool in_comment = false;
    for (char ch : text) {
        if (ch == '#') in_comment = true;
        if (ch == '\n') in_comment = false;
        if (!in_comment) out.push_back(ch);
    }
    return out;
}

struct Input {
    std::string kind; // pd | braid | file
    std::string pd_text;
    std::vector<int> braid;
    int strands = 0;
    std::string path;
};

Input resolve_input(const CommonOpts& o) {
    int given = (!o.pd.empty()) + (!o.braid.empty() || o.strands > 0) + (!o.file.empty());
    if (given != 1)
        fail(errc::empty_input, "provide exactly one of --pd, --braid/--strands, or a file");
    Input in;
    if (!o.pd.empty()) {
        in.kind = "pd";
        in.pd_text = o.pd;
    } else if (!o.file.empty()) {
        in.kind = "file";
        in.path = o.file;
        std::ifstream f(o.file);
        if (!f) fail(errc::empty_input, "cannot open file '" + o.file + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        in.pd_text = strip_comments(ss.str());
    } else {
        in.kind = "braid";
        in.braid = parse_braid_word(o.braid);
        in.strands = o.strands > 0 ? o.strands : 1;
    }
    return in;
}

Diagram input_diagram(const Input& in) {
    if (in.kind == "braid") return braid_to_pd(in.braid, in.strands);
    return derive_signs(parse_pd(in.pd_text));
}

ReportDocument base_document(const std::string& command, const Input& in, const Diagram& d,
                             const CommonOpts& o) {
    ReportDocument doc;
    doc.command = command;
    doc.input_kind = in.kind;
    if (in.kind == "braid") {
        doc.input_braid = in.braid;
        doc.input_strands = in.strands;
    } else {
        doc.input_pd = in.pd_text;
        if (in.kind == "file") doc.input_path = in.path;
    }
    doc.crossings = d.crossing_count();
    doc.arcs = d.arc_count;
    doc.components = d.component_count();
    doc.unknot_components = d.extra_unknot_components;
    doc.n_plus = d.n_plus;
    doc.n_minus = d.n_minus;
    doc.writhe = d.writhe();
    doc.connected = d.connected();
    doc.max_crossings = o.max_crossings;
    doc.oracle_max = o.oracle_max;
    doc.threads = o.threads;
    return doc;
}

void emit(std::ostream& out, const ReportDocument& doc, bool pretty) {
    if (pretty) out << to_pretty_text(doc);
    else out << to_json_string(doc) << "\n";
}

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

int cmd_classify(const CommonOpts& o, std::ostream& out) {
    auto t0 = Clock::now();
    Input in = resolve_input(o);
    Diagram d = input_diagram(in);
    if (!d.connected())
        fail(errc::not_applicable,
             "diagram is disconnected; the genus dichotomy assumes a non-split link and "
             "this tool requires a connected diagram as its proxy");
    ReportOptions ropt{o.kh_options(), o.oracle_options(), false, false};
    InvariantReport r = report(d, ropt);
    ReportDocument doc = base_document("classify", in, d, o);
    fill_from_report(doc, r);
    doc.elapsed_ms = ms_since(t0);
    emit(out, doc, o.pretty);
    return 0;
}

int cmd_homology(const CommonOpts& o, std::ostream& out) {
    auto t0 = Clock::now();
    Input in = resolve_input(o);
    Diagram d = input_diagram(in);
    HomologyTable raw = kh_unnormalized(d, o.kh_options());
    HomologyTable norm = normalize(raw, d.n_plus, d.n_minus);
    ReportOptions ropt{o.kh_options(), o.oracle_options(), false, false};
    InvariantReport r = report(d, ropt);
    r.kh_table = norm;
    ReportDocument doc = base_document("homology", in, d, o);
    fill_from_report(doc, r);
    doc.homology = table_doc(norm);
    std::vector<int> support;
    for (const auto& [key, dim] : norm.dims)
        if (key.first == 0) support.push_back(key.second);
    doc.kh0_support = support;
    if (o.raw) doc.homology_raw = table_doc(raw);
    doc.elapsed_ms = ms_since(t0);
    emit(out, doc, o.pretty);
    return 0;
}

int cmd_jones(const CommonOpts& o, std::ostream& out) {
    auto t0 = Clock::now();
    Input in = resolve_input(o);
    Diagram d = input_diagram(in);
    ReportOptions ropt{o.kh_options(), o.oracle_options(), true, true};
    InvariantReport r = report(d, ropt);
    ReportDocument doc = base_document("jones", in, d, o);
    fill_from_report(doc, r);
    doc.homology.reset(); // keep the jones output focused
    doc.elapsed_ms = ms_since(t0);
    emit(out, doc, o.pretty);
    return 0;
}

int cmd_rasmussen(const CommonOpts& o, std::ostream& out) {
    auto t0 = Clock::now();
    Input in = resolve_input(o);
    Diagram d = input_diagram(in);
    long long s = rasmussen_from_diagram(d); // throws NotApplicable -> exit 3
    ReportOptions ropt{o.kh_options(), o.oracle_options(), false, false};
    InvariantReport r = report(d, ropt);
    r.s = s;
    ReportDocument doc = base_document("rasmussen", in, d, o);
    fill_from_report(doc, r);
    doc.elapsed_ms = ms_since(t0);
    emit(out, doc, o.pretty);
    return 0;
}

nlohmann::json verdict_json(const Verdict& v) {
    return nlohmann::json{
        {"name", v.name}, {"status", verdict_status_name(v.status)}, {"details", v.details}};
}

std::vector<Verdict> fixture_regression(const Fixture& f, const Diagram& d,
                                        const VerifyOptions& vopt) {
    std::vector<Verdict> out;
    if (!f.expected) return out;
    const FixtureExpected& exp = *f.expected;
    Verdict v{"expected_regression", Verdict::Status::pass, ""};
    std::ostringstream mismatch;

    PositivityClass pc = classify(d);
    std::string cls = pc.kind == PositivityClass::Kind::positive ? "positive"
                      : pc.kind == PositivityClass::Kind::almost_positive ? "almost_positive"
                                                                          : "other";
    if (cls != exp.cls) mismatch << "class " << cls << " != " << exp.cls << "; ";
    if (exp.theorem_case && pc.theorem_case != *exp.theorem_case)
        mismatch << "case " << pc.theorem_case << " != " << *exp.theorem_case << "; ";
    if (exp.g3_diagram && canonical_genus(d) != *exp.g3_diagram) mismatch << "g3(D) mismatch; ";
    if (exp.s) {
        long long s = rasmussen_from_diagram(d);
        if (s != *exp.s) mismatch << "s " << s << " != " << *exp.s << "; ";
    }
    if (exp.jones_sqrt_t) {
        Laurent expected(PolyVar::sqrt_t);
        for (const auto& [e, c] : *exp.jones_sqrt_t) expected.add_term(e, c);
        if (!(jones_oracle(d, vopt.oracle) == expected)) mismatch << "jones mismatch; ";
    }
    if (exp.kh) {
        HomologyTable expected;
        expected.flavor = HomologyTable::Flavor::normalized;
        expected.n_plus = d.n_plus;
        expected.n_minus = d.n_minus;
        for (const auto& [i, j, dim] : *exp.kh) expected.dims[{i, j}] = dim;
        if (!(kh(d, vopt.kh) == expected)) mismatch << "kh table mismatch; ";
    }
    if (!mismatch.str().empty()) {
        v.status = Verdict::Status::fail;
        v.details = mismatch.str();
    }
    out.push_back(v);
    return out;
}

int cmd_verify(const CommonOpts& o, std::ostream& out) {
    auto t0 = Clock::now();
    VerifyOptions vopt{o.kh_options(), o.oracle_options(), 12};

    if (o.fixtures) {
        const auto& cat = fixture_catalog();
        std::map<std::string, std::array<long long, 4>> tally; // pass, fail, na, skipped
        nlohmann::json failures = nlohmann::json::array();
        for (const auto& f : cat) {
            Diagram d = fixture_diagram(f);
            std::vector<Verdict> verdicts = run_verification(d, vopt);
            auto extra = fixture_regression(f, d, vopt);
            verdicts.insert(verdicts.end(), extra.begin(), extra.end());
            for (const auto& v : verdicts) {
                auto& t = tally[v.name];
                switch (v.status) {
                    case Verdict::Status::pass: ++t[0]; break;
                    case Verdict::Status::fail: ++t[1]; break;
                    case Verdict::Status::not_applicable: ++t[2]; break;
                    case Verdict::Status::skipped: ++t[3]; break;
                }
                if (v.failed()) {
                    nlohmann::json fj = verdict_json(v);
                    fj["fixture"] = f.id;
                    failures.push_back(fj);
                }
            }
        }
        bool any_fail = !failures.empty();
        if (o.pretty) {
            out << "verified " << cat.size() << " fixtures\n";
            for (const auto& [name, t] : tally)
                out << "  " << name << ": " << t[0] << " pass, " << t[1] << " fail, " << t[2]
                    << " n/a, " << t[3] << " skipped\n";
            for (const auto& fj : failures)
                out << "  FAIL " << fj["fixture"].get<std::string>() << " "
                    << fj["name"].get<std::string>() << ": " << fj["details"].get<std::string>()
                    << "\n";
            out << (any_fail ? "FAIL" : "PASS") << "\n";
        } else {
            nlohmann::json jt = nlohmann::json::object();
            for (const auto& [name, t] : tally)
                jt[name] = {{"pass", t[0]}, {"fail", t[1]}, {"not_applicable", t[2]},
                            {"skipped", t[3]}};
            nlohmann::json doc{{"command", "verify"},
                               {"fixtures", cat.size()},
                               {"checks", jt},
                               {"failures", failures},
                               {"ok", !any_fail},
                               {"elapsed_ms", ms_since(t0)}};
            out << doc.dump() << "\n";
        }
        return any_fail ? 1 : 0;
    }

    Input in = resolve_input(o);
    Diagram d = input_diagram(in);
    std::vector<Verdict> verdicts = run_verification(d, vopt);
    bool any_fail = false;
    for (const auto& v : verdicts) any_fail = any_fail || v.failed();

    ReportDocument doc = base_document("verify", in, d, o);
    for (const auto& v : verdicts) doc.checks.push_back(check_doc(v));
    doc.elapsed_ms = ms_since(t0);
    emit(out, doc, o.pretty);
    return any_fail ? 1 : 0;
}

int cmd_fixtures(const CommonOpts& o, std::ostream& out) {
    const auto& cat = fixture_catalog();
    if (o.pretty) {
        for (const auto& f : cat) {
            out << f.id << ": ";
            if (f.is_braid()) {
                out << "braid [";
                for (std::size_t i = 0; i < f.braid.size(); ++i)
                    out << (i ? " " : "") << f.braid[i];
                out << "] on " << f.strands << " strands";
            } else {
                out << f.pd;
            }
            out << (f.expected ? "  (frozen expectations)" : "") << "\n";
        }
        return 0;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : cat) {
        nlohmann::json fj{{"id", f.id}};
        if (f.is_braid()) {
            fj["braid"] = f.braid;
            fj["strands"] = f.strands;
        } else {
            fj["pd"] = f.pd;
        }
        fj["has_expected"] = f.expected.has_value();
        arr.push_back(fj);
    }
    out << nlohmann::json{{"command", "fixtures"}, {"fixtures", arr}}.dump() << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact rational Khovanov homology with positivity-aware knot invariants"};
    app.require_subcommand(1);

    CommonOpts o;
    auto add_common = [&](CLI::App* cmd, bool with_raw, bool with_fixtures) {
        cmd->add_option("--pd", o.pd, "PD text, e.g. \"X(1,1,2,2)\" or \"O\"");
        cmd->add_option("--braid", o.braid, "braid word, e.g. \"1 1 -1\"");
        cmd->add_option("--strands", o.strands, "strand count for --braid");
        cmd->add_option("file", o.file, "input file holding PD text (# comments allowed)");
        cmd->add_flag("--pretty", o.pretty, "human-readable output instead of JSON");
        cmd->add_option("--max-crossings", o.max_crossings, "homology crossing budget")
            ->capture_default_str();
        cmd->add_option("--oracle-max", o.oracle_max, "Kauffman bracket crossing budget")
            ->capture_default_str();
        cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)")
            ->capture_default_str();
        if (with_raw) cmd->add_flag("--raw", o.raw, "also emit the unnormalized table");
        if (with_fixtures)
            cmd->add_flag("--fixtures", o.fixtures, "run every embedded fixture");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "positivity class and diagram genus");
    add_common(classify_cmd, false, false);
    CLI::App* homology_cmd = app.add_subcommand("homology", "Khovanov homology table");
    add_common(homology_cmd, true, false);
    CLI::App* jones_cmd = app.add_subcommand("jones", "Jones polynomial, two ways");
    add_common(jones_cmd, false, false);
    CLI::App* rasmussen_cmd = app.add_subcommand("rasmussen", "Rasmussen invariant from the diagram");
    add_common(rasmussen_cmd, false, false);
    CLI::App* verify_cmd = app.add_subcommand("verify", "consistency checks (CI gate)");
    add_common(verify_cmd, false, true);
    CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "list the embedded fixture catalog");
    fixtures_cmd->add_flag("--pretty", o.pretty, "human-readable output instead of JSON");

    std::vector<const char*> argv;
    argv.push_back("khoval");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream dummy;
        int code = app.exit(e, out, err);
        return e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ? code : 2;
    }

    try {
        if (app.got_subcommand(classify_cmd)) return cmd_classify(o, out);
        if (app.got_subcommand(homology_cmd)) return cmd_homology(o, out);
        if (app.got_subcommand(jones_cmd)) return cmd_jones(o, out);
        if (app.got_subcommand(rasmussen_cmd)) return cmd_rasmussen(o, out);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(o, out);
        if (app.got_subcommand(fixtures_cmd)) return cmd_fixtures(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace khoval
