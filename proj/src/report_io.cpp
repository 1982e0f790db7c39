#include "khoval/report_io.hpp"

#include "khoval/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace khoval {

using nlohmann::json;

namespace {

template <class T>
json opt_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    return json(*v);
}

json poly_json(const std::optional<PolyDoc>& p) {
    if (!p) return nullptr;
    json coeffs = json::object();
    for (const auto& [e, c] : p->coefficients) coeffs[std::to_string(e)] = c;
    return json{{"variable", p->variable}, {"coefficients", coeffs}};
}

std::optional<PolyDoc> poly_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    PolyDoc p;
    p.variable = j.at("variable").get<std::string>();
    for (const auto& [k, v] : j.at("coefficients").items())
        p.coefficients[std::stoi(k)] = v.get<std::string>();
    return p;
}

json table_json(const std::optional<std::vector<TableEntryDoc>>& t) {
    if (!t) return nullptr;
    json arr = json::array();
    for (const auto& e : *t) arr.push_back(json{{"i", e.i}, {"j", e.j}, {"dim", e.dim}});
    return arr;
}

std::optional<std::vector<TableEntryDoc>> table_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    std::vector<TableEntryDoc> t;
    for (const auto& e : j)
        t.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("dim").get<long long>()});
    return t;
}

template <class T>
std::optional<T> opt_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

} // namespace

PolyDoc poly_doc(const Laurent& p) {
    PolyDoc d;
    d.variable = poly_var_name(p.var());
    for (const auto& [e, c] : p.terms()) d.coefficients[e] = rational_to_string(c);
    return d;
}

std::vector<TableEntryDoc> table_doc(const HomologyTable& t) {
    std::vector<TableEntryDoc> out;
    out.reserve(t.dims.size());
    for (const auto& [key, dim] : t.dims) out.push_back({key.first, key.second, dim});
    return out;
}

CheckDoc check_doc(const Verdict& v) { return {v.name, verdict_status_name(v.status), v.details}; }

void fill_from_report(ReportDocument& doc, const InvariantReport& r) {
    doc.crossings = r.crossings;
    doc.components = r.components;
    doc.n_plus = r.n_plus;
    doc.n_minus = r.n_minus;
    doc.writhe = r.n_plus - r.n_minus;
    doc.connected = r.connected;
    switch (r.cls.kind) {
        case PositivityClass::Kind::positive: doc.positivity = "positive"; break;
        case PositivityClass::Kind::almost_positive: doc.positivity = "almost_positive"; break;
        case PositivityClass::Kind::other: doc.positivity = "other"; break;
    }
    if (r.cls.kind == PositivityClass::Kind::almost_positive) {
        doc.negative_crossing = r.cls.negative_index + 1;
        doc.theorem_case = r.cls.theorem_case;
        doc.negative_pair_is_self = r.cls.negative_pair_is_self;
    }
    doc.seifert_circles = r.seifert_circles;
    if (r.g3_diagram) doc.g3_diagram = rational_to_string(*r.g3_diagram);
    if (r.g3_link) doc.g3_link = rational_to_string(*r.g3_link);
    if (r.g4) doc.g4 = rational_to_string(*r.g4);
    doc.s = r.s;
    if (r.s) {
        switch (r.cls.kind) {
            case PositivityClass::Kind::positive:
                doc.formula = "s = 2*g3(D) (positive diagram)";
                break;
            case PositivityClass::Kind::almost_positive:
                doc.formula = r.cls.theorem_case == 1 ? "s = 2*g3(D) (case 1)"
                                                      : "s = 2*g3(D) - 2 (case 2)";
                break;
            default: break;
        }
    }
    if (r.jones_kh) doc.jones_from_homology = poly_doc(*r.jones_kh);
    if (r.jones_oracle_poly) doc.jones_oracle = poly_doc(*r.jones_oracle_poly);
    for (const auto& v : r.checks) {
        if (v.name == "jones_match" && v.status != Verdict::Status::not_applicable)
            doc.jones_match = v.status == Verdict::Status::pass;
        doc.checks.push_back(check_doc(v));
    }
    if (r.kh_table) doc.homology = table_doc(*r.kh_table);
    if (!r.kh0_support.empty() || r.kh_table) doc.kh0_support = r.kh0_support;
}

std::string to_json_string(const ReportDocument& d, bool pretty) {
    json j{
        {"schema_version", d.schema_version},
        {"command", d.command},
        {"input",
         {{"kind", d.input_kind},
          {"pd", opt_json(d.input_pd)},
          {"braid", opt_json(d.input_braid)},
          {"strands", opt_json(d.input_strands)},
          {"path", opt_json(d.input_path)}}},
        {"diagram",
         {{"crossings", d.crossings},
          {"arcs", d.arcs},
          {"components", d.components},
          {"unknot_components", d.unknot_components},
          {"n_plus", d.n_plus},
          {"n_minus", d.n_minus},
          {"writhe", d.writhe},
          {"connected", d.connected}}},
        {"classification",
         {{"positivity", opt_json(d.positivity)},
          {"negative_crossing", opt_json(d.negative_crossing)},
          {"theorem_case", opt_json(d.theorem_case)},
          {"negative_pair_is_self", d.negative_pair_is_self},
          {"seifert_circles", opt_json(d.seifert_circles)},
          {"g3_diagram", opt_json(d.g3_diagram)}}},
        {"invariants",
         {{"g3_link", opt_json(d.g3_link)},
          {"g4", opt_json(d.g4)},
          {"s", opt_json(d.s)},
          {"formula", opt_json(d.formula)}}},
        {"jones",
         {{"from_homology", poly_json(d.jones_from_homology)},
          {"oracle", poly_json(d.jones_oracle)},
          {"match", opt_json(d.jones_match)}}},
        {"homology", table_json(d.homology)},
        {"homology_raw", table_json(d.homology_raw)},
        {"kh0_support", opt_json(d.kh0_support)},
        {"checks", json::array()},
        {"meta",
         {{"elapsed_ms", d.elapsed_ms},
          {"max_crossings", d.max_crossings},
          {"oracle_max", d.oracle_max},
          {"threads", d.threads}}},
    };
    for (const auto& c : d.checks)
        j["checks"].push_back(json{{"name", c.name}, {"status", c.status}, {"details", c.details}});
    return pretty ? j.dump(2) : j.dump();
}

ReportDocument report_document_from_json(const std::string& text) {
    json j = json::parse(text);
    ReportDocument d;
    d.schema_version = j.at("schema_version").get<int>();
    d.command = j.at("command").get<std::string>();
    const json& in = j.at("input");
    d.input_kind = in.at("kind").get<std::string>();
    d.input_pd = opt_from<std::string>(in.at("pd"));
    d.input_braid = opt_from<std::vector<int>>(in.at("braid"));
    d.input_strands = opt_from<int>(in.at("strands"));
    d.input_path = opt_from<std::string>(in.at("path"));
    const json& dg = j.at("diagram");
    d.crossings = dg.at("crossings").get<int>();
    d.arcs = dg.at("arcs").get<int>();
    d.components = dg.at("components").get<int>();
    d.unknot_components = dg.at("unknot_components").get<int>();
    d.n_plus = dg.at("n_plus").get<int>();
    d.n_minus = dg.at("n_minus").get<int>();
    d.writhe = dg.at("writhe").get<int>();
    d.connected = dg.at("connected").get<bool>();
    const json& cl = j.at("classification");
    d.positivity = opt_from<std::string>(cl.at("positivity"));
    d.negative_crossing = opt_from<int>(cl.at("negative_crossing"));
    d.theorem_case = opt_from<int>(cl.at("theorem_case"));
    d.negative_pair_is_self = cl.at("negative_pair_is_self").get<bool>();
    d.seifert_circles = opt_from<int>(cl.at("seifert_circles"));
    d.g3_diagram = opt_from<std::string>(cl.at("g3_diagram"));
    const json& inv = j.at("invariants");
    d.g3_link = opt_from<std::string>(inv.at("g3_link"));
    d.g4 = opt_from<std::string>(inv.at("g4"));
    d.s = opt_from<long long>(inv.at("s"));
    d.formula = opt_from<std::string>(inv.at("formula"));
    const json& jo = j.at("jones");
    d.jones_from_homology = poly_from(jo.at("from_homology"));
    d.jones_oracle = poly_from(jo.at("oracle"));
    d.jones_match = opt_from<bool>(jo.at("match"));
    d.homology = table_from(j.at("homology"));
    d.homology_raw = table_from(j.at("homology_raw"));
    d.kh0_support = opt_from<std::vector<int>>(j.at("kh0_support"));
    for (const auto& c : j.at("checks"))
        d.checks.push_back({c.at("name").get<std::string>(), c.at("status").get<std::string>(),
                            c.at("details").get<std::string>()});
    const json& meta = j.at("meta");
    d.elapsed_ms = meta.at("elapsed_ms").get<long long>();
    d.max_crossings = meta.at("max_crossings").get<int>();
    d.oracle_max = meta.at("oracle_max").get<int>();
    d.threads = meta.at("threads").get<int>();
    return d;
}

std::string to_pretty_text(const ReportDocument& d) {
    std::ostringstream os;
    os << "khoval " << d.command << "\n";
    os << "  input: ";
    if (d.input_kind == "braid" && d.input_braid) {
        os << "braid [";
        for (std::size_t i = 0; i < d.input_braid->size(); ++i)
            os << (i ? " " : "") << (*d.input_braid)[i];
        os << "] on " << d.input_strands.value_or(0) << " strands";
    } else if (d.input_pd) {
        os << d.input_pd.value();
    } else if (d.input_path) {
        os << "file " << *d.input_path;
    }
    os << "\n";
    os << "  crossings: " << d.crossings << " (n+ = " << d.n_plus << ", n- = " << d.n_minus
       << ", writhe = " << d.writhe << ")\n";
    os << "  components: " << d.components << (d.connected ? " (connected)" : " (disconnected)")
       << "\n";
    if (d.positivity) {
        os << "  class: " << *d.positivity;
        if (d.theorem_case) os << " (case " << *d.theorem_case << ")";
        if (d.negative_pair_is_self) os << " [negative crossing joins a circle to itself]";
        os << "\n";
    }
    if (d.seifert_circles) os << "  seifert circles: " << *d.seifert_circles << "\n";
    if (d.g3_diagram) os << "  g3(D): " << *d.g3_diagram << "\n";
    if (d.g3_link) os << "  g3: " << *d.g3_link << "\n";
    if (d.g4) os << "  g4: " << *d.g4 << "\n";
    if (d.s) os << "  s: " << *d.s << (d.formula ? "   [" + *d.formula + "]" : "") << "\n";
    auto poly_line = [&](const char* tag, const std::optional<PolyDoc>& p) {
        if (!p) return;
        Laurent l(p->variable == "sqrt_t" ? PolyVar::sqrt_t
                                          : p->variable == "A" ? PolyVar::A : PolyVar::q);
        for (const auto& [e, c] : p->coefficients) l.add_term(e, rational_from_string(c));
        os << "  " << tag << ": " << l.to_string() << "\n";
    };
    poly_line("jones (homology)", d.jones_from_homology);
    poly_line("jones (oracle)", d.jones_oracle);
    if (d.jones_match) os << "  jones match: " << (*d.jones_match ? "yes" : "NO") << "\n";
    auto table_lines = [&](const char* tag, const std::optional<std::vector<TableEntryDoc>>& t) {
        if (!t) return;
        os << "  " << tag << ":\n";
        for (const auto& e : *t)
            os << "    i=" << e.i << " j=" << e.j << " dim=" << e.dim << "\n";
    };
    table_lines("KH", d.homology);
    table_lines("H (unnormalized)", d.homology_raw);
    if (!d.checks.empty()) {
        os << "  checks:\n";
        for (const auto& c : d.checks) {
            os << "    [" << c.status << "] " << c.name;
            if (!c.details.empty()) os << ": " << c.details;
            os << "\n";
        }
    }
    os << "  elapsed: " << d.elapsed_ms << " ms\n";
    return os.str();
}

} // namespace khoval
