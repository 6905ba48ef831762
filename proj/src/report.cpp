#include "isofib/report.hpp"

#include <sstream>

#include "isofib/analyze.hpp"
#include "json.hpp"

namespace isofib {

using nlohmann::json;

namespace {

json rational_json(const Rational& r) {
    return json{{"num", r.num()}, {"den", r.den()}, {"str", r.str()}};
}

json component_json(const FibreComponent& cp) {
    return json{{"label", cp.label}, {"mult", cp.mult},   {"self", cp.self},
                {"k_deg", cp.k_deg}, {"genus", cp.genus}, {"alive", cp.alive}};
}

json fibre_json(const FibreReport& fr) {
    json built_comps = json::array(), final_comps = json::array();
    for (const auto& cp : fr.built.comps) built_comps.push_back(component_json(cp));
    for (const auto& cp : fr.contracted.comps)
        if (cp.alive) final_comps.push_back(component_json(cp));
    json strings = json::array();
    for (const auto& s : fr.built.strings)
        strings.push_back(json{{"type", s.type.str()},
                               {"q_att", s.q_att},
                               {"B", rational_json(s.B)},
                               {"length", s.comps.size()}});
    json trace = json::array();
    for (const auto& st : fr.trace.steps) trace.push_back(st.label);
    return json{{"projection", fr.built.base_choice},
                {"branch_point", fr.built.branch_index + 1},
                {"multiplicity", fr.built.m},
                {"class", fibre_class_str(fr.built)},
                {"components", built_comps},
                {"strings", strings},
                {"central_genus", fr.built.comps[fr.built.central].genus},
                {"central_genus_rh", fr.built.rh_central_genus},
                {"genus_routes_agree", fr.built.genus_routes_agree},
                {"beta", fr.trace.beta()},
                {"trace", trace},
                {"final_class", fibre_class_str(fr.contracted)},
                {"final_components", final_comps},
                {"delta", rational_json(fr.delta)},
                {"diagram", fibre_diagram(fr.built)}};
}

json report_json(const AnalysisReport& r) {
    json covers = json::array();
    for (const auto* v : {&r.rec.v1, &r.rec.v2}) {
        covers.push_back(json{{"base_genus", v->data.base_genus},
                              {"periods", v->data.periods},
                              {"vector", format_vector(*r.rec.group, *v)},
                              {"genus", v == &r.rec.v1 ? r.rec.g1 : r.rec.g2}});
    }
    json fixed = json::array();
    for (const auto& row : r.fixed_point_table)
        fixed.push_back(json{{"element", row.element},
                             {"order", row.order},
                             {"fix_c1", row.fix_c1},
                             {"fix_c2", row.fix_c2}});
    json basket_entries = json::array();
    for (const auto& e : r.rec.basket.entries)
        basket_entries.push_back(json{{"n", e.type.n},
                                      {"q", e.type.q},
                                      {"type", e.type.str()},
                                      {"fibre1", e.fibre1_index + 1},
                                      {"fibre2", e.fibre2_index + 1},
                                      {"orbit_size", e.orbit_size}});
    json fibres = json::array(), other = json::array();
    for (const auto& f : r.fibres) fibres.push_back(fibre_json(f));
    for (const auto& f : r.other_fibres) other.push_back(fibre_json(f));

    json invariants{{"K2", r.inv.K2},
                    {"euler", r.inv.euler},
                    {"chi", r.inv.chi},
                    {"pg", r.inv.pg},
                    {"q", r.inv.q},
                    {"KT2_num", r.inv.KT2.num()},
                    {"KT2_den", r.inv.KT2.den()},
                    {"basket", basket_str(r.rec.basket)},
                    {"quasi_bundle", r.quasi_bundle}};

    json verdict{{"applicable", r.verdict.applicable},
                 {"reason", r.verdict.reason},
                 {"serrano_tan_ok", r.verdict.serrano_tan_ok},
                 {"serrano_tan_equality", r.verdict.serrano_tan_equality},
                 {"main1_ok", r.verdict.main1_ok},
                 {"main1_equality", r.verdict.main1_equality},
                 {"equality_case_ok", r.verdict.equality_case_ok},
                 {"equality_case_note", r.verdict.equality_case_note},
                 {"main2_checked", r.verdict.main2_checked},
                 {"main2_ok", r.verdict.main2_ok},
                 {"main2_equality", r.verdict.main2_equality},
                 {"K2_minimal_model", r.verdict.K2_minimal_model},
                 {"gap", r.verdict.gap}};

    return json{{"schema", "isofib-report-v1"},
                {"group", json{{"config", r.group_text},
                               {"name", r.group_name},
                               {"order", r.group_order}}},
                {"base_choice", r.base_choice},
                {"covers", covers},
                {"fixed_points", fixed},
                {"stabilized_points", r.rec.basket.stabilized_points},
                {"singular_points", static_cast<long>(r.rec.basket.entries.size())},
                {"basket_entries", basket_entries},
                {"invariants", invariants},
                {"euler_by_counting", r.euler_counting},
                {"fibres", fibres},
                {"other_fibres", other},
                {"delta_sum", rational_json(r.delta_sum)},
                {"beta_total", r.beta_total},
                {"minimality", json{{"minimal", r.ample.minimal},
                                    {"K_ample", r.ample.K_ample},
                                    {"canonical_model_is_T", r.ample.canonical_model_is_T}}},
                {"verdict", verdict},
                {"timing_ms", r.ms}};
}

}  // namespace

std::string report_to_json(const AnalysisReport& r, bool pretty) {
    return pretty ? report_json(r).dump(2) : report_json(r).dump();
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "surface (C1 x C2)/" << r.group_name << "  [order " << r.group_order << "]\n";
    os << "  cover1: Gamma" << r.rec.v1.data.str() << " -> " << r.group_name << ", vector "
       << r.v1_text << ", g(C1) = " << r.rec.g1 << "\n";
    os << "  cover2: Gamma" << r.rec.v2.data.str() << " -> " << r.group_name << ", vector "
       << r.v2_text << ", g(C2) = " << r.rec.g2 << "\n";
    os << "  fibration: projection " << r.base_choice << ", base genus "
       << (r.base_choice == 2 ? r.rec.base2 : r.rec.base1) << "\n\n";

    if (!r.fixed_point_table.empty()) {
        os << "fixed points (elements with fixed points on either curve)\n";
        os << "  element          order  |Fix C1|  |Fix C2|\n";
        for (const auto& row : r.fixed_point_table) {
            os << "  " << row.element;
            for (size_t pad = row.element.size(); pad < 17; ++pad) os << ' ';
            os << row.order << "      " << row.fix_c1 << "         " << row.fix_c2 << "\n";
        }
        os << "\n";
    }
    os << "singular locus: " << r.rec.basket.stabilized_points
       << " stabilized points on C1 x C2, " << r.rec.basket.entries.size()
       << " singular points on T\n";
    os << "  basket: " << basket_str(r.rec.basket) << "\n\n";

    os << "invariants\n";
    os << "  K_T^2 = " << r.inv.KT2.str() << ",  K^2 = " << r.inv.K2 << ",  e = " << r.inv.euler
       << " (counting route: " << r.euler_counting << ")\n";
    os << "  chi = " << r.inv.chi << ",  pg = " << r.inv.pg << ",  q = " << r.inv.q
       << ",  quasi-bundle: " << (r.quasi_bundle ? "yes" : "no") << "\n\n";

    os << "singular fibres of the chosen fibration\n";
    for (const auto& f : r.fibres) {
        os << fibre_diagram(f.built);
        os << "  delta = " << f.delta.str() << ", blow-downs: " << f.trace.beta();
        if (f.trace.beta() > 0) {
            os << " (";
            for (size_t i = 0; i < f.trace.steps.size(); ++i)
                os << (i ? ", " : "") << f.trace.steps[i].label;
            os << "), relatively minimal model: " << fibre_class_str(f.contracted);
        }
        os << "\n\n";
    }
    os << "minimal model: K^2 = " << r.verdict.K2_minimal_model << ", gap 8chi - K^2 = "
       << r.verdict.gap << " = sum of delta = " << r.delta_sum.str() << "\n";
    os << "  minimal: " << (r.ample.minimal ? "yes" : "no") << ",  K ample: "
       << (r.ample.K_ample ? "yes" : "no") << ",  canonical model is T: "
       << (r.ample.canonical_model_is_T ? "yes" : "no") << "\n\n";

    os << "theorem gate\n";
    if (!r.verdict.applicable) {
        os << "  not applicable: " << r.verdict.reason << "\n";
    } else {
        os << "  K^2 <= 8chi - 2: " << (r.verdict.main1_ok ? "holds" : "VIOLATED")
           << (r.verdict.main1_equality ? " with equality" : "") << "\n";
        if (r.verdict.main1_equality) os << "    " << r.verdict.equality_case_note << "\n";
        if (r.verdict.main2_checked)
            os << "  K^2 <= 8chi - 5 (K ample): " << (r.verdict.main2_ok ? "holds" : "VIOLATED")
               << (r.verdict.main2_equality ? " with equality" : "") << "\n";
        else
            os << "  K^2 <= 8chi - 5: skipped (K not ample)\n";
    }
    os << "  K^2 <= 8chi: " << (r.verdict.serrano_tan_ok ? "holds" : "VIOLATED")
       << (r.verdict.serrano_tan_equality ? " with equality" : "") << "\n";
    return os.str();
}

std::string csv_header() {
    return "group,order,cover1,cover2,vector1,vector2,g1,g2,pg,q,chi,K2,euler,KT2,basket,"
           "quasi_bundle,stabilized,singular,minimal,K_ample,canonical_model_is_T,"
           "K2_minimal_model,gap,serrano_tan_ok,main1_ok,main1_equality,main2_checked,"
           "main2_ok,main2_equality,delta_sum";
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string csv_row(const AnalysisReport& r) {
    std::ostringstream os;
    os << csv_quote(r.group_name) << "," << r.group_order << ","
       << csv_quote(r.rec.v1.data.str()) << "," << csv_quote(r.rec.v2.data.str()) << ","
       << csv_quote(r.v1_text) << "," << csv_quote(r.v2_text) << "," << r.rec.g1 << ","
       << r.rec.g2 << "," << r.inv.pg << "," << r.inv.q << "," << r.inv.chi << "," << r.inv.K2
       << "," << r.inv.euler << "," << csv_quote(r.inv.KT2.str()) << ","
       << csv_quote(basket_str(r.rec.basket)) << "," << (r.quasi_bundle ? 1 : 0) << ","
       << r.rec.basket.stabilized_points << "," << r.rec.basket.entries.size() << ","
       << (r.ample.minimal ? 1 : 0) << "," << (r.ample.K_ample ? 1 : 0) << ","
       << (r.ample.canonical_model_is_T ? 1 : 0) << "," << r.verdict.K2_minimal_model << ","
       << r.verdict.gap << "," << (r.verdict.serrano_tan_ok ? 1 : 0) << ","
       << (r.verdict.main1_ok ? 1 : 0) << "," << (r.verdict.main1_equality ? 1 : 0) << ","
       << (r.verdict.main2_checked ? 1 : 0) << "," << (r.verdict.main2_ok ? 1 : 0) << ","
       << (r.verdict.main2_equality ? 1 : 0) << "," << csv_quote(r.delta_sum.str());
    return os.str();
}

std::string search_to_json(const SearchOutcome& out, bool pretty) {
    json results = json::array();
    for (const auto& r : out.reports) results.push_back(json::parse(report_to_json(r, false)));
    json skipped = json::array();
    for (const auto& s : out.skipped)
        skipped.push_back(json{{"group", s.group}, {"branching", s.branching},
                               {"reason", s.reason}});
    json j{{"schema", "isofib-search-v1"},
           {"summary", json{{"surfaces", out.reports.size()},
                            {"pairs_scanned", out.pairs_scanned},
                            {"groups_scanned", out.groups_scanned},
                            {"gate_violations", out.any_gate_violation},
                            {"timing_ms", out.ms}}},
           {"skipped", skipped},
           {"results", results}};
    return pretty ? j.dump(2) : j.dump();
}

std::string search_to_text(const SearchOutcome& out) {
    std::ostringstream os;
    os << "search: " << out.reports.size() << " surfaces from " << out.pairs_scanned
       << " vector pairs over " << out.groups_scanned << " groups\n";
    if (!out.skipped.empty()) {
        os << "skipped candidates:\n";
        for (const auto& s : out.skipped)
            os << "  " << s.group << " " << s.branching << ": " << s.reason << "\n";
    }
    os << "\n";
    for (const auto& r : out.reports) {
        os << r.group_name << "  " << r.rec.v1.data.str() << " x " << r.rec.v2.data.str()
           << "  v1 = " << r.v1_text << "  v2 = " << r.v2_text << "\n";
        os << "  g = (" << r.rec.g1 << "," << r.rec.g2 << ")  pg = " << r.inv.pg
           << "  q = " << r.inv.q << "  K^2 = " << r.inv.K2 << "  basket: "
           << basket_str(r.rec.basket) << "  gap = " << r.verdict.gap
           << (r.ample.K_ample ? "  (K ample)" : "") << "\n";
    }
    return os.str();
}

std::string search_to_csv(const SearchOutcome& out) {
    std::ostringstream os;
    os << csv_header() << "\n";
    for (const auto& r : out.reports) os << csv_row(r) << "\n";
    return os.str();
}

}  // namespace isofib
