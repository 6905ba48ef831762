#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "isofib/analyze.hpp"
#include "isofib/errors.hpp"
#include "isofib/hirzebruch_jung.hpp"

namespace py = pybind11;
using namespace isofib;

namespace {

struct PyGroup {
    std::shared_ptr<const FiniteGroup> G;
};

PyGroup group_from_config(const std::string& text) {
    auto root = parse_config_tree(text);
    const auto* node = root.child("group");
    if (!node) throw invalid_input("expected a 'group ...' entry");
    return {std::make_shared<const FiniteGroup>(build_group(parse_group_spec(*node)))};
}

std::string analyze_to_json(const std::string& config_text) {
    return report_to_json(run_analyze(parse_config(config_text)), false);
}

std::string search_to_json_str(const std::string& config_text) {
    return search_to_json(run_search(parse_config(config_text)), false);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "standard isotrivial fibrations (C1 x C2)/G: groups, generating vectors, "
              "Hirzebruch-Jung resolutions, surface invariants and the K^2 vs 8chi gates";

    py::register_exception<invalid_input>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<internal_error>(m, "InternalError", PyExc_RuntimeError);
    py::register_exception<budget_exceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<PyGroup>(m, "Group")
        .def_property_readonly("order", [](const PyGroup& g) { return g.G->order(); })
        .def_property_readonly("name", [](const PyGroup& g) { return g.G->name(); })
        .def("element_order",
             [](const PyGroup& g, const std::string& w) {
                 return g.G->element_order(g.G->element_by_word(w));
             })
        .def("multiply",
             [](const PyGroup& g, const std::string& a, const std::string& b) {
                 return g.G->word(g.G->mul(g.G->element_by_word(a), g.G->element_by_word(b)));
             })
        .def("inverse",
             [](const PyGroup& g, const std::string& w) {
                 return g.G->word(g.G->inv(g.G->element_by_word(w)));
             })
        .def("conjugacy_class",
             [](const PyGroup& g, const std::string& w) {
                 std::vector<std::string> out;
                 for (int e : g.G->conjugacy_class(g.G->element_by_word(w)))
                     out.push_back(g.G->word(e));
                 return out;
             })
        .def("elements",
             [](const PyGroup& g) {
                 std::vector<std::string> out;
                 for (int e = 0; e < g.G->order(); ++e) out.push_back(g.G->word(e));
                 return out;
             })
        .def("__repr__", [](const PyGroup& g) {
            return "<Group " + g.G->name() + " of order " + std::to_string(g.G->order()) + ">";
        });

    m.def("cyclic", [](long n) { return PyGroup{std::make_shared<const FiniteGroup>(
                                      cyclic_group(n))}; },
          py::arg("n"));
    m.def("dihedral", [](long order) { return PyGroup{std::make_shared<const FiniteGroup>(
                                            dihedral_group(order))}; },
          py::arg("order"));
    m.def("metacyclic",
          [](long a, long b, long c) {
              return PyGroup{std::make_shared<const FiniteGroup>(metacyclic_group(a, b, c))};
          },
          py::arg("a"), py::arg("b"), py::arg("c"));
    m.def("group_from_config", &group_from_config, py::arg("text"),
          "build a group from a 'group ...' config entry");

    m.def("enumerate_vectors",
          [](const PyGroup& g, int base_genus, const std::vector<int>& periods, bool dedup) {
              EnumerateOptions opts;
              opts.dedup = dedup;
              std::vector<std::string> out;
              for (const auto& v :
                   enumerate_vectors(*g.G, BranchingData{base_genus, periods}, opts))
                  out.push_back(format_vector(*g.G, v));
              return out;
          },
          py::arg("group"), py::arg("base_genus"), py::arg("periods"),
          py::arg("dedup") = true,
          "all generating vectors, by default up to conjugation and equal-period "
          "reordering");

    m.def("genus",
          [](const PyGroup& g, int base_genus, const std::string& vector_text) {
              return genus(*g.G, parse_vector(*g.G, vector_text, base_genus));
          },
          py::arg("group"), py::arg("base_genus"), py::arg("vector"));

    m.def("hj_expand", [](long n, long q) { return hj_expand(n, q).b; }, py::arg("n"),
          py::arg("q"), "Hirzebruch-Jung continued fraction of n/q");
    m.def("hj_dual", [](long n, long q) { return hj_dual(n, q).b; }, py::arg("n"), py::arg("q"));
    m.def("hj_corrections",
          [](long n, long q) {
              auto corr = hj_corrections(hj_expand(n, q));
              py::dict d;
              py::list disc;
              for (const auto& a : corr.discrepancies) disc.append(a.str());
              d["discrepancies"] = disc;
              d["c"] = corr.c.str();
              d["e"] = corr.e.str();
              d["B"] = corr.B.str();
              return d;
          },
          py::arg("n"), py::arg("q"),
          "discrepancies and the correction numbers (c, e, B) as exact fraction strings");
    m.def("is_rdp", [](long n, long q) { return is_rdp(hj_expand(n, q)); }, py::arg("n"),
          py::arg("q"));

    m.def("analyze", &analyze_to_json, py::arg("config"),
          "run the full analysis for a config text; returns the JSON report");
    m.def("search", &search_to_json_str, py::arg("config"),
          "run the bounded search for a config text; returns the JSON outcome");
}
