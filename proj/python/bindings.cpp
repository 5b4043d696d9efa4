#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "forestsos/certificate.hpp"
#include "forestsos/commands.hpp"
#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"
#include "forestsos/series_parallel.hpp"
#include "forestsos/sign_search.hpp"
#include "forestsos/sp_construct.hpp"

namespace py = pybind11;
using namespace forestsos;

namespace {

MultiGraph make_graph(int vertices, const std::vector<std::tuple<std::string, int, int>>& edges) {
    std::vector<Edge> list;
    for (const auto& [name, u, v] : edges) list.push_back({name, u, v});
    return MultiGraph(vertices, std::move(list));
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["accepted"] = v.accepted();
    d["complete"] = v.complete;
    d["problems"] = v.problems;
    d["difference"] = v.difference.to_string();
    return d;
}

}  // namespace

PYBIND11_MODULE(_forestsos, m) {
    m.doc() = "Forest polynomials, Rayleigh differences and SOS certificates";

    // Later registrations are tried first, so the base class goes first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::class_<MultiGraph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("vertices"), py::arg("edges"))
        .def_static("parse", [](const std::string& text) { return parse_graph(text); })
        .def_static("read", &read_graph_file)
        .def_static("k3", &MultiGraph::k3)
        .def_static("k3_star", &MultiGraph::k3_star)
        .def_static("k33", &k33)
        .def_property_readonly("vertex_count", &MultiGraph::vertex_count)
        .def_property_readonly("edges",
                               [](const MultiGraph& g) {
                                   std::vector<std::tuple<std::string, int, int>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.name, e.u, e.v);
                                   return out;
                               })
        .def_property_readonly("fingerprint", &MultiGraph::fingerprint)
        .def("to_text", [](const MultiGraph& g) { return format_graph(g); })
        .def("__len__", &MultiGraph::edge_count)
        .def("__repr__", [](const MultiGraph& g) {
            return "<Graph " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
                   " edges>";
        });

    m.def("forest_poly", [](const MultiGraph& g) { return forest_poly(g).to_string(); });
    m.def("tree_poly", [](const MultiGraph& g) { return tree_poly(g).to_string(); });
    m.def("delta", [](const MultiGraph& g, const EdgeId& e, const EdgeId& f) { return delta(g, e, f).to_string(); });
    m.def("phi", [](const MultiGraph& g, const EdgeId& e) { return phi(g, e).to_string(); });

    m.def(
        "sample_nonnegativity",
        [](const MultiGraph& g, const EdgeId& e, const EdgeId& f, std::size_t trials, std::uint64_t seed) {
            auto r = sample_nonnegativity(g, e, f, trials, seed);
            py::dict d;
            d["delta"] = r.difference.to_string();
            d["negative_coefficients"] = r.negative_coefficients;
            d["samples"] = r.samples.size();
            d["minimum"] = r.minimum().get_str();
            d["nonnegative"] = !r.counterexample().has_value();
            return d;
        },
        py::arg("g"), py::arg("e"), py::arg("f"), py::arg("trials") = 20, py::arg("seed") = 0);

    m.def("check_identities", [](const MultiGraph& g) {
        auto r = check_identities(g);
        py::dict d;
        d["checked"] = r.checked;
        d["failures"] = r.failures.size();
        d["all_hold"] = r.all_hold();
        return d;
    });

    m.def("sp_decompose", [](const MultiGraph& g) -> py::object {
        auto d = sp_decompose(g);
        if (std::holds_alternative<NotSeriesParallel>(d)) return py::none();
        return py::str(std::get<SpDecomposition>(d).to_string());
    });

    m.def("construct_delta", [](const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
        return to_text(construct_delta(g, e, f));
    });
    m.def("construct_phi", [](const MultiGraph& g, const EdgeId& e) { return to_text(construct_phi(g, e)); });

    m.def("verify_certificate", [](const MultiGraph& g, const std::string& text) {
        auto parsed = parse_certificate(text);
        if (auto* d = std::get_if<DeltaCert>(&parsed)) return verdict_dict(verify_delta(g, d->e, d->f, *d));
        const auto& p = std::get<PhiCert>(parsed);
        return verdict_dict(verify_phi(g, p.e, p));
    });

    m.def(
        "sign_search",
        [](const MultiGraph& g, const std::vector<EdgeId>& edges, std::uint64_t budget) {
            if (edges.size() != 1 && edges.size() != 2) throw InvalidArgument("sign_search expects one or two edges");
            py::dict d;
            SearchOptions opts{budget};
            auto fill = [&](const auto& r) {
                d["status"] = to_string(r.status);
                d["nodes"] = r.nodes;
                d["certificate"] = r.cert ? py::object(py::str(to_text(*r.cert))) : py::object(py::none());
            };
            if (edges.size() == 2) fill(sign_search_delta(g, edges[0], edges[1], opts));
            else fill(sign_search_phi(g, edges[0], opts));
            return d;
        },
        py::arg("g"), py::arg("edges"), py::arg("budget") = 10'000'000);

    m.def(
        "k33_report",
        [](std::size_t trials, std::uint64_t seed) {
            py::list out;
            for (const auto& o : k33_report(trials, seed)) {
                py::dict d;
                d["orbit"] = o.name;
                d["edges"] = py::make_tuple(o.e, o.f);
                d["negative_terms"] = o.negative_terms;
                d["delta_i_at_ones"] = o.delta_i_at_ones.get_str();
                d["delta_b_at_ones"] = o.delta_b_at_ones.get_str();
                d["delta_i_minimum"] = o.delta_i_minimum.get_str();
                out.append(d);
            }
            return out;
        },
        py::arg("trials") = 50, py::arg("seed") = 0);

    m.def("run_command", [](const std::vector<std::string>& args) {
        auto r = run_command(args);
        return py::make_tuple(r.code, r.out, r.err);
    });
}
