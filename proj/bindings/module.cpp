// Python bindings for the fusionsim core: graph states, fusion rules, the
// tableau oracle, network Monte Carlo and the emitter pipeline.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fusionsim/emitter.hpp"
#include "fusionsim/fusion_network.hpp"
#include "fusionsim/fusion_rules.hpp"
#include "fusionsim/io.hpp"
#include "fusionsim/measurement_rules.hpp"
#include "fusionsim/tableau.hpp"

namespace py = pybind11;
using namespace fusionsim;

namespace {

GraphState graph_from_edges_py(uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
    return GraphState::from_edges(n, edges);
}

std::vector<std::pair<uint32_t, uint32_t>> edges_of(const GraphState& g) {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t u = 0; u < g.vertex_count(); ++u) {
        if (!g.alive(u)) {
            continue;
        }
        g.neighborhood(u).for_each([&](uint32_t v) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        });
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_fusionsim, m) {
    m.doc() = "graph-state fusion rules with a stabilizer-tableau oracle";

    py::enum_<FusionType>(m, "FusionType")
        .value("XXZZ", FusionType::XXZZ)
        .value("XYYX", FusionType::XYYX)
        .value("XZZX", FusionType::XZZX)
        .value("YZZY", FusionType::YZZY)
        .value("XYYZ", FusionType::XYYZ);

    py::enum_<Pauli>(m, "Pauli")
        .value("X", Pauli::X)
        .value("Y", Pauli::Y)
        .value("Z", Pauli::Z);

    py::class_<LocalClifford>(m, "LocalClifford")
        .def_static("identity", &LocalClifford::identity)
        .def_static("h", &LocalClifford::h)
        .def_static("r", &LocalClifford::r)
        .def_static("from_word", &LocalClifford::from_word)
        .def("word", &LocalClifford::word)
        .def("__repr__", [](const LocalClifford& c) { return "<LocalClifford " + c.word() + ">"; });

    py::class_<GraphState>(m, "GraphState")
        .def(py::init<uint32_t>())
        .def_static("from_edges", &graph_from_edges_py)
        .def_static("from_json", &graph_from_json_string)
        .def("to_json", &graph_to_json_string)
        .def("to_dot", &graph_to_dot)
        .def("vertex_count", &GraphState::vertex_count)
        .def("alive_count", &GraphState::alive_count)
        .def("alive", &GraphState::alive)
        .def("has_edge", &GraphState::has_edge)
        .def("edges", &edges_of)
        .def("toggle_edge", &GraphState::toggle_edge)
        .def("add_edge", &GraphState::add_edge)
        .def("delete_vertex", &GraphState::delete_vertex)
        .def("local_complement", &GraphState::local_complement)
        .def("local_complement_state", &GraphState::local_complement_state)
        .def("clifford", &GraphState::clifford)
        .def("set_clifford", &GraphState::set_clifford)
        .def("compose_clifford", &GraphState::compose_clifford)
        .def("neighborhood",
             [](const GraphState& g, uint32_t v) { return g.neighborhood(v).to_vector(); })
        .def("component_sizes", &GraphState::component_sizes)
        .def("__eq__", [](const GraphState& a, const GraphState& b) { return a == b; });

    py::class_<FusionResult>(m, "FusionResult")
        .def_readonly("graph", &FusionResult::graph)
        .def_readonly("subcase", &FusionResult::subcase)
        .def_readonly("special_neighbors", &FusionResult::special_neighbors)
        .def_readonly("boundary_warning", &FusionResult::boundary_warning)
        .def_property_readonly("byproducts", [](const FusionResult& r) {
            std::map<uint32_t, std::string> out;
            for (const auto& [v, c] : r.byproducts) {
                out[v] = c.word();
            }
            return out;
        });

    m.def("fuse_success", &fuse_success, py::arg("graph"), py::arg("a"), py::arg("b"),
          py::arg("type"));
    m.def("fuse_failure", &fuse_failure, py::arg("graph"), py::arg("a"), py::arg("b"),
          py::arg("type"));
    m.def("measure", [](const GraphState& g, uint32_t v, Pauli basis) {
        MeasurementResult r = measure_pauli_basis(g, v, basis);
        return r.graph;
    });
    m.def("detect_boundary",
          [](const GraphState& g, uint32_t a, uint32_t b) {
              return to_string(detect_boundary(g, a, b).cls);
          });
    m.def("rotated_fusion_of", [](const LocalClifford& a, const LocalClifford& b, FusionType t) {
        ClassifiedFusion c = rotated_fusion_of(a, b, t);
        return py::make_tuple(c.type, c.swapped);
    });

    py::class_<StabilizerTableau>(m, "StabilizerTableau")
        .def("n", &StabilizerTableau::n)
        .def("to_text", &StabilizerTableau::to_text)
        .def_static("from_text", &StabilizerTableau::from_text);
    m.def("from_graph", &from_graph);
    m.def("groups_equal_mod_signs", &groups_equal_mod_signs);
    m.def("fusion_probability", &fusion_probability, py::arg("tableau"), py::arg("a"),
          py::arg("b"), py::arg("type"));
    m.def("oracle_fuse",
          [](const StabilizerTableau& t, uint32_t a, uint32_t b, FusionType type, bool success,
             uint64_t seed) {
              Rng rng(seed);
              OracleFusion f = oracle_fuse(
                  t, a, b, type, success ? FusionBranch::Success : FusionBranch::Failure,
                  std::nullopt, rng);
              return py::make_tuple(f.tableau, f.parity1, f.parity2);
          },
          py::arg("tableau"), py::arg("a"), py::arg("b"), py::arg("type"), py::arg("success"),
          py::arg("seed") = 0);

    m.def("run_monte_carlo_json", [](const std::string& spec_json, const std::string& base_dir,
                                     unsigned threads) {
        NetworkSpec spec = NetworkSpec::from_json(nlohmann::json::parse(spec_json), base_dir);
        MonteCarloResult mc = run_monte_carlo(spec, threads);
        return mc.aggregate_json().dump();
    }, py::arg("spec_json"), py::arg("base_dir") = ".", py::arg("threads") = 1);

    m.def("build_resource", [](const std::string& script_json) {
        return build_resource(script_from_json(nlohmann::json::parse(script_json)));
    });
    m.def("lc_equivalent", &lc_equivalent);
    m.def("cube_graph", &cube_graph);
    m.def("find_fusion_sequence",
          [](const GraphState& source, const GraphState& target, int max_fusions)
              -> std::optional<std::vector<std::tuple<uint32_t, uint32_t, std::string>>> {
              auto seq = find_fusion_sequence(source, target, max_fusions);
              if (!seq) {
                  return std::nullopt;
              }
              std::vector<std::tuple<uint32_t, uint32_t, std::string>> out;
              for (const FusionStep& s : *seq) {
                  out.emplace_back(s.a, s.b, to_string(s.type));
              }
              return out;
          });
}
