#pragma once

#include "fusionsim/fusion_rules.hpp"
#include "fusionsim/verify_corpus.hpp"
#include "fusionsim/rng.hpp"
#include "fusionsim/tableau.hpp"

namespace fusionsim::testing {

using fusionsim::random_graph;
using fusionsim::FusionInstance;
using fusionsim::make_subcase_instance;

// The master contract: the graph rewrite with its byproduct tags must describe
// the same state (mod signs) as the brute-force tableau fusion.
inline bool fusion_matches_oracle(const GraphState& g, uint32_t a, uint32_t b, FusionType type,
                                  FusionBranch branch, uint64_t seed) {
    StabilizerTableau input = from_graph(g);
    Rng rng(seed);
    OracleFusion oracle = oracle_fuse(input, a, b, type, branch, std::nullopt, rng);
    FusionResult rule = branch == FusionBranch::Success ? fuse_success(g, a, b, type)
                                                        : fuse_failure(g, a, b, type);
    return groups_equal_mod_signs(from_graph(rule.graph), oracle.tableau);
}

// Same for a single-qubit measurement: tableau measurement plus removal of the
// measured qubit vs the graph rewrite.
inline bool measurement_matches_oracle(const GraphState& g, uint32_t v, Pauli basis,
                                       uint64_t seed) {
    StabilizerTableau t = from_graph(g);
    Rng rng(seed);
    uint32_t col = 0;
    for (uint32_t u : g.alive_vertices()) {
        if (u == v) {
            break;
        }
        ++col;
    }
    t.measure(PauliString::single(t.n(), col, basis), std::nullopt, rng);
    if (basis != Pauli::Z) {
        // Rotate the measured qubit into the Z basis so it can be traced out
        // (H maps X to Z, sqrt(X) maps Y to Z up to sign).
        t.apply_clifford(col, basis == Pauli::X ? LocalClifford::h() : LocalClifford::q());
    }
    t.remove_measured_qubit(col);
    MeasurementResult rule = measure_pauli_basis(g, v, basis);
    return groups_equal_mod_signs(from_graph(rule.graph), t);
}

}  // namespace fusionsim::testing
