#pragma once

#include <cstdint>
#include <map>

#include "fusionsim/graph_state.hpp"

namespace fusionsim {

struct MeasurementResult {
    GraphState graph;
    std::map<uint32_t, LocalClifford> byproducts;
};

// Single-qubit Pauli measurement rewrites on the bare graph. The measured
// vertex is tombstoned; byproducts are returned and also composed under the
// surviving vertices' tags. Signs (outcome-dependent Pauli frames) are not
// tracked; the tableau oracle is authoritative for those.

// Z: remove the measured vertex.
MeasurementResult measure_z(const GraphState& g, uint32_t v);

// Y: local complementation of N(v), vertex removed, R on every former neighbor.
MeasurementResult measure_y(const GraphState& g, uint32_t v);

// X: special-neighbor rule; H lands on the chosen a* (lowest id).
MeasurementResult measure_x(const GraphState& g, uint32_t v);

MeasurementResult measure_pauli_basis(const GraphState& g, uint32_t v, Pauli basis);

}  // namespace fusionsim
