#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionsim/fusion_rules.hpp"
#include "fusionsim/graph_state.hpp"

#include "json.hpp"

namespace fusionsim {

struct unsupported_size_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Deterministic single-emitter operations. The emitter is an ordinary graph
// vertex (id 0 in build_resource); photon generation attaches a fresh |+>
// qubit to it by a CZ.
uint32_t gen_photon(GraphState& g, uint32_t emitter);

// Generation followed by local complementation on the emitter and then on the
// new photon; interchanges the two in the graph.
uint32_t push_gen(GraphState& g, uint32_t emitter);

struct EmitterOp {
    enum class Kind : uint8_t { Gen, PushGen, LocalComp, MeasureZ };
    Kind kind;
    uint32_t vertex = 0;  // LocalComp / MeasureZ target
};

std::vector<EmitterOp> script_from_json(const nlohmann::json& j);
std::vector<EmitterOp> load_script(const std::string& path);

// Replays a script starting from a lone emitter vertex.
GraphState build_resource(const std::vector<EmitterOp>& script);

// Isomorphism-inclusive canonical key of the alive subgraph: the minimum
// adjacency bitstring over vertex relabelings. Exhaustive with prefix pruning;
// intended for graphs of at most ~12 vertices.
std::string iso_canonical_string(const GraphState& g);

// True when the two graphs lie in the same local-complementation orbit, up to
// relabeling. BFS over LC moves with canonical-form memoization.
bool lc_equivalent(const GraphState& g1, const GraphState& g2);

struct FusionStep {
    uint32_t a;
    uint32_t b;
    FusionType type;
};

// Bounded DFS over success-branch fusions whose final state is LC-equivalent
// to the target. Fusion count is fixed by the vertex deficit; sequences longer
// than max_fusions are not explored. nullopt when nothing is found.
std::optional<std::vector<FusionStep>> find_fusion_sequence(const GraphState& source,
                                                            const GraphState& target,
                                                            int max_fusions);

GraphState cube_graph();

}  // namespace fusionsim
