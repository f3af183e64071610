#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusionsim/graph_state.hpp"
#include "fusionsim/measurement_rules.hpp"
#include "fusionsim/tableau.hpp"

namespace fusionsim {

// A two-qubit parity: one Pauli letter on each fusion qubit.
struct ParityPair {
    Pauli on_a;
    Pauli on_b;
    bool operator==(const ParityPair&) const = default;
};

struct ClassifiedFusion {
    FusionType type;
    bool swapped;  // true when the canonical representative needs A/B relabeled
};

// Representative parities measured by each fusion type on success.
std::pair<ParityPair, ParityPair> representative_parities(FusionType t);

// Maps a simultaneously measurable pair of two-qubit parities onto the five
// canonical classes. Throws when the parities are identical, degenerate or
// non-commuting.
ClassifiedFusion classify_parity_pair(ParityPair p1, ParityPair p2);

// Effective fusion type after local Cliffords on the fusion qubits rotate the
// base type's parities (Heisenberg picture, signs dropped).
ClassifiedFusion rotated_fusion_of(const LocalClifford& tag_a, const LocalClifford& tag_b,
                                   FusionType base);

enum class BoundaryClass : uint8_t {
    Generic,
    SharedNeighborhood,
    APrivateEmpty,
    BPrivateEmpty,
    IsolatedPair,
};

std::string to_string(BoundaryClass c);

struct BoundaryInfo {
    BoundaryClass cls = BoundaryClass::Generic;
    // Unsigned stabilizer supported on {a, b} implied by a non-generic layout.
    std::optional<ParityPair> implied_stabilizer;
};

// Graph-level boundary detection from the conditions on N(a)\b and N(b)\a.
// Sign resolution is left to the tableau's fusion_probability.
BoundaryInfo detect_boundary(const GraphState& g, uint32_t a, uint32_t b);

struct FusionResult {
    GraphState graph;  // a and b tombstoned; byproducts already in the tags
    std::map<uint32_t, LocalClifford> byproducts;
    std::vector<uint32_t> special_neighbors;
    std::string subcase;
    BoundaryClass boundary = BoundaryClass::Generic;
    bool boundary_warning = false;
};

// Success-branch graph rewrite for the given fusion type. Covers every
// neighborhood layout, connected or detached fusion qubits.
FusionResult fuse_success(const GraphState& g, uint32_t a, uint32_t b, FusionType type);

// Failure branch: the type's two single-qubit measurements, first on a, then on
// b with the first rewrite's byproduct on b (if any) rotating the second basis.
FusionResult fuse_failure(const GraphState& g, uint32_t a, uint32_t b, FusionType type);

// Failure with explicit bases. Needed when local Cliffords on the fusion qubits
// have rotated a scheduled fusion: the effective success class does not pin the
// failure bases down, so callers conjugate the scheduled ones themselves.
FusionResult fuse_failure_bases(const GraphState& g, uint32_t a, uint32_t b, Pauli basis_a,
                                Pauli basis_b, std::string label);

// Stable vocabulary of subcase labels, for coverage assertions and --help.
const std::vector<std::string>& fusion_subcase_labels();

}  // namespace fusionsim
