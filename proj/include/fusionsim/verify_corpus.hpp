#pragma once

#include <string>

#include "fusionsim/fusion_rules.hpp"
#include "fusionsim/rng.hpp"

namespace fusionsim {

GraphState random_graph(uint32_t n, double density, Rng& rng);

struct FusionInstance {
    GraphState g;
    uint32_t a;
    uint32_t b;
};

// Builds a random instance whose fusion-qubit neighborhoods make the given
// rule branch fire; used by the verification harness to guarantee that every
// documented subcase is exercised.
FusionInstance make_subcase_instance(const std::string& label, uint32_t n, Rng& rng);

}  // namespace fusionsim
