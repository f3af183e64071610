#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusionsim/fusion_rules.hpp"
#include "fusionsim/graph_state.hpp"
#include "fusionsim/rng.hpp"

#include "json.hpp"

namespace fusionsim {

struct spec_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LossConvention : uint8_t {
    PartnerZ,  // surviving partner of a lost photon is Z-measured
    PartnerX,
};

struct Placement {
    std::string resource;
    uint32_t offset;
};

struct ScheduledFusion {
    uint32_t a;
    uint32_t b;
    FusionType type;
    std::optional<FusionBranch> forced;
};

// Declarative fusion network: named resource graphs placed at id offsets plus
// an ordered fusion schedule.
struct NetworkSpec {
    std::map<std::string, GraphState> resources;
    std::vector<Placement> instances;
    std::vector<ScheduledFusion> fusions;
    double loss = 0.0;
    uint64_t trials = 1;
    uint64_t seed = 0;
    LossConvention loss_convention = LossConvention::PartnerZ;
    bool exact_boundaries = false;

    // base_dir resolves resource file references.
    static NetworkSpec from_json(const nlohmann::json& j, const std::string& base_dir = ".");
    static NetworkSpec load(const std::string& path);
    void validate() const;
    uint32_t total_qubits() const;
};

GraphState build_state(const NetworkSpec& spec);

struct FusionOutcome {
    uint32_t a = 0;
    uint32_t b = 0;
    FusionType scheduled = FusionType::XXZZ;
    FusionType effective = FusionType::XXZZ;
    bool swapped = false;
    std::string branch;  // success | failure | erased
    std::string subcase;
    BoundaryClass boundary = BoundaryClass::Generic;
    bool warned = false;
    bool adjacent_before = false;
    double p_success = 0.5;
};

struct TrialRecord {
    uint64_t trial = 0;
    std::vector<FusionOutcome> fusions;
    GraphState final_graph{0};
    std::vector<size_t> component_sizes;

    nlohmann::json summary_json() const;
};

TrialRecord run_trial(const NetworkSpec& spec, uint64_t trial_index);

struct FusionStats {
    uint64_t success = 0;
    uint64_t failure = 0;
    uint64_t erased = 0;
    uint64_t warned = 0;
    uint64_t adjacent_before = 0;
};

struct MonteCarloResult {
    uint64_t trials = 0;
    std::vector<FusionStats> per_fusion;
    std::map<size_t, uint64_t> component_histogram;
    double mean_components = 0.0;
    std::vector<std::string> trial_lines;  // one TrialRecord summary per trial

    nlohmann::json aggregate_json() const;
};

// Trials are independent; they are split across threads by index and merged
// with commutative sums, so the result does not depend on the thread count.
MonteCarloResult run_monte_carlo(const NetworkSpec& spec, unsigned threads = 0);

}  // namespace fusionsim
