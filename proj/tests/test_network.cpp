#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "test_helpers.hpp"

#include "fusionsim/fusion_network.hpp"
#include "fusionsim/io.hpp"

using namespace fusionsim;

namespace {

nlohmann::json two_chain_spec() {
    return nlohmann::json::parse(R"({
        "resources": {"chain3": {"n": 3, "edges": [[0,1],[1,2]]}},
        "instances": [{"resource": "chain3", "offset": 0},
                      {"resource": "chain3", "offset": 3}],
        "fusions": [{"a": 2, "b": 3, "type": "xzzx"}],
        "trials": 4, "seed": 11
    })");
}

std::string data_dir() {
    const char* env = std::getenv("FUSIONSIM_DATA_DIR");
    return env ? env : "data";
}

}  // namespace

TEST_CASE("build_state places resources at offsets") {
    NetworkSpec spec = NetworkSpec::from_json(two_chain_spec());
    GraphState g = build_state(spec);
    CHECK(g.vertex_count() == 6);
    CHECK(g.alive_count() == 6);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(4, 5));
    CHECK(!g.has_edge(2, 3));
    CHECK(g.component_sizes() == std::vector<size_t>{3, 3});
}

TEST_CASE("spec validation rejects bad layouts") {
    nlohmann::json j = two_chain_spec();
    j["instances"][1]["offset"] = 2;
    CHECK_THROWS_AS(NetworkSpec::from_json(j), spec_error);

    j = two_chain_spec();
    j["fusions"].push_back({{"a", 2}, {"b", 5}, {"type", "xxzz"}});
    CHECK_THROWS_AS(NetworkSpec::from_json(j), spec_error);  // qubit 2 fused twice

    j = two_chain_spec();
    j["fusions"][0]["b"] = 2;
    CHECK_THROWS_AS(NetworkSpec::from_json(j), spec_error);

    j = two_chain_spec();
    j["resources"]["chain3"]["edges"] = {{0, 0}};
    CHECK_THROWS_AS(NetworkSpec::from_json(j), parse_error);
}

TEST_CASE("identical seeds replay identical trials") {
    NetworkSpec spec = NetworkSpec::from_json(two_chain_spec());
    spec.loss = 0.3;
    TrialRecord a = run_trial(spec, 5);
    TrialRecord b = run_trial(spec, 5);
    CHECK(a.summary_json() == b.summary_json());
    CHECK(a.final_graph == b.final_graph);
    TrialRecord c = run_trial(spec, 6);
    CHECK(a.summary_json() != c.summary_json());
}

TEST_CASE("forced failure splits chains into remnants") {
    nlohmann::json j = two_chain_spec();
    j["fusions"][0]["force"] = "failure";
    NetworkSpec spec = NetworkSpec::from_json(j);
    TrialRecord rec = run_trial(spec, 0);
    CHECK(rec.fusions[0].branch == "failure");
    // xzzx failure measures Z on qubit a (cutting its chain) and X on qubit b,
    // which disconnects the second chain's remnant entirely
    CHECK(rec.component_sizes == std::vector<size_t>{1, 1, 2});
}

TEST_CASE("success rate of a generic fusion converges to one half") {
    nlohmann::json j = two_chain_spec();
    j["trials"] = 10000;
    NetworkSpec spec = NetworkSpec::from_json(j);
    MonteCarloResult mc = run_monte_carlo(spec, 2);
    CHECK(mc.trials == 10000);
    const FusionStats& s = mc.per_fusion[0];
    CHECK(s.erased == 0);
    double rate = static_cast<double>(s.success) / 10000.0;
    double sigma = 0.5 / std::sqrt(10000.0);
    CHECK(std::abs(rate - 0.5) < 3 * sigma);
    // aggregation is independent of the thread split
    MonteCarloResult mc1 = run_monte_carlo(spec, 1);
    CHECK(mc1.aggregate_json() == mc.aggregate_json());
    CHECK(mc1.trial_lines == mc.trial_lines);
}

TEST_CASE("resource file references resolve relative to the spec") {
    NetworkSpec spec = NetworkSpec::load(data_dir() + "/four_rings_network.json");
    nlohmann::json j = nlohmann::json::parse(R"({
        "resources": {"cube": "cube.json"},
        "instances": [{"resource": "cube", "offset": 0}],
        "fusions": [{"a": 0, "b": 7, "type": "xxzz"}],
        "trials": 1, "seed": 1
    })");
    NetworkSpec file_spec = NetworkSpec::from_json(j, data_dir());
    CHECK(build_state(file_spec).alive_count() == 8);
    CHECK(file_spec.resources.at("cube").has_edge(0, 1));
}

TEST_CASE("forced-success schedules make statistics equal the single trial") {
    nlohmann::json j = two_chain_spec();
    j["fusions"][0]["force"] = "success";
    j["trials"] = 25;
    NetworkSpec spec = NetworkSpec::from_json(j);
    MonteCarloResult mc = run_monte_carlo(spec, 1);
    CHECK(mc.per_fusion[0].success == 25);
    TrialRecord single = run_trial(spec, 0);
    nlohmann::json line0 = nlohmann::json::parse(mc.trial_lines[0]);
    CHECK(line0 == single.summary_json());
    // every trial is the same record apart from its index
    for (auto& line : mc.trial_lines) {
        nlohmann::json l = nlohmann::json::parse(line);
        l.erase("trial");
        nlohmann::json ref = single.summary_json();
        ref.erase("trial");
        CHECK(l == ref);
    }
}

TEST_CASE("loss of one makes every fusion erased") {
    nlohmann::json j = two_chain_spec();
    j["loss"] = 1.0;
    j["trials"] = 20;
    NetworkSpec spec = NetworkSpec::from_json(j);
    MonteCarloResult mc = run_monte_carlo(spec, 1);
    CHECK(mc.per_fusion[0].erased == 20);
    // both fusion photons measured out: two 2-chains remain
    CHECK(mc.component_histogram.at(2) == 40);
}

TEST_CASE("byproduct tags rotate future fusions") {
    // An xxzz fusion leaves an H on its special neighbor; a later fusion
    // scheduled as xxzz on that qubit must run as xzzx.
    nlohmann::json j = nlohmann::json::parse(R"({
        "resources": {"chain3": {"n": 3, "edges": [[0,1],[1,2]]}},
        "instances": [{"resource": "chain3", "offset": 0},
                      {"resource": "chain3", "offset": 3},
                      {"resource": "chain3", "offset": 6}],
        "fusions": [{"a": 2, "b": 3, "type": "xxzz", "force": "success"},
                    {"a": 1, "b": 6, "type": "xxzz", "force": "success"}],
        "trials": 1, "seed": 3
    })");
    NetworkSpec spec = NetworkSpec::from_json(j);
    GraphState initial = build_state(spec);
    FusionResult first = fuse_success(initial, 2, 3, FusionType::XXZZ);
    REQUIRE(first.byproducts.count(1) == 1);  // a* = 1 picks up the H

    TrialRecord rec = run_trial(spec, 0);
    CHECK(rec.fusions[1].effective ==
          rotated_fusion_of(LocalClifford::h(), LocalClifford::identity(), FusionType::XXZZ).type);
    CHECK(rec.fusions[1].effective == FusionType::XZZX);
}

TEST_CASE("exact boundary resolution returns the trichotomy values") {
    // Two detached Bell pairs fused pairwise: the pair (1,2) shares no
    // neighborhood structure -> generic; fusing (0,1) of one pair is boundary.
    nlohmann::json j = nlohmann::json::parse(R"({
        "resources": {"pair": {"n": 2, "edges": [[0,1]]}},
        "instances": [{"resource": "pair", "offset": 0}],
        "fusions": [{"a": 0, "b": 1, "type": "xxzz"}],
        "trials": 50, "seed": 5, "exact_boundaries": true
    })");
    NetworkSpec spec = NetworkSpec::from_json(j);
    MonteCarloResult mc = run_monte_carlo(spec, 1);
    CHECK(mc.per_fusion[0].warned == 50);
    // A lone edge fused with itself is the isolated-pair boundary; the state
    // |G_edge> has p = 1/2 under the standard fusion.
    CHECK(mc.per_fusion[0].success + mc.per_fusion[0].failure == 50);
}

TEST_CASE("exact boundaries resolve deterministic fusions through the network") {
    // A lone pair carrying H.Z on one qubit is the odd-parity Bell state: the
    // standard fusion succeeds deterministically under exact resolution.
    nlohmann::json j = nlohmann::json::parse(R"({
        "resources": {"psi": {"n": 2, "edges": [[0,1]], "cliffords": {"1": "HRR"}},
                      "chain3": {"n": 3, "edges": [[0,1],[1,2]]}},
        "instances": [{"resource": "psi", "offset": 0},
                      {"resource": "chain3", "offset": 2}],
        "fusions": [{"a": 0, "b": 1, "type": "xxzz"}],
        "trials": 30, "seed": 4, "exact_boundaries": true
    })");
    NetworkSpec spec = NetworkSpec::from_json(j);
    MonteCarloResult mc = run_monte_carlo(spec, 1);
    CHECK(mc.per_fusion[0].success == 30);
    CHECK(mc.per_fusion[0].warned == 30);
    TrialRecord rec = run_trial(spec, 0);
    CHECK(rec.fusions[0].p_success == 1.0);
    CHECK(rec.fusions[0].boundary == BoundaryClass::IsolatedPair);

    // flipping to |Phi+> (H tag only) makes the same fusion fail every time
    j["resources"]["psi"]["cliffords"]["1"] = "H";
    NetworkSpec spec2 = NetworkSpec::from_json(j);
    MonteCarloResult mc2 = run_monte_carlo(spec2, 1);
    CHECK(mc2.per_fusion[0].failure == 30);
}

TEST_CASE("end-to-end trial replays against the tableau oracle") {
    // Replay each trial's recorded branches through the tableau and compare
    // with the final graph (with tags), for a 16-qubit four-ring network.
    NetworkSpec spec = NetworkSpec::load(data_dir() + "/four_rings_network.json");
    spec.fusions[0].forced.reset();
    spec.fusions[1].forced.reset();
    spec.fusions[2].forced.reset();
    for (uint64_t trial = 0; trial < 24; ++trial) {
        TrialRecord rec = run_trial(spec, trial);
        GraphState initial = build_state(spec);
        StabilizerTableau t = from_graph(initial);
        std::vector<uint32_t> col_of(initial.vertex_count());
        std::vector<uint32_t> alive = initial.alive_vertices();
        for (uint32_t i = 0; i < alive.size(); ++i) {
            col_of[alive[i]] = i;
        }
        Rng rng(999);
        for (const FusionOutcome& f : rec.fusions) {
            REQUIRE(f.branch != "erased");
            auto branch = f.branch == "success" ? FusionBranch::Success : FusionBranch::Failure;
            // outcome signs are immaterial mod signs; let the oracle draw them
            OracleFusion of =
                oracle_fuse(t, col_of[f.a], col_of[f.b], f.scheduled, branch, std::nullopt, rng);
            t = std::move(of.tableau);
            // removing two columns shifts the map
            uint32_t ca = col_of[f.a], cb = col_of[f.b];
            uint32_t lo = std::min(ca, cb), hi = std::max(ca, cb);
            for (uint32_t v = 0; v < col_of.size(); ++v) {
                uint32_t c = col_of[v];
                col_of[v] = c - (c > lo ? 1 : 0) - (c > hi ? 1 : 0);
            }
        }
        CHECK(groups_equal_mod_signs(from_graph(rec.final_graph), t));
    }
}

TEST_CASE("four rings: three successes connect the fourth fusion's qubits") {
    NetworkSpec spec = NetworkSpec::load(data_dir() + "/four_rings_network.json");
    GraphState g = build_state(spec);
    CHECK(g.alive_count() == 16);
    CHECK(g.component_sizes() == std::vector<size_t>(4, 4));
    TrialRecord rec = run_trial(spec, 0);
    CHECK(rec.fusions[3].adjacent_before);
}
