#include "doctest.h"

#include <map>

#include "test_helpers.hpp"

#include "fusionsim/measurement_rules.hpp"

using namespace fusionsim;
using namespace fusionsim::testing;

namespace {
const std::vector<FusionType> kTypes = {FusionType::XXZZ, FusionType::XYYX, FusionType::XZZX,
                                        FusionType::YZZY, FusionType::XYYZ};

FusionType type_of_label(const std::string& label) {
    return fusion_type_from_string(label.substr(0, label.find('.')));
}
}  // namespace

TEST_CASE("boundary detection") {
    GraphState chains = GraphState::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    CHECK(detect_boundary(chains, 2, 3).cls == BoundaryClass::Generic);

    GraphState wedge = GraphState::from_edges(3, {{0, 2}, {1, 2}});
    BoundaryInfo info = detect_boundary(wedge, 0, 1);
    CHECK(info.cls == BoundaryClass::SharedNeighborhood);
    CHECK(info.implied_stabilizer == ParityPair{Pauli::X, Pauli::X});

    GraphState wedge_conn = wedge;
    wedge_conn.add_edge(0, 1);
    info = detect_boundary(wedge_conn, 0, 1);
    CHECK(info.cls == BoundaryClass::SharedNeighborhood);
    CHECK(info.implied_stabilizer == ParityPair{Pauli::Y, Pauli::Y});

    GraphState lone_edge = GraphState::from_edges(2, {{0, 1}});
    CHECK(detect_boundary(lone_edge, 0, 1).cls == BoundaryClass::IsolatedPair);

    GraphState pendant = GraphState::from_edges(3, {{0, 1}, {1, 2}});
    info = detect_boundary(pendant, 0, 1);
    CHECK(info.cls == BoundaryClass::APrivateEmpty);
    CHECK(info.implied_stabilizer == ParityPair{Pauli::X, Pauli::Z});
}

TEST_CASE("xzzx detached joins two chains into one") {
    // chains 0-1-2 and 3-4-5, fusing 2 with 3
    GraphState g = GraphState::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    FusionResult r = fuse_success(g, 2, 3, FusionType::XZZX);
    CHECK(r.subcase == "xzzx.detached");
    CHECK(r.byproducts.empty());
    CHECK(r.graph.has_edge(0, 1));
    CHECK(r.graph.has_edge(1, 4));
    CHECK(r.graph.has_edge(4, 5));
    CHECK(r.graph.degree(1) == 2);
    CHECK(r.graph.degree(4) == 2);
    CHECK(!r.boundary_warning);
}

TEST_CASE("xxzz detached makes a star with an H byproduct on a*") {
    GraphState g = GraphState::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    FusionResult r = fuse_success(g, 2, 3, FusionType::XXZZ);
    CHECK(r.subcase == "xxzz.detached.a_star");
    CHECK(r.special_neighbors == std::vector<uint32_t>{1});
    CHECK(r.graph.has_edge(0, 4));
    CHECK(r.graph.has_edge(1, 4));
    CHECK(r.graph.has_edge(5, 4));
    CHECK(r.graph.degree(4) == 3);
    CHECK(r.byproducts.size() == 1);
    CHECK(r.byproducts.at(1) == LocalClifford::h());
}

TEST_CASE("xxzz with fully shared neighborhood just removes the pair") {
    GraphState g = GraphState::from_edges(3, {{0, 2}, {1, 2}});
    FusionResult r = fuse_success(g, 0, 1, FusionType::XXZZ);
    CHECK(r.subcase == "xxzz.detached.shared_neighborhood");
    CHECK(r.graph.alive_count() == 1);
    CHECK(r.graph.neighborhood(2).empty());
    CHECK(r.byproducts.empty());
    CHECK(r.boundary == BoundaryClass::SharedNeighborhood);
    CHECK(r.boundary_warning);
}

TEST_CASE("failure = two single-qubit measurements") {
    GraphState g = GraphState::path(4);
    FusionResult r = fuse_failure(g, 1, 2, FusionType::XXZZ);
    CHECK(r.subcase == "xxzz.failure");
    CHECK(r.graph.alive_count() == 2);
    CHECK(r.graph.neighborhood(0).empty());
    CHECK(r.graph.neighborhood(3).empty());

    GraphState lone_edge = GraphState::from_edges(2, {{0, 1}});
    r = fuse_failure(lone_edge, 0, 1, FusionType::XZZX);
    CHECK(r.graph.alive_count() == 0);
}

TEST_CASE("isolated pair short-circuits every type") {
    for (FusionType t : kTypes) {
        GraphState g = GraphState::from_edges(3, {{0, 1}});
        g.add_vertex();  // vertex 3 isolated with 2
        FusionResult r = fuse_success(g, 0, 1, t);
        CHECK(r.subcase == to_string(t) + ".isolated_pair");
        CHECK(r.graph.alive_count() == 2);
        CHECK(r.boundary == BoundaryClass::IsolatedPair);
        CHECK(fusion_matches_oracle(g, 0, 1, t, FusionBranch::Success, 7));
        CHECK(fusion_matches_oracle(g, 0, 1, t, FusionBranch::Failure, 8));
    }
}

TEST_CASE("every documented subcase matches the oracle and fires") {
    Rng rng(20240601);
    std::map<std::string, int> fired;
    for (const std::string& label : fusion_subcase_labels()) {
        FusionType type = type_of_label(label);
        for (int trial = 0; trial < 40; ++trial) {
            uint32_t n = 6 + rng.below(7);
            FusionInstance inst = make_subcase_instance(label, n, rng);
            FusionResult r = fuse_success(inst.g, inst.a, inst.b, type);
            CHECK(r.subcase == label);
            ++fired[r.subcase];
            bool ok = fusion_matches_oracle(inst.g, inst.a, inst.b, type, FusionBranch::Success,
                                            rng.next());
            if (!ok) {
                CAPTURE(label);
                CAPTURE(inst.a);
                CAPTURE(inst.b);
                CHECK(ok);
                return;
            }
            r.graph.check_invariants();
        }
    }
    for (const std::string& label : fusion_subcase_labels()) {
        CHECK(fired[label] > 0);
    }
}

TEST_CASE("random instances match the oracle for both branches") {
    Rng rng(31337);
    for (int trial = 0; trial < 400; ++trial) {
        uint32_t n = 3 + rng.below(10);
        double density = trial % 3 == 0 ? 0.2 : (trial % 3 == 1 ? 0.5 : 0.8);
        GraphState g = random_graph(n, density, rng);
        uint32_t a = rng.below(n);
        uint32_t b = rng.below(n);
        if (a == b) {
            continue;
        }
        for (FusionType t : kTypes) {
            CAPTURE(trial);
            CHECK(fusion_matches_oracle(g, a, b, t, FusionBranch::Success, rng.next()));
            CHECK(fusion_matches_oracle(g, a, b, t, FusionBranch::Failure, rng.next()));
        }
    }
}

TEST_CASE("label symmetry for the symmetric parity pairs") {
    Rng rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        uint32_t n = 4 + rng.below(7);
        GraphState g = random_graph(n, 0.5, rng);
        uint32_t a = rng.below(n), b = rng.below(n);
        if (a == b) {
            continue;
        }
        for (FusionType t :
             {FusionType::XZZX, FusionType::XYYX, FusionType::YZZY, FusionType::XXZZ}) {
            FusionResult ab = fuse_success(g, a, b, t);
            FusionResult ba = fuse_success(g, b, a, t);
            CHECK(groups_equal_mod_signs(from_graph(ab.graph), from_graph(ba.graph)));
        }
    }
}

TEST_CASE("detached xzzx leaves non-neighbors untouched") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t n = 5 + rng.below(8);
        GraphState g = random_graph(n, 0.4, rng);
        uint32_t a = rng.below(n), b = rng.below(n);
        if (a == b) {
            continue;
        }
        if (g.has_edge(a, b)) {
            g.toggle_edge(a, b);
        }
        FusionResult r = fuse_success(g, a, b, FusionType::XZZX);
        for (uint32_t v = 0; v < n; ++v) {
            if (v == a || v == b || g.neighborhood(a).contains(v) ||
                g.neighborhood(b).contains(v)) {
                continue;
            }
            VertexSet expect = g.neighborhood(v);
            expect.erase(a);
            expect.erase(b);
            CHECK(r.graph.neighborhood(v) == expect);
        }
    }
}

TEST_CASE("connected xxzz equals the detached rule with the a-b edge ignored") {
    Rng rng(29);
    for (int trial = 0; trial < 150; ++trial) {
        uint32_t n = 4 + rng.below(8);
        GraphState g = random_graph(n, 0.5, rng);
        uint32_t a = rng.below(n), b = rng.below(n);
        if (a == b) {
            continue;
        }
        if (!g.has_edge(a, b)) {
            g.add_edge(a, b);
        }
        GraphState no_edge = g;
        no_edge.toggle_edge(a, b);
        FusionResult conn = fuse_success(g, a, b, FusionType::XXZZ);
        FusionResult det = fuse_success(no_edge, a, b, FusionType::XXZZ);
        CHECK(conn.graph.same_edges(det.graph));
        CHECK(conn.byproducts == det.byproducts);
    }
}

TEST_CASE("connected xzzx with pendant b is the X measurement of a") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t n = 4 + rng.below(8);
        GraphState g = random_graph(n, 0.4, rng);
        uint32_t a = rng.below(n), b = rng.below(n);
        if (a == b) {
            continue;
        }
        // make b pendant on a
        std::vector<uint32_t> strip = g.neighborhood(b).to_vector();
        for (uint32_t x : strip) {
            g.toggle_edge(b, x);
        }
        g.add_edge(a, b);
        if (g.neighborhood(a).size() < 2) {
            continue;  // would be an isolated pair
        }
        FusionResult r = fuse_success(g, a, b, FusionType::XZZX);
        CHECK(r.subcase == "xzzx.connected.b_pendant");

        MeasurementResult zb = measure_z(g, b);
        MeasurementResult xa = measure_x(zb.graph, a);
        CHECK(r.graph.same_edges(xa.graph));
        CHECK(r.byproducts == xa.byproducts);
    }
}

TEST_CASE("byproduct tags are already composed into the result graph") {
    GraphState g = GraphState::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    FusionResult r = fuse_success(g, 2, 3, FusionType::XXZZ);
    CHECK(r.graph.clifford(1) == LocalClifford::h());
}

TEST_CASE("fusing dead or equal vertices is an error") {
    GraphState g = GraphState::path(4);
    CHECK_THROWS_AS(fuse_success(g, 1, 1, FusionType::XXZZ), invalid_vertex_error);
    g.delete_vertex(2);
    CHECK_THROWS_AS(fuse_success(g, 1, 2, FusionType::XXZZ), invalid_vertex_error);
    CHECK_THROWS_AS(fuse_failure(g, 2, 3, FusionType::XXZZ), invalid_vertex_error);
}

TEST_CASE("structured families match the oracle for every type and branch") {
    std::vector<GraphState> family;
    for (uint32_t n : {3u, 4u, 5u, 6u}) {
        GraphState complete(n);
        for (uint32_t u = 0; u < n; ++u) {
            for (uint32_t v = u + 1; v < n; ++v) {
                complete.add_edge(u, v);
            }
        }
        family.push_back(complete);
        family.push_back(GraphState::path(n));
        family.push_back(GraphState::ring(n));
        GraphState star(n);
        for (uint32_t v = 1; v < n; ++v) {
            star.add_edge(0, v);
        }
        family.push_back(star);
    }
    Rng rng(2718);
    for (const GraphState& g : family) {
        uint32_t n = g.vertex_count();
        for (uint32_t a = 0; a < n; ++a) {
            for (uint32_t b = a + 1; b < n; ++b) {
                for (FusionType t : kTypes) {
                    CHECK(fusion_matches_oracle(g, a, b, t, FusionBranch::Success, rng.next()));
                    CHECK(fusion_matches_oracle(g, a, b, t, FusionBranch::Failure, rng.next()));
                }
            }
        }
    }
}

TEST_CASE("connected xzzx dispatch is exclusive and exhaustive over emptiness patterns") {
    // all eight (private-a, private-b, shared) emptiness patterns map to
    // exactly one documented branch
    struct Pattern {
        bool priv_a, priv_b, shared;
        const char* label;
    };
    const std::vector<Pattern> table = {
        {false, false, false, "xzzx.isolated_pair"},
        {true, false, false, "xzzx.connected.b_pendant"},
        {false, true, false, "xzzx.connected.a_pendant"},
        {false, false, true, "xzzx.connected.shared_only"},
        {true, true, false, "xzzx.connected.both_private"},
        {true, true, true, "xzzx.connected.both_private"},
        {true, false, true, "xzzx.connected.b_private_empty"},
        {false, true, true, "xzzx.connected.a_private_empty"},
    };
    for (const Pattern& p : table) {
        // a = 0, b = 1 connected; private neighbors 2/3, shared 4/5
        GraphState g(6);
        g.add_edge(0, 1);
        if (p.priv_a) {
            g.add_edge(0, 2);
        }
        if (p.priv_b) {
            g.add_edge(1, 3);
        }
        if (p.shared) {
            g.add_edge(0, 4);
            g.add_edge(1, 4);
            g.add_edge(0, 5);
            g.add_edge(1, 5);
        }
        FusionResult r = fuse_success(g, 0, 1, FusionType::XZZX);
        CHECK(r.subcase == p.label);
        CHECK(fusion_matches_oracle(g, 0, 1, FusionType::XZZX, FusionBranch::Success, 99));
    }
}
