#include "doctest.h"

#include <set>

#include "fusionsim/graph_state.hpp"
#include "fusionsim/io.hpp"
#include "fusionsim/rng.hpp"

using namespace fusionsim;

namespace {

GraphState random_graph(uint32_t n, double density, Rng& rng) {
    GraphState g(n);
    for (uint32_t u = 0; u < n; ++u) {
        for (uint32_t v = u + 1; v < n; ++v) {
            if (rng.coin(density)) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

// Independent set algebra: count memberships one element at a time.
std::set<uint32_t> brute_symmetric_difference(const std::vector<std::set<uint32_t>>& sets) {
    std::set<uint32_t> out;
    std::set<uint32_t> universe;
    for (const auto& s : sets) {
        universe.insert(s.begin(), s.end());
    }
    for (uint32_t e : universe) {
        int count = 0;
        for (const auto& s : sets) {
            count += s.count(e);
        }
        if (count % 2 == 1) {
            out.insert(e);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("symmetric difference definition examples") {
    auto mk = [](std::initializer_list<uint32_t> xs) {
        VertexSet s(true);
        for (uint32_t x : xs) {
            s.insert(x);
        }
        return s;
    };
    CHECK(symmetric_difference({mk({1, 2}), mk({2, 3})}) == mk({1, 3}));
    CHECK(symmetric_difference({mk({1, 2, 5}), mk({1, 2, 5})}).empty());
    CHECK(symmetric_difference({mk({1, 2}), mk({3}), mk({1, 3})}) == mk({2}));
}

TEST_CASE("symmetric difference equals brute-force membership counting") {
    for (bool small_mode : {true, false}) {
        Rng rng(small_mode ? 11 : 12);
        for (int trial = 0; trial < 200; ++trial) {
            size_t k = 1 + rng.below(5);
            std::vector<VertexSet> sets(k, VertexSet(small_mode));
            std::vector<std::set<uint32_t>> ref(k);
            for (size_t i = 0; i < k; ++i) {
                size_t m = rng.below(12);
                for (size_t j = 0; j < m; ++j) {
                    uint32_t e = rng.below(40);
                    sets[i].insert(e);
                    ref[i].insert(e);
                }
            }
            std::vector<uint32_t> got = symmetric_difference(sets).to_vector();
            auto want = brute_symmetric_difference(ref);
            CHECK(std::set<uint32_t>(got.begin(), got.end()) == want);
        }
    }
}

TEST_CASE("toggle and delete basics") {
    GraphState g(2);
    g.toggle_edge(0, 1);
    CHECK(g.has_edge(0, 1));
    g.toggle_edge(0, 1);
    CHECK(!g.has_edge(0, 1));
    CHECK_THROWS_AS(g.toggle_edge(1, 1), invalid_vertex_error);

    GraphState p = GraphState::path(3);
    p.delete_vertex(1);
    CHECK(p.alive_count() == 2);
    CHECK(p.neighborhood(0).empty());
    CHECK(p.neighborhood(2).empty());
    CHECK_THROWS_AS(p.toggle_edge(0, 1), invalid_vertex_error);
}

TEST_CASE("local complementation examples") {
    GraphState p = GraphState::path(3);
    p.local_complement(1);
    CHECK(p.has_edge(0, 2));
    CHECK(p.has_edge(0, 1));
    CHECK(p.has_edge(1, 2));

    // triangle back to path
    p.local_complement(1);
    CHECK(!p.has_edge(0, 2));

    GraphState t = GraphState::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    t.local_complement(0);
    CHECK(!t.has_edge(1, 2));
    CHECK(t.has_edge(0, 1));
    CHECK(t.has_edge(0, 2));
}

TEST_CASE("local complementation is an involution preserving symmetry") {
    for (uint32_t n : {12u, 30u, 80u}) {
        Rng rng(n);
        for (int trial = 0; trial < 20; ++trial) {
            GraphState g = random_graph(n, 0.3, rng);
            uint32_t v = rng.below(n);
            GraphState before = g;
            std::vector<size_t> degrees;
            for (uint32_t u = 0; u < n; ++u) {
                degrees.push_back(g.degree(u));
            }
            g.local_complement(v);
            g.check_invariants();
            // non-neighbors of v keep their degree parity... in fact their
            // entire row when they are outside N(v)
            for (uint32_t u = 0; u < n; ++u) {
                if (u != v && !before.neighborhood(v).contains(u)) {
                    CHECK(g.degree(u) == degrees[u]);
                }
            }
            g.local_complement(v);
            CHECK(g.same_edges(before));
        }
    }
}

TEST_CASE("compose_clifford examples") {
    GraphState g(1);
    g.compose_clifford(0, LocalClifford::h());
    g.compose_clifford(0, LocalClifford::h());
    CHECK(g.clifford(0).is_identity());
    for (int i = 0; i < 4; ++i) {
        g.compose_clifford(0, LocalClifford::r());
    }
    CHECK(g.clifford(0).is_identity());
    g.compose_clifford(0, LocalClifford::h());
    g.compose_clifford(0, LocalClifford::r());
    CHECK(g.clifford(0).word() == "RH");
    CHECK(g.clifford(0) == LocalClifford::k());
}

TEST_CASE("add_vertex crosses the small-graph threshold") {
    GraphState g(kSmallGraphMaxVertices);
    CHECK(g.small_mode());
    g.add_edge(0, 63);
    uint32_t v = g.add_vertex();
    CHECK(!g.small_mode());
    CHECK(g.has_edge(0, 63));
    g.add_edge(v, 0);
    CHECK(g.has_edge(64, 0));
    g.check_invariants();
}

TEST_CASE("graph json round trip") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        GraphState g = random_graph(10, 0.4, rng);
        g.set_clifford(3, LocalClifford::h());
        g.set_clifford(7, LocalClifford::k());
        if (trial % 2) {
            g.delete_vertex(5);
        }
        GraphState back = graph_from_json_string(graph_to_json_string(g));
        CHECK(back == g);
    }
}

TEST_CASE("dot export is deterministic") {
    GraphState g = GraphState::from_edges(4, {{0, 1}, {2, 3}, {1, 2}});
    g.set_clifford(2, LocalClifford::h());
    std::string a = graph_to_dot(g);
    std::string b = graph_to_dot(g);
    CHECK(a == b);
    CHECK(a.find("q0 -- q1") != std::string::npos);
}
