#include "fusionsim/fusion_rules.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace fusionsim {

std::pair<ParityPair, ParityPair> representative_parities(FusionType t) {
    switch (t) {
        case FusionType::XXZZ: return {{Pauli::X, Pauli::X}, {Pauli::Z, Pauli::Z}};
        case FusionType::XYYX: return {{Pauli::X, Pauli::Y}, {Pauli::Y, Pauli::X}};
        case FusionType::XZZX: return {{Pauli::X, Pauli::Z}, {Pauli::Z, Pauli::X}};
        case FusionType::YZZY: return {{Pauli::Y, Pauli::Z}, {Pauli::Z, Pauli::Y}};
        case FusionType::XYYZ: return {{Pauli::X, Pauli::Y}, {Pauli::Y, Pauli::Z}};
    }
    throw std::invalid_argument("bad fusion type");
}

ClassifiedFusion classify_parity_pair(ParityPair p1, ParityPair p2) {
    if (p1.on_a == p2.on_a && p1.on_b == p2.on_b) {
        throw std::invalid_argument("parities are identical");
    }
    if (p1.on_a == p2.on_a || p1.on_b == p2.on_b) {
        throw std::invalid_argument("parities anticommute; not simultaneously measurable");
    }
    // The class of {p1, p2, p1*p2} is the bijection letter_on_A -> letter_on_B.
    auto third = [](Pauli x, Pauli y) {
        return static_cast<Pauli>(3 - static_cast<int>(x) - static_cast<int>(y));
    };
    std::array<Pauli, 3> to_b{};
    to_b[static_cast<int>(p1.on_a)] = p1.on_b;
    to_b[static_cast<int>(p2.on_a)] = p2.on_b;
    to_b[static_cast<int>(third(p1.on_a, p2.on_a))] = third(p1.on_b, p2.on_b);

    const Pauli X = Pauli::X, Y = Pauli::Y, Z = Pauli::Z;
    auto is = [&](Pauli ix, Pauli iy, Pauli iz) {
        return to_b[0] == ix && to_b[1] == iy && to_b[2] == iz;
    };
    if (is(X, Y, Z)) return {FusionType::XXZZ, false};
    if (is(Z, Y, X)) return {FusionType::XZZX, false};
    if (is(Y, X, Z)) return {FusionType::XYYX, false};
    if (is(X, Z, Y)) return {FusionType::YZZY, false};
    if (is(Y, Z, X)) return {FusionType::XYYZ, false};
    assert(is(Z, X, Y));
    return {FusionType::XYYZ, true};
}

ClassifiedFusion rotated_fusion_of(const LocalClifford& tag_a, const LocalClifford& tag_b,
                                   FusionType base) {
    auto [p1, p2] = representative_parities(base);
    ParityPair q1{tag_a.conj_inv(p1.on_a).letter, tag_b.conj_inv(p1.on_b).letter};
    ParityPair q2{tag_a.conj_inv(p2.on_a).letter, tag_b.conj_inv(p2.on_b).letter};
    return classify_parity_pair(q1, q2);
}

std::string to_string(BoundaryClass c) {
    switch (c) {
        case BoundaryClass::Generic: return "generic";
        case BoundaryClass::SharedNeighborhood: return "shared_neighborhood";
        case BoundaryClass::APrivateEmpty: return "a_private_empty";
        case BoundaryClass::BPrivateEmpty: return "b_private_empty";
        case BoundaryClass::IsolatedPair: return "isolated_pair";
    }
    return "?";
}

BoundaryInfo detect_boundary(const GraphState& g, uint32_t a, uint32_t b) {
    g.check_vertex(a);
    g.check_vertex(b);
    if (a == b) {
        throw invalid_vertex_error("fusion qubits must differ");
    }
    VertexSet na = g.neighborhood(a).without(b);
    VertexSet nb = g.neighborhood(b).without(a);
    bool connected = g.has_edge(a, b);
    if (na.empty() && nb.empty()) {
        return {BoundaryClass::IsolatedPair, std::nullopt};
    }
    if (na == nb) {
        // Y_A Y_B when connected, X_A X_B when not.
        ParityPair s = connected ? ParityPair{Pauli::Y, Pauli::Y} : ParityPair{Pauli::X, Pauli::X};
        return {BoundaryClass::SharedNeighborhood, s};
    }
    if (na.empty()) {
        ParityPair s = connected ? ParityPair{Pauli::X, Pauli::Z} : ParityPair{Pauli::X, Pauli::X};
        if (!connected) {
            // A isolated: the implied element is X on A alone; report X_A 1_B as X/X slot abuse
            // is avoided by leaving the pair unset.
            return {BoundaryClass::APrivateEmpty, std::nullopt};
        }
        return {BoundaryClass::APrivateEmpty, s};
    }
    if (nb.empty()) {
        if (!connected) {
            return {BoundaryClass::BPrivateEmpty, std::nullopt};
        }
        return {BoundaryClass::BPrivateEmpty, ParityPair{Pauli::Z, Pauli::X}};
    }
    return {BoundaryClass::Generic, std::nullopt};
}

namespace {

// Accumulates the rewrite of one fusion: new rows are computed against the
// frozen input graph, then applied in one shot.
struct Rewrite {
    const GraphState& g;
    uint32_t a, b;                  // current roles; may be swapped by label-symmetric rules
    const uint32_t orig_a, orig_b;  // caller's ordering, for boundary reporting
    FusionResult res;
    std::map<uint32_t, VertexSet> rows;

    Rewrite(const GraphState& graph, uint32_t qa, uint32_t qb)
        : g(graph),
          a(qa),
          b(qb),
          orig_a(qa),
          orig_b(qb),
          res{graph, {}, {}, "", BoundaryClass::Generic, false} {}

    const VertexSet& nbr(uint32_t v) const { return g.neighborhood(v); }

    void set_row(uint32_t v, VertexSet row) { rows[v] = std::move(row); }

    void byproduct(uint32_t v, const LocalClifford& c) {
        auto [it, inserted] = res.byproducts.emplace(v, c);
        if (!inserted) {
            it->second = c.compose(it->second);
        }
    }

    FusionResult finish(std::string subcase) {
        res.graph.apply_rewrite(rows, {a, b});
        for (const auto& [v, c] : res.byproducts) {
            res.graph.compose_clifford_under(v, c);
        }
        res.subcase = std::move(subcase);
        BoundaryInfo binfo = detect_boundary(g, orig_a, orig_b);
        res.boundary = binfo.cls;
        res.boundary_warning = binfo.cls != BoundaryClass::Generic;
        return std::move(res);
    }
};

VertexSet with(VertexSet s, uint32_t v) {
    s.insert(v);
    return s;
}

// ---- XZZX (X_A Z_B ^ Z_A X_B) ----

FusionResult xzzx_detached(Rewrite& rw, const VertexSet& va, const VertexSet& vb) {
    const VertexSet shared = set_intersection(va, vb);
    set_difference(va, vb).for_each([&](uint32_t ai) { rw.set_row(ai, rw.nbr(ai) ^ vb); });
    set_difference(vb, va).for_each([&](uint32_t bi) { rw.set_row(bi, rw.nbr(bi) ^ va); });
    shared.for_each([&](uint32_t ci) { rw.set_row(ci, rw.nbr(ci) ^ va ^ vb); });
    return rw.finish("xzzx.detached");
}

// N(B)\A empty: the transformation is the X-basis measurement of A.
FusionResult xzzx_connected_pendant(Rewrite& rw, uint32_t a, const VertexSet& va, bool swapped) {
    uint32_t a_star = va.min_element();
    const VertexSet nas = rw.nbr(a_star);
    rw.set_row(a_star, va.without(a_star));
    va.for_each([&](uint32_t ai) {
        if (ai == a_star) {
            return;
        }
        VertexSet row = rw.nbr(ai) ^ nas;
        if (nas.contains(ai)) {
            row ^= va;
        }
        row.toggle(a_star);
        rw.set_row(ai, row);
    });
    nas.for_each([&](uint32_t di) {
        if (di == a || va.contains(di)) {
            return;
        }
        rw.set_row(di, rw.nbr(di) ^ va);
    });
    rw.byproduct(a_star, LocalClifford::h());
    rw.res.special_neighbors = {a_star};
    return rw.finish(swapped ? "xzzx.connected.a_pendant" : "xzzx.connected.b_pendant");
}

FusionResult xzzx_connected_shared_only(Rewrite& rw, const VertexSet& va, const VertexSet& shared) {
    uint32_t c_star = shared.min_element();
    const VertexSet ncs = rw.nbr(c_star);
    rw.set_row(c_star, va.without(c_star));
    shared.for_each([&](uint32_t ci) {
        if (ci == c_star) {
            return;
        }
        VertexSet row = rw.nbr(ci) ^ ncs;
        if (ncs.contains(ci)) {
            row ^= va;
        }
        row.toggle(c_star);
        rw.set_row(ci, row);
    });
    ncs.for_each([&](uint32_t di) {
        if (di == rw.a || di == rw.b || va.contains(di)) {
            return;
        }
        rw.set_row(di, rw.nbr(di) ^ va);
    });
    rw.byproduct(c_star, LocalClifford::h());
    rw.res.special_neighbors = {c_star};
    return rw.finish("xzzx.connected.shared_only");
}

FusionResult xzzx_connected_both_private(Rewrite& rw, const VertexSet& va, const VertexSet& vb,
                                         const VertexSet& priv_a, const VertexSet& priv_b,
                                         const VertexSet& shared) {
    uint32_t a_star = priv_a.min_element();
    uint32_t b_star = priv_b.min_element();
    const VertexSet nas = rw.nbr(a_star);
    const VertexSet nbs = rw.nbr(b_star);
    rw.set_row(a_star, va.without(a_star));
    rw.set_row(b_star, vb.without(b_star));
    priv_a.for_each([&](uint32_t ai) {
        if (ai == a_star) {
            return;
        }
        VertexSet k = rw.nbr(ai) ^ nas;
        bool bs_in_diff = k.contains(b_star);
        k.erase(a_star);
        k.erase(b_star);
        k.erase(ai);
        VertexSet row = with(k, a_star);
        if (bs_in_diff) {
            row ^= vb.without(b_star);
        }
        if (nas.contains(ai)) {
            row ^= va.without(a_star).without(ai);
        }
        rw.set_row(ai, row);
    });
    priv_b.for_each([&](uint32_t bi) {
        if (bi == b_star) {
            return;
        }
        VertexSet l = rw.nbr(bi) ^ nbs;
        bool as_in_diff = l.contains(a_star);
        l.erase(a_star);
        l.erase(b_star);
        l.erase(bi);
        VertexSet row = with(l, b_star);
        if (as_in_diff) {
            row ^= va.without(a_star);
        }
        if (nbs.contains(bi)) {
            row ^= vb.without(b_star).without(bi);
        }
        rw.set_row(bi, row);
    });
    bool ab_adj = nas.contains(b_star);
    shared.for_each([&](uint32_t ci) {
        VertexSet m = rw.nbr(ci) ^ nas ^ nbs;
        m.erase(a_star);
        m.erase(b_star);
        m.erase(ci);
        VertexSet row = with(with(m, a_star), b_star);
        bool in_a = nas.contains(ci);
        bool in_b = nbs.contains(ci);
        if ((in_a && !in_b && !ab_adj) || (!in_a && in_b && ab_adj)) {
            row ^= va.without(a_star).without(ci);
        } else if ((!in_a && in_b && !ab_adj) || (in_a && !in_b && ab_adj)) {
            row ^= vb.without(b_star).without(ci);
        } else if ((!in_a && !in_b && ab_adj) || (in_a && in_b && !ab_adj)) {
            row ^= va.without(a_star);
            row ^= vb.without(b_star);
        }
        rw.set_row(ci, row);
    });
    set_union(nas, nbs).for_each([&](uint32_t di) {
        if (di == rw.a || di == rw.b || va.contains(di) || vb.contains(di)) {
            return;
        }
        VertexSet row = rw.nbr(di);
        if (nas.contains(di)) {
            row ^= va;
        }
        if (nbs.contains(di)) {
            row ^= vb;
        }
        rw.set_row(di, row);
    });
    rw.byproduct(a_star, LocalClifford::h());
    rw.byproduct(b_star, LocalClifford::h());
    rw.res.special_neighbors = {a_star, b_star};
    return rw.finish("xzzx.connected.both_private");
}

FusionResult xzzx_connected_one_private(Rewrite& rw, const VertexSet& va, const VertexSet& vb,
                                        const VertexSet& priv_a, const VertexSet& shared,
                                        bool swapped) {
    uint32_t a_star = priv_a.min_element();
    uint32_t c_star = shared.min_element();
    const VertexSet nas = rw.nbr(a_star);
    const VertexSet ncs = rw.nbr(c_star);
    rw.set_row(a_star, priv_a.without(a_star));
    rw.set_row(c_star, vb.without(c_star));
    priv_a.for_each([&](uint32_t ai) {
        if (ai == a_star) {
            return;
        }
        VertexSet k = rw.nbr(ai) ^ nas;
        bool cs_in_diff = k.contains(c_star);
        k.erase(a_star);
        k.erase(c_star);
        k.erase(ai);
        VertexSet row = with(k, a_star);
        if (cs_in_diff) {
            row ^= vb.without(c_star);
        }
        if (nas.contains(ai)) {
            row ^= priv_a.without(a_star).without(ai);
        }
        rw.set_row(ai, row);
    });
    shared.for_each([&](uint32_t ci) {
        if (ci == c_star) {
            return;
        }
        VertexSet l = rw.nbr(ci) ^ ncs;
        bool as_in_diff = l.contains(a_star);
        l.erase(a_star);
        l.erase(c_star);
        l.erase(ci);
        VertexSet row = with(l, c_star);
        if (as_in_diff) {
            row ^= priv_a.without(a_star);
        }
        if (ncs.contains(ci)) {
            row ^= vb.without(c_star).without(ci);
        }
        rw.set_row(ci, row);
    });
    set_union(nas, ncs).for_each([&](uint32_t di) {
        if (di == rw.a || di == rw.b || va.contains(di) || vb.contains(di)) {
            return;
        }
        VertexSet row = rw.nbr(di);
        if (nas.contains(di)) {
            row ^= priv_a;
        }
        if (ncs.contains(di)) {
            row ^= vb;
        }
        rw.set_row(di, row);
    });
    rw.byproduct(a_star, LocalClifford::h());
    rw.byproduct(c_star, LocalClifford::h());
    rw.res.special_neighbors = {a_star, c_star};
    return rw.finish(swapped ? "xzzx.connected.a_private_empty" : "xzzx.connected.b_private_empty");
}

FusionResult fuse_xzzx(Rewrite& rw, uint32_t a, uint32_t b) {
    const GraphState& g = rw.g;
    VertexSet va = g.neighborhood(a).without(b);
    VertexSet vb = g.neighborhood(b).without(a);
    if (!g.has_edge(a, b)) {
        return xzzx_detached(rw, va, vb);
    }
    VertexSet priv_a = set_difference(va, vb);
    VertexSet priv_b = set_difference(vb, va);
    VertexSet shared = set_intersection(va, vb);
    if (vb.empty()) {
        return xzzx_connected_pendant(rw, a, va, false);
    }
    if (va.empty()) {
        std::swap(rw.a, rw.b);
        return xzzx_connected_pendant(rw, b, vb, true);
    }
    if (priv_a.empty() && priv_b.empty()) {
        return xzzx_connected_shared_only(rw, va, shared);
    }
    if (!priv_a.empty() && !priv_b.empty()) {
        return xzzx_connected_both_private(rw, va, vb, priv_a, priv_b, shared);
    }
    if (!priv_a.empty()) {
        return xzzx_connected_one_private(rw, va, vb, priv_a, shared, false);
    }
    std::swap(rw.a, rw.b);
    return xzzx_connected_one_private(rw, vb, va, priv_b, shared, true);
}

// ---- XXZZ (X_A X_B ^ Z_A Z_B) ----
// The connected transformation coincides with the detached one on the
// neighborhoods with the fusion qubits stripped.

FusionResult fuse_xxzz(Rewrite& rw, uint32_t a, uint32_t b, bool connected) {
    const GraphState& g = rw.g;
    VertexSet va = g.neighborhood(a).without(b);
    VertexSet vb = g.neighborhood(b).without(a);
    const char* conn = connected ? "connected" : "detached";
    bool swapped = false;
    if (set_difference(va, vb).empty()) {
        if (set_difference(vb, va).empty()) {
            // Identical neighborhoods: the fusion only removes the qubits.
            return rw.finish(std::string("xxzz.") + conn + ".shared_neighborhood");
        }
        std::swap(va, vb);
        std::swap(rw.a, rw.b);
        swapped = true;
    }
    uint32_t a_star = set_difference(va, vb).min_element();
    const VertexSet nas = rw.nbr(a_star);
    VertexSet diff = va ^ vb;
    rw.set_row(a_star, diff.without(a_star));
    diff.for_each([&](uint32_t qi) {
        if (qi == a_star) {
            return;
        }
        VertexSet row = rw.nbr(qi) ^ nas;
        if (nas.contains(qi)) {
            row ^= va;
            row ^= vb;
        }
        row.toggle(a_star);
        rw.set_row(qi, row);
    });
    nas.for_each([&](uint32_t ci) {
        if (ci == rw.a || ci == rw.b || diff.contains(ci)) {
            return;
        }
        rw.set_row(ci, rw.nbr(ci) ^ va ^ vb);
    });
    rw.byproduct(a_star, LocalClifford::h());
    rw.res.special_neighbors = {a_star};
    return rw.finish(std::string("xxzz.") + conn + (swapped ? ".b_star" : ".a_star"));
}

// ---- XYYX (X_A Y_B ^ Y_A X_B) ---- one rule for any layout.

FusionResult fuse_xyyx(Rewrite& rw, uint32_t a, uint32_t b, bool connected) {
    const GraphState& g = rw.g;
    VertexSet va = g.neighborhood(a).without(b);
    VertexSet vb = g.neighborhood(b).without(a);
    VertexSet diff = va ^ vb;
    diff.for_each([&](uint32_t qi) {
        rw.set_row(qi, rw.nbr(qi) ^ diff.without(qi));
        rw.byproduct(qi, LocalClifford::r());
    });
    return rw.finish(std::string("xyyx.") + (connected ? "connected" : "detached"));
}

// ---- XYYZ (X_A Y_B ^ Y_A Z_B) ----

FusionResult xyyz_detached(Rewrite& rw, const VertexSet& va, const VertexSet& vb) {
    set_difference(va, vb).for_each([&](uint32_t ai) { rw.set_row(ai, rw.nbr(ai) ^ vb); });
    set_difference(vb, va).for_each([&](uint32_t bi) {
        rw.set_row(bi, rw.nbr(bi) ^ vb.without(bi) ^ va);
        rw.byproduct(bi, LocalClifford::r());
    });
    set_intersection(va, vb).for_each([&](uint32_t ci) {
        rw.set_row(ci, rw.nbr(ci) ^ va.without(ci));
        rw.byproduct(ci, LocalClifford::r());
    });
    return rw.finish("xyyz.detached");
}

FusionResult xyyz_connected(Rewrite& rw, const VertexSet& va, const VertexSet& vb) {
    VertexSet priv_a = set_difference(va, vb);
    VertexSet priv_b = set_difference(vb, va);
    VertexSet shared = set_intersection(va, vb);
    if (priv_b.empty() && shared.empty()) {
        priv_a.for_each([&](uint32_t ai) {
            rw.set_row(ai, rw.nbr(ai) ^ va.without(ai));
            rw.byproduct(ai, LocalClifford::r());
        });
        return rw.finish("xyyz.connected.a_only");
    }
    if (!priv_b.empty()) {
        uint32_t b_star = priv_b.min_element();
        const VertexSet nbs = rw.nbr(b_star);
        rw.set_row(b_star, vb.without(b_star));
        priv_a.for_each([&](uint32_t ai) {
            VertexSet row = rw.nbr(ai) ^ va.without(ai);
            if (nbs.contains(ai)) {
                row ^= vb;
            }
            rw.set_row(ai, row);
            rw.byproduct(ai, LocalClifford::r());
        });
        priv_b.for_each([&](uint32_t bi) {
            if (bi == b_star) {
                return;
            }
            VertexSet row = rw.nbr(bi) ^ nbs;
            if (nbs.contains(bi)) {
                row ^= vb;
            }
            row.toggle(b_star);
            rw.set_row(bi, row);
        });
        shared.for_each([&](uint32_t ci) {
            VertexSet row;
            if (!nbs.contains(ci)) {
                row = rw.nbr(ci) ^ nbs ^ va.without(ci);
                row.toggle(b_star);
            } else {
                row = rw.nbr(ci) ^ va ^ vb ^ nbs.without(ci);
                row.toggle(b_star);
            }
            rw.set_row(ci, row);
            rw.byproduct(ci, LocalClifford::r());
        });
        nbs.for_each([&](uint32_t di) {
            if (di == rw.a || di == rw.b || va.contains(di) || vb.contains(di)) {
                return;
            }
            rw.set_row(di, rw.nbr(di) ^ vb);
        });
        rw.byproduct(b_star, LocalClifford::h());
        rw.res.special_neighbors = {b_star};
        return rw.finish("xyyz.connected.b_star");
    }
    uint32_t c_star = shared.min_element();
    const VertexSet ncs = rw.nbr(c_star);
    rw.set_row(c_star, vb.without(c_star));
    priv_a.for_each([&](uint32_t ai) {
        VertexSet row = rw.nbr(ai) ^ va.without(ai);
        if (!ncs.contains(ai)) {
            row ^= vb;
        }
        rw.set_row(ai, row);
        rw.byproduct(ai, LocalClifford::r());
    });
    shared.for_each([&](uint32_t ci) {
        if (ci == c_star) {
            return;
        }
        VertexSet row = rw.nbr(ci) ^ ncs;
        if (ncs.contains(ci)) {
            row ^= vb;
        }
        row.toggle(c_star);
        rw.set_row(ci, row);
    });
    ncs.for_each([&](uint32_t di) {
        if (di == rw.a || di == rw.b || va.contains(di) || vb.contains(di)) {
            return;
        }
        rw.set_row(di, rw.nbr(di) ^ vb);
    });
    rw.byproduct(c_star, LocalClifford::h());
    rw.res.special_neighbors = {c_star};
    return rw.finish("xyyz.connected.c_star");
}

FusionResult fuse_xyyz(Rewrite& rw, uint32_t a, uint32_t b) {
    const GraphState& g = rw.g;
    VertexSet va = g.neighborhood(a).without(b);
    VertexSet vb = g.neighborhood(b).without(a);
    if (!g.has_edge(a, b)) {
        return xyyz_detached(rw, va, vb);
    }
    return xyyz_connected(rw, va, vb);
}

// ---- YZZY (Y_A Z_B ^ Z_A Y_B) ----

FusionResult yzzy_detached_special(Rewrite& rw, const VertexSet& va, const VertexSet& vb,
                                   bool swapped) {
    // b_* is drawn from N(B)\N(A); the label-swapped call covers the mirrored
    // case N(B)\N(A) empty, N(A)\N(B) nonempty.
    VertexSet priv_a = set_difference(va, vb);
    VertexSet priv_b = set_difference(vb, va);
    VertexSet shared = set_intersection(va, vb);
    uint32_t b_star = priv_b.min_element();
    const VertexSet nbs = rw.nbr(b_star);
    rw.set_row(b_star, va ^ vb.without(b_star));
    priv_a.for_each([&](uint32_t ai) {
        VertexSet row;
        if (!nbs.contains(ai)) {
            row = rw.nbr(ai) ^ va.without(ai) ^ nbs;
            row.toggle(b_star);
        } else {
            row = rw.nbr(ai) ^ vb ^ nbs.without(ai);
            row.toggle(b_star);
        }
        rw.set_row(ai, row);
        rw.byproduct(ai, LocalClifford::r());
    });
    priv_b.for_each([&](uint32_t bi) {
        if (bi == b_star) {
            return;
        }
        VertexSet row = rw.nbr(bi) ^ nbs;
        if (nbs.contains(bi)) {
            row ^= va;
            row ^= vb;
        }
        row.toggle(b_star);
        rw.set_row(bi, row);
    });
    shared.for_each([&](uint32_t ci) {
        VertexSet row;
        if (!nbs.contains(ci)) {
            row = rw.nbr(ci) ^ va.without(ci);
        } else {
            row = rw.nbr(ci) ^ vb.without(ci);
        }
        rw.set_row(ci, row);
        rw.byproduct(ci, LocalClifford::r());
    });
    nbs.for_each([&](uint32_t di) {
        if (di == rw.a || di == rw.b || va.contains(di) || vb.contains(di)) {
            return;
        }
        rw.set_row(di, rw.nbr(di) ^ va ^ vb);
    });
    rw.byproduct(b_star, LocalClifford::h());
    rw.res.special_neighbors = {b_star};
    return rw.finish(swapped ? "yzzy.detached.a_star" : "yzzy.detached.b_star");
}

FusionResult yzzy_detached_shared_only(Rewrite& rw, const VertexSet& vb) {
    vb.for_each([&](uint32_t ci) {
        rw.set_row(ci, rw.nbr(ci) ^ vb.without(ci));
        rw.byproduct(ci, LocalClifford::r());
    });
    return rw.finish("yzzy.detached.shared_only");
}

FusionResult yzzy_connected(Rewrite& rw, const VertexSet& va, const VertexSet& vb) {
    set_difference(va, vb).for_each([&](uint32_t ai) {
        rw.set_row(ai, rw.nbr(ai) ^ va.without(ai));
        rw.byproduct(ai, LocalClifford::r());
    });
    set_difference(vb, va).for_each([&](uint32_t bi) {
        rw.set_row(bi, rw.nbr(bi) ^ vb.without(bi));
        rw.byproduct(bi, LocalClifford::r());
    });
    set_intersection(va, vb).for_each(
        [&](uint32_t ci) { rw.set_row(ci, rw.nbr(ci) ^ va ^ vb); });
    return rw.finish("yzzy.connected");
}

FusionResult fuse_yzzy(Rewrite& rw, uint32_t a, uint32_t b) {
    const GraphState& g = rw.g;
    VertexSet va = g.neighborhood(a).without(b);
    VertexSet vb = g.neighborhood(b).without(a);
    if (g.has_edge(a, b)) {
        return yzzy_connected(rw, va, vb);
    }
    if (!set_difference(vb, va).empty()) {
        return yzzy_detached_special(rw, va, vb, false);
    }
    if (!set_difference(va, vb).empty()) {
        std::swap(rw.a, rw.b);
        return yzzy_detached_special(rw, vb, va, true);
    }
    return yzzy_detached_shared_only(rw, vb);
}

}  // namespace

FusionResult fuse_success(const GraphState& g, uint32_t a, uint32_t b, FusionType type) {
    g.check_vertex(a);
    g.check_vertex(b);
    if (a == b) {
        throw invalid_vertex_error("fusion qubits must differ");
    }
    Rewrite rw(g, a, b);
    VertexSet va = g.neighborhood(a).without(b);
    VertexSet vb = g.neighborhood(b).without(a);
    if (va.empty() && vb.empty()) {
        // The pair forms its own component; measuring it cannot affect the rest.
        return rw.finish(to_string(type) + ".isolated_pair");
    }
    switch (type) {
        case FusionType::XZZX: return fuse_xzzx(rw, a, b);
        case FusionType::XXZZ: return fuse_xxzz(rw, a, b, g.has_edge(a, b));
        case FusionType::XYYX: return fuse_xyyx(rw, a, b, g.has_edge(a, b));
        case FusionType::XYYZ: return fuse_xyyz(rw, a, b);
        case FusionType::YZZY: return fuse_yzzy(rw, a, b);
    }
    throw std::invalid_argument("bad fusion type");
}

FusionResult fuse_failure(const GraphState& g, uint32_t a, uint32_t b, FusionType type) {
    g.check_vertex(a);
    g.check_vertex(b);
    if (a == b) {
        throw invalid_vertex_error("fusion qubits must differ");
    }
    const FusionSetup& setup = fusion_setup(type);
    return fuse_failure_bases(g, a, b, setup.failure_a, setup.failure_b,
                              to_string(type) + ".failure");
}

FusionResult fuse_failure_bases(const GraphState& g, uint32_t a, uint32_t b, Pauli basis_a,
                                Pauli basis_b, std::string label) {
    MeasurementResult first = measure_pauli_basis(g, a, basis_a);
    // A byproduct landing on b rotates the second single-qubit basis.
    auto it = first.byproducts.find(b);
    if (it != first.byproducts.end()) {
        basis_b = it->second.conj_inv(basis_b).letter;
    }
    MeasurementResult second = measure_pauli_basis(first.graph, b, basis_b);
    FusionResult res{std::move(second.graph), {}, {}, std::move(label), BoundaryClass::Generic,
                     false};
    for (const auto& [v, c] : first.byproducts) {
        if (v == b) {
            continue;
        }
        res.byproducts[v] = c;
    }
    for (const auto& [v, c] : second.byproducts) {
        auto [jt, inserted] = res.byproducts.emplace(v, c);
        if (!inserted) {
            jt->second = c.compose(jt->second);
        }
    }
    BoundaryInfo binfo = detect_boundary(g, a, b);
    res.boundary = binfo.cls;
    res.boundary_warning = binfo.cls != BoundaryClass::Generic;
    return res;
}

const std::vector<std::string>& fusion_subcase_labels() {
    static const std::vector<std::string> labels = {
        "xzzx.detached",
        "xzzx.connected.b_pendant",
        "xzzx.connected.a_pendant",
        "xzzx.connected.shared_only",
        "xzzx.connected.both_private",
        "xzzx.connected.b_private_empty",
        "xzzx.connected.a_private_empty",
        "xxzz.detached.a_star",
        "xxzz.detached.b_star",
        "xxzz.detached.shared_neighborhood",
        "xxzz.connected.a_star",
        "xxzz.connected.b_star",
        "xxzz.connected.shared_neighborhood",
        "xyyx.detached",
        "xyyx.connected",
        "xyyz.detached",
        "xyyz.connected.a_only",
        "xyyz.connected.b_star",
        "xyyz.connected.c_star",
        "yzzy.detached.b_star",
        "yzzy.detached.a_star",
        "yzzy.detached.shared_only",
        "yzzy.connected",
        "xxzz.isolated_pair",
        "xyyx.isolated_pair",
        "xzzx.isolated_pair",
        "yzzy.isolated_pair",
        "xyyz.isolated_pair",
    };
    return labels;
}

}  // namespace fusionsim
