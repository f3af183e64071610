#include "fusionsim/measurement_rules.hpp"

namespace fusionsim {

namespace {

void record_byproduct(MeasurementResult& res, uint32_t v, const LocalClifford& c) {
    auto [it, inserted] = res.byproducts.emplace(v, c);
    if (!inserted) {
        it->second = c.compose(it->second);
    }
    res.graph.compose_clifford_under(v, c);
}

}  // namespace

MeasurementResult measure_z(const GraphState& g, uint32_t v) {
    g.check_vertex(v);
    MeasurementResult res{g, {}};
    res.graph.delete_vertex(v);
    return res;
}

MeasurementResult measure_y(const GraphState& g, uint32_t v) {
    g.check_vertex(v);
    MeasurementResult res{g, {}};
    VertexSet nv = g.neighborhood(v);
    std::map<uint32_t, VertexSet> rows;
    nv.for_each([&](uint32_t ai) {
        rows.emplace(ai, g.neighborhood(ai) ^ nv.without(ai));
    });
    res.graph.apply_rewrite(rows, {v});
    nv.for_each([&](uint32_t ai) { record_byproduct(res, ai, LocalClifford::r()); });
    return res;
}

MeasurementResult measure_x(const GraphState& g, uint32_t v) {
    g.check_vertex(v);
    MeasurementResult res{g, {}};
    VertexSet nv = g.neighborhood(v);
    if (nv.empty()) {
        res.graph.delete_vertex(v);
        return res;
    }
    uint32_t a_star = nv.min_element();
    VertexSet na = g.neighborhood(a_star);
    std::map<uint32_t, VertexSet> rows;
    rows.emplace(a_star, nv.without(a_star));
    nv.for_each([&](uint32_t ai) {
        if (ai == a_star) {
            return;
        }
        VertexSet row = g.neighborhood(ai) ^ na;
        if (na.contains(ai)) {
            row ^= nv;
        }
        row.toggle(a_star);
        rows.emplace(ai, row);
    });
    na.for_each([&](uint32_t di) {
        if (di == v || nv.contains(di)) {
            return;
        }
        rows.emplace(di, g.neighborhood(di) ^ nv);
    });
    res.graph.apply_rewrite(rows, {v});
    record_byproduct(res, a_star, LocalClifford::h());
    return res;
}

MeasurementResult measure_pauli_basis(const GraphState& g, uint32_t v, Pauli basis) {
    switch (basis) {
        case Pauli::X: return measure_x(g, v);
        case Pauli::Y: return measure_y(g, v);
        case Pauli::Z: return measure_z(g, v);
    }
    throw std::invalid_argument("bad basis");
}

}  // namespace fusionsim
