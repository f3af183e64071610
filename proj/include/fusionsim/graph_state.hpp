#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionsim/local_clifford.hpp"
#include "fusionsim/vertex_set.hpp"

namespace fusionsim {

struct invalid_vertex_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A graph state: simple undirected graph plus a local-Clifford tag per vertex.
// The represented stabilizer state is (tensor of tags) |G>. Destructively
// measured vertices are tombstoned: they stay in the id space, dead, with an
// empty row, so schedules can keep referring to absolute qubit ids.
class GraphState {
  public:
    explicit GraphState(uint32_t n);

    static GraphState from_edges(uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges);
    static GraphState path(uint32_t n);
    static GraphState ring(uint32_t n);

    uint32_t vertex_count() const { return static_cast<uint32_t>(adj_.size()); }
    uint32_t alive_count() const { return alive_count_; }
    bool alive(uint32_t v) const { return v < adj_.size() && alive_[v]; }
    std::vector<uint32_t> alive_vertices() const;

    bool has_edge(uint32_t u, uint32_t v) const;
    size_t degree(uint32_t v) const { return adj_[v].size(); }
    const VertexSet& neighborhood(uint32_t v) const;

    void toggle_edge(uint32_t u, uint32_t v);
    void add_edge(uint32_t u, uint32_t v);

    // Removes v from every adjacency row and marks it dead.
    void delete_vertex(uint32_t v);

    uint32_t add_vertex();

    // Complements the induced subgraph on N(v). Raw graph edit; no tags touched.
    void local_complement(uint32_t v);

    // Local complementation as a state-preserving operation: performs the raw
    // edit and composes the byproduct gates (sqrt(X) on v, R on each neighbor,
    // modulo phase) into the tags so the represented state is unchanged.
    void local_complement_state(uint32_t v);

    const LocalClifford& clifford(uint32_t v) const { return tags_[v]; }
    void set_clifford(uint32_t v, LocalClifford c);

    // tag(v) <- c o tag(v): a new gate applied on top of the current state.
    void compose_clifford(uint32_t v, const LocalClifford& c);
    // tag(v) <- tag(v) o c: a rewrite byproduct that acts before existing tags.
    void compose_clifford_under(uint32_t v, const LocalClifford& c);

    // Bulk rewrite used by the fusion/measurement rules: assigns the given
    // rows, removes `dead` everywhere, and checks the result is symmetric.
    void apply_rewrite(const std::map<uint32_t, VertexSet>& new_rows,
                       const std::vector<uint32_t>& dead);

    void check_vertex(uint32_t v) const;
    void check_invariants() const;

    // Connected component of v among alive vertices.
    VertexSet component_of(uint32_t v) const;
    std::vector<size_t> component_sizes() const;

    // Alive subgraph induced by the components of the given seeds, relabeled
    // densely; mapping[i] = original id of new vertex i.
    std::pair<GraphState, std::vector<uint32_t>> induced_components(
        const std::vector<uint32_t>& seeds) const;

    bool small_mode() const { return small_; }
    VertexSet empty_set() const { return VertexSet(small_); }

    bool same_edges(const GraphState& other) const;
    bool operator==(const GraphState& other) const;

  private:
    void convert_to_large();

    bool small_;
    uint32_t alive_count_;
    std::vector<VertexSet> adj_;
    std::vector<LocalClifford> tags_;
    std::vector<uint8_t> alive_;
};

}  // namespace fusionsim
