#include "fusionsim/graph_state.hpp"

#include <algorithm>
#include <cassert>

namespace fusionsim {

GraphState::GraphState(uint32_t n)
    : small_(n <= kSmallGraphMaxVertices),
      alive_count_(n),
      adj_(n, VertexSet(n <= kSmallGraphMaxVertices)),
      tags_(n),
      alive_(n, 1) {}

GraphState GraphState::from_edges(uint32_t n,
                                  const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
    GraphState g(n);
    for (auto [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

GraphState GraphState::path(uint32_t n) {
    GraphState g(n);
    for (uint32_t v = 0; v + 1 < n; ++v) {
        g.add_edge(v, v + 1);
    }
    return g;
}

GraphState GraphState::ring(uint32_t n) {
    GraphState g = path(n);
    if (n >= 3) {
        g.add_edge(n - 1, 0);
    }
    return g;
}

std::vector<uint32_t> GraphState::alive_vertices() const {
    std::vector<uint32_t> out;
    out.reserve(alive_count_);
    for (uint32_t v = 0; v < adj_.size(); ++v) {
        if (alive_[v]) {
            out.push_back(v);
        }
    }
    return out;
}

bool GraphState::has_edge(uint32_t u, uint32_t v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[u].contains(v);
}

const VertexSet& GraphState::neighborhood(uint32_t v) const {
    check_vertex(v);
    return adj_[v];
}

void GraphState::toggle_edge(uint32_t u, uint32_t v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw invalid_vertex_error("self-edge requested");
    }
    adj_[u].toggle(v);
    adj_[v].toggle(u);
}

void GraphState::add_edge(uint32_t u, uint32_t v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw invalid_vertex_error("self-edge requested");
    }
    adj_[u].insert(v);
    adj_[v].insert(u);
}

void GraphState::delete_vertex(uint32_t v) {
    check_vertex(v);
    adj_[v].for_each([&](uint32_t w) { adj_[w].erase(v); });
    adj_[v].clear();
    alive_[v] = 0;
    tags_[v] = LocalClifford::identity();
    --alive_count_;
}

uint32_t GraphState::add_vertex() {
    uint32_t v = static_cast<uint32_t>(adj_.size());
    if (small_ && v + 1 > kSmallGraphMaxVertices) {
        convert_to_large();
    }
    adj_.emplace_back(small_);
    tags_.emplace_back();
    alive_.push_back(1);
    ++alive_count_;
    return v;
}

void GraphState::convert_to_large() {
    small_ = false;
    for (auto& row : adj_) {
        VertexSet large(false);
        row.for_each([&](uint32_t w) { large.insert(w); });
        row = std::move(large);
    }
}

void GraphState::local_complement(uint32_t v) {
    check_vertex(v);
    std::vector<uint32_t> nbrs = adj_[v].to_vector();
    for (size_t i = 0; i < nbrs.size(); ++i) {
        for (size_t j = i + 1; j < nbrs.size(); ++j) {
            toggle_edge(nbrs[i], nbrs[j]);
        }
    }
}

void GraphState::local_complement_state(uint32_t v) {
    check_vertex(v);
    // |LC_v(G)> = exp(-i pi/4 X_v) prod_{w in N(v)} exp(i pi/4 Z_w) |G>, so the
    // tags pick up the inverse gates on the right.
    adj_[v].for_each([&](uint32_t w) { compose_clifford_under(w, LocalClifford::r()); });
    compose_clifford_under(v, LocalClifford::q());
    local_complement(v);
}

void GraphState::set_clifford(uint32_t v, LocalClifford c) {
    check_vertex(v);
    tags_[v] = c;
}

void GraphState::compose_clifford(uint32_t v, const LocalClifford& c) {
    check_vertex(v);
    tags_[v] = c.compose(tags_[v]);
}

void GraphState::compose_clifford_under(uint32_t v, const LocalClifford& c) {
    check_vertex(v);
    tags_[v] = tags_[v].compose(c);
}

void GraphState::apply_rewrite(const std::map<uint32_t, VertexSet>& new_rows,
                               const std::vector<uint32_t>& dead) {
    for (const auto& [v, row] : new_rows) {
        check_vertex(v);
        adj_[v] = row;
        adj_[v].erase(v);
        for (uint32_t d : dead) {
            adj_[v].erase(d);
        }
    }
    for (uint32_t d : dead) {
        delete_vertex(d);
    }
#ifndef NDEBUG
    for (const auto& [v, row] : new_rows) {
        adj_[v].for_each([&](uint32_t w) { assert(adj_[w].contains(v)); });
    }
#endif
}

void GraphState::check_vertex(uint32_t v) const {
    if (v >= adj_.size() || !alive_[v]) {
        throw invalid_vertex_error("vertex " + std::to_string(v) + " is dead or out of range");
    }
}

void GraphState::check_invariants() const {
    for (uint32_t v = 0; v < adj_.size(); ++v) {
        if (!alive_[v]) {
            if (!adj_[v].empty()) {
                throw std::logic_error("dead vertex with edges");
            }
            continue;
        }
        if (adj_[v].contains(v)) {
            throw std::logic_error("self-loop");
        }
        adj_[v].for_each([&](uint32_t w) {
            if (!alive_[w] || !adj_[w].contains(v)) {
                throw std::logic_error("asymmetric adjacency");
            }
        });
    }
}

VertexSet GraphState::component_of(uint32_t v) const {
    check_vertex(v);
    VertexSet seen = empty_set();
    std::vector<uint32_t> stack = {v};
    seen.insert(v);
    while (!stack.empty()) {
        uint32_t u = stack.back();
        stack.pop_back();
        adj_[u].for_each([&](uint32_t w) {
            if (!seen.contains(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        });
    }
    return seen;
}

std::vector<size_t> GraphState::component_sizes() const {
    std::vector<uint8_t> seen(adj_.size(), 0);
    std::vector<size_t> sizes;
    for (uint32_t v = 0; v < adj_.size(); ++v) {
        if (!alive_[v] || seen[v]) {
            continue;
        }
        size_t count = 0;
        std::vector<uint32_t> stack = {v};
        seen[v] = 1;
        while (!stack.empty()) {
            uint32_t u = stack.back();
            stack.pop_back();
            ++count;
            adj_[u].for_each([&](uint32_t w) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            });
        }
        sizes.push_back(count);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::pair<GraphState, std::vector<uint32_t>> GraphState::induced_components(
    const std::vector<uint32_t>& seeds) const {
    VertexSet keep = empty_set();
    for (uint32_t s : seeds) {
        keep = set_union(keep, component_of(s));
    }
    std::vector<uint32_t> mapping = keep.to_vector();
    std::vector<uint32_t> index(adj_.size(), 0);
    for (uint32_t i = 0; i < mapping.size(); ++i) {
        index[mapping[i]] = i;
    }
    GraphState sub(static_cast<uint32_t>(mapping.size()));
    for (uint32_t i = 0; i < mapping.size(); ++i) {
        uint32_t v = mapping[i];
        adj_[v].for_each([&](uint32_t w) {
            if (v < w) {
                sub.add_edge(i, index[w]);
            }
        });
        sub.set_clifford(i, tags_[v]);
    }
    return {std::move(sub), std::move(mapping)};
}

bool GraphState::same_edges(const GraphState& other) const {
    if (adj_.size() != other.adj_.size() || alive_ != other.alive_) {
        return false;
    }
    for (uint32_t v = 0; v < adj_.size(); ++v) {
        if (!(adj_[v] == other.adj_[v])) {
            return false;
        }
    }
    return true;
}

bool GraphState::operator==(const GraphState& other) const {
    return same_edges(other) && tags_ == other.tags_;
}

}  // namespace fusionsim
