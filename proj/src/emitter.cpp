#include "fusionsim/emitter.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <fstream>
#include <set>
#include <unordered_set>

#include "fusionsim/measurement_rules.hpp"

namespace fusionsim {

uint32_t gen_photon(GraphState& g, uint32_t emitter) {
    g.check_vertex(emitter);
    uint32_t photon = g.add_vertex();
    g.add_edge(emitter, photon);
    return photon;
}

uint32_t push_gen(GraphState& g, uint32_t emitter) {
    uint32_t photon = gen_photon(g, emitter);
    g.local_complement_state(emitter);
    g.local_complement_state(photon);
    return photon;
}

std::vector<EmitterOp> script_from_json(const nlohmann::json& j) {
    std::vector<EmitterOp> ops;
    try {
        for (const auto& item : j) {
            std::string op = item.at("op").get<std::string>();
            if (op == "gen") {
                ops.push_back({EmitterOp::Kind::Gen});
            } else if (op == "pgen") {
                ops.push_back({EmitterOp::Kind::PushGen});
            } else if (op == "lc") {
                ops.push_back({EmitterOp::Kind::LocalComp, item.at("vertex").get<uint32_t>()});
            } else if (op == "measure_z") {
                ops.push_back({EmitterOp::Kind::MeasureZ, item.at("vertex").get<uint32_t>()});
            } else {
                throw std::invalid_argument("unknown emitter op: " + op);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad emitter script: ") + e.what());
    }
    return ops;
}

std::vector<EmitterOp> load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad emitter script JSON: ") + e.what());
    }
    return script_from_json(j);
}

GraphState build_resource(const std::vector<EmitterOp>& script) {
    GraphState g(1);  // the emitter
    for (const EmitterOp& op : script) {
        switch (op.kind) {
            case EmitterOp::Kind::Gen: gen_photon(g, 0); break;
            case EmitterOp::Kind::PushGen: push_gen(g, 0); break;
            case EmitterOp::Kind::LocalComp: g.local_complement_state(op.vertex); break;
            case EmitterOp::Kind::MeasureZ: {
                MeasurementResult m = measure_z(g, op.vertex);
                g = std::move(m.graph);
                break;
            }
        }
    }
    return g;
}

namespace {

constexpr uint32_t kOrbitMaxVertices = 12;
constexpr size_t kOrbitVisitLimit = 400000;

// Compact adjacency rows of the alive subgraph, ids relabeled densely.
std::vector<uint32_t> compact_rows(const GraphState& g) {
    std::vector<uint32_t> verts = g.alive_vertices();
    std::vector<uint32_t> index(g.vertex_count(), 0);
    for (uint32_t i = 0; i < verts.size(); ++i) {
        index[verts[i]] = i;
    }
    std::vector<uint32_t> rows(verts.size(), 0);
    for (uint32_t i = 0; i < verts.size(); ++i) {
        g.neighborhood(verts[i]).for_each([&](uint32_t w) { rows[i] |= 1u << index[w]; });
    }
    return rows;
}

// Exhaustive minimum-adjacency-string search over relabelings, pruned by
// lexicographic prefix comparison against the best string found so far.
struct CanonSearch {
    const std::vector<uint32_t>& rows;
    uint32_t n;
    std::vector<uint8_t> best;
    std::vector<uint8_t> cur;
    std::vector<uint32_t> perm;
    std::vector<uint8_t> used;

    explicit CanonSearch(const std::vector<uint32_t>& r)
        : rows(r), n(static_cast<uint32_t>(r.size())) {
        size_t bits = static_cast<size_t>(n) * (n - 1) / 2;
        best.assign(bits, 0);
        cur.assign(bits, 0);
        perm.assign(n, 0);
        used.assign(n, 0);
    }

    void run() {
        if (n <= 1) {
            return;
        }
        // Seed with the identity labeling, then search for anything smaller.
        size_t k = 0;
        for (uint32_t pos = 1; pos < n; ++pos) {
            for (uint32_t i = 0; i < pos; ++i) {
                best[k++] = (rows[pos] >> i) & 1u;
            }
        }
        dfs(0, 0, false);
    }

    // less == true means cur[0..bit_base) is strictly below best already.
    // Returns true when a descendant replaced best (callers sharing the prefix
    // then continue in the equal state).
    bool dfs(uint32_t pos, size_t bit_base, bool less) {
        if (pos == n) {
            if (less) {
                best = cur;
                return true;
            }
            return false;
        }
        bool updated = false;
        for (uint32_t old = 0; old < n; ++old) {
            if (used[old]) {
                continue;
            }
            bool child_less = less;
            bool worse = false;
            for (uint32_t i = 0; i < pos; ++i) {
                uint8_t bit = (rows[old] >> perm[i]) & 1u;
                cur[bit_base + i] = bit;
                if (!child_less) {
                    if (bit > best[bit_base + i]) {
                        worse = true;
                        break;
                    }
                    if (bit < best[bit_base + i]) {
                        child_less = true;
                    }
                }
            }
            if (worse) {
                continue;
            }
            used[old] = 1;
            perm[pos] = old;
            if (dfs(pos + 1, bit_base + pos, child_less)) {
                updated = true;
                less = false;  // best now shares this node's prefix
            }
            used[old] = 0;
        }
        return updated;
    }
};

std::string rows_canonical_string(const std::vector<uint32_t>& rows) {
    uint32_t n = static_cast<uint32_t>(rows.size());
    if (n > kOrbitMaxVertices) {
        throw unsupported_size_error("canonical form is limited to 12 vertices");
    }
    CanonSearch search(rows);
    search.run();
    std::string out;
    out.push_back(static_cast<char>('0' + n));
    for (uint8_t b : search.best) {
        out.push_back(static_cast<char>('0' + b));
    }
    return out;
}


void local_complement_rows(std::vector<uint32_t>& rows, uint32_t v) {
    uint32_t nbrs = rows[v];
    for (uint32_t u = 0; u < rows.size(); ++u) {
        if ((nbrs >> u) & 1u) {
            rows[u] ^= nbrs & ~(1u << u);
        }
    }
}

// Full LC orbit of the (compacted) graph as canonical strings.
std::set<std::string> lc_orbit(const std::vector<uint32_t>& start,
                               const std::string* stop_at = nullptr) {
    std::set<std::string> seen;
    std::deque<std::vector<uint32_t>> frontier;
    seen.insert(rows_canonical_string(start));
    frontier.push_back(start);
    if (stop_at && seen.count(*stop_at)) {
        return seen;
    }
    while (!frontier.empty()) {
        std::vector<uint32_t> rows = std::move(frontier.front());
        frontier.pop_front();
        for (uint32_t v = 0; v < rows.size(); ++v) {
            if (__builtin_popcount(rows[v]) < 2) {
                continue;  // LC at degree <= 1 never changes the edge set
            }
            std::vector<uint32_t> next = rows;
            local_complement_rows(next, v);
            std::string canon = rows_canonical_string(next);
            if (seen.insert(canon).second) {
                if (stop_at && canon == *stop_at) {
                    return seen;
                }
                if (seen.size() > kOrbitVisitLimit) {
                    throw std::runtime_error("LC orbit enumeration exceeded its bound");
                }
                frontier.push_back(std::move(next));
            }
        }
    }
    return seen;
}

std::vector<size_t> degree_multiset(const std::vector<uint32_t>& rows) {
    std::vector<size_t> degs;
    degs.reserve(rows.size());
    for (uint32_t r : rows) {
        degs.push_back(static_cast<size_t>(__builtin_popcount(r)));
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

size_t component_count(const std::vector<uint32_t>& rows) {
    uint32_t n = static_cast<uint32_t>(rows.size());
    uint32_t seen = 0;
    size_t comps = 0;
    for (uint32_t v = 0; v < n; ++v) {
        if ((seen >> v) & 1u) {
            continue;
        }
        ++comps;
        uint32_t stack = 1u << v;
        while (stack) {
            uint32_t u = static_cast<uint32_t>(__builtin_ctz(stack));
            stack &= ~(1u << u);
            seen |= 1u << u;
            stack |= rows[u] & ~seen;
        }
    }
    return comps;
}

std::string labeled_key(const GraphState& g) {
    std::string key;
    for (uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (!g.alive(v)) {
            continue;
        }
        key.push_back(static_cast<char>(0x40 | v));
        g.neighborhood(v).for_each([&](uint32_t w) {
            if (w > v) {
                key.push_back(static_cast<char>(w));
            }
        });
    }
    return key;
}

}  // namespace

std::string iso_canonical_string(const GraphState& g) {
    return rows_canonical_string(compact_rows(g));
}

bool lc_equivalent(const GraphState& g1, const GraphState& g2) {
    if (g1.alive_count() != g2.alive_count()) {
        return false;
    }
    if (g1.alive_count() > kOrbitMaxVertices) {
        throw unsupported_size_error("lc_equivalent is limited to 12 vertices");
    }
    std::vector<uint32_t> r1 = compact_rows(g1);
    std::vector<uint32_t> r2 = compact_rows(g2);
    std::string target = rows_canonical_string(r2);
    std::set<std::string> orbit = lc_orbit(r1, &target);
    return orbit.count(target) > 0;
}

std::optional<std::vector<FusionStep>> find_fusion_sequence(const GraphState& source,
                                                            const GraphState& target,
                                                            int max_fusions) {
    if (target.alive_count() > kOrbitMaxVertices) {
        throw unsupported_size_error("find_fusion_sequence targets are limited to 12 vertices");
    }
    uint32_t n_src = source.alive_count();
    uint32_t n_tgt = target.alive_count();
    if (n_src < n_tgt || (n_src - n_tgt) % 2 != 0) {
        return std::nullopt;
    }
    int depth = static_cast<int>((n_src - n_tgt) / 2);
    if (depth > max_fusions) {
        return std::nullopt;
    }
    if (depth == 0) {
        if (lc_equivalent(source, target)) {
            return std::vector<FusionStep>{};
        }
        return std::nullopt;
    }

    // Precompute the target's full orbit once; leaves are filtered by cheap
    // LC-invariants (component count, then orbit degree multisets) before the
    // canonical-form membership test.
    std::vector<uint32_t> tgt_rows = compact_rows(target);
    size_t tgt_components = component_count(tgt_rows);
    std::set<std::string> orbit;
    std::set<std::vector<size_t>> orbit_degrees;
    {
        std::deque<std::vector<uint32_t>> frontier;
        orbit.insert(rows_canonical_string(tgt_rows));
        orbit_degrees.insert(degree_multiset(tgt_rows));
        frontier.push_back(tgt_rows);
        while (!frontier.empty()) {
            std::vector<uint32_t> rows = std::move(frontier.front());
            frontier.pop_front();
            for (uint32_t v = 0; v < rows.size(); ++v) {
                if (__builtin_popcount(rows[v]) < 2) {
                    continue;
                }
                std::vector<uint32_t> next = rows;
                local_complement_rows(next, v);
                std::string canon = rows_canonical_string(next);
                if (orbit.insert(canon).second) {
                    if (orbit.size() > kOrbitVisitLimit) {
                        throw std::runtime_error("LC orbit enumeration exceeded its bound");
                    }
                    orbit_degrees.insert(degree_multiset(next));
                    frontier.push_back(std::move(next));
                }
            }
        }
    }

    auto leaf_matches = [&](const GraphState& g) {
        std::vector<uint32_t> rows = compact_rows(g);
        if (component_count(rows) != tgt_components) {
            return false;
        }
        if (!orbit_degrees.count(degree_multiset(rows))) {
            return false;
        }
        return orbit.count(rows_canonical_string(rows)) > 0;
    };

    // Staged search: all single-type sequences first, then two-type mixes,
    // then everything. The first hit therefore uses as few distinct fusion
    // types as possible, and the restricted early stages are much cheaper.
    static const FusionType kOrder[5] = {FusionType::XZZX, FusionType::XXZZ, FusionType::XYYX,
                                         FusionType::YZZY, FusionType::XYYZ};
    std::vector<std::vector<FusionType>> stages;
    for (FusionType t : kOrder) {
        stages.push_back({t});
    }
    for (size_t i = 0; i < 5; ++i) {
        for (size_t j = i + 1; j < 5; ++j) {
            stages.push_back({kOrder[i], kOrder[j]});
        }
    }
    stages.push_back({kOrder[0], kOrder[1], kOrder[2], kOrder[3], kOrder[4]});

    std::vector<FusionStep> steps;
    for (const std::vector<FusionType>& allowed : stages) {
        std::vector<std::unordered_set<std::string>> visited(static_cast<size_t>(depth) + 1);
        std::function<bool(const GraphState&, int)> dfs = [&](const GraphState& g,
                                                              int d) -> bool {
            if (d == depth) {
                return leaf_matches(g);
            }
            std::vector<uint32_t> alive = g.alive_vertices();
            for (size_t i = 0; i < alive.size(); ++i) {
                for (size_t j = i + 1; j < alive.size(); ++j) {
                    for (FusionType type : allowed) {
                        int orientations = type == FusionType::XYYZ ? 2 : 1;
                        for (int o = 0; o < orientations; ++o) {
                            uint32_t a = o == 0 ? alive[i] : alive[j];
                            uint32_t b = o == 0 ? alive[j] : alive[i];
                            FusionResult r = fuse_success(g, a, b, type);
                            if (!visited[static_cast<size_t>(d) + 1]
                                     .insert(labeled_key(r.graph))
                                     .second) {
                                continue;
                            }
                            steps.push_back({a, b, type});
                            if (dfs(r.graph, d + 1)) {
                                return true;
                            }
                            steps.pop_back();
                        }
                    }
                }
            }
            return false;
        };
        if (dfs(source, 0)) {
            return steps;
        }
    }
    return std::nullopt;
}

GraphState cube_graph() {
    GraphState g(8);
    for (uint32_t v = 0; v < 8; ++v) {
        for (uint32_t bit = 0; bit < 3; ++bit) {
            uint32_t w = v ^ (1u << bit);
            if (v < w) {
                g.add_edge(v, w);
            }
        }
    }
    return g;
}

}  // namespace fusionsim
