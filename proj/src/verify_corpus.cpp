#include "fusionsim/verify_corpus.hpp"

#include <stdexcept>
#include <tuple>

namespace fusionsim {

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

namespace {

enum class SetWant { Any, Empty, NonEmpty };

struct SubcasePattern {
    bool connected;
    SetWant priv_a = SetWant::Any;
    SetWant priv_b = SetWant::Any;
    SetWant shared = SetWant::Any;
    bool isolated = false;
};

// Pattern of fusion-qubit neighborhoods that makes each rule branch fire.
SubcasePattern subcase_pattern(const std::string& label) {
    auto tail = label.substr(label.find('.') + 1);
    if (tail == "isolated_pair") {
        return {false, SetWant::Empty, SetWant::Empty, SetWant::Empty, true};
    }
    bool conn = tail.rfind("connected", 0) == 0;
    std::string sub = tail.find('.') == std::string::npos ? "" : tail.substr(tail.find('.') + 1);
    SubcasePattern p{conn};
    if (sub == "b_pendant" || sub == "a_only") {
        p = {conn, SetWant::NonEmpty, SetWant::Empty, SetWant::Empty};
    } else if (sub == "a_pendant") {
        p = {conn, SetWant::Empty, SetWant::NonEmpty, SetWant::Empty};
    } else if (sub == "shared_only" || sub == "shared_neighborhood") {
        p = {conn, SetWant::Empty, SetWant::Empty, SetWant::NonEmpty};
    } else if (sub == "both_private") {
        p = {conn, SetWant::NonEmpty, SetWant::NonEmpty, SetWant::Any};
    } else if (sub == "b_private_empty" || sub == "c_star") {
        p = {conn, SetWant::NonEmpty, SetWant::Empty, SetWant::NonEmpty};
    } else if (sub == "a_private_empty") {
        p = {conn, SetWant::Empty, SetWant::NonEmpty, SetWant::NonEmpty};
    } else if (sub == "a_star") {
        p = {conn, SetWant::NonEmpty, SetWant::Any, SetWant::Any};
    } else if (sub == "b_star" && label.rfind("yzzy", 0) == 0) {
        p = {conn, SetWant::Any, SetWant::NonEmpty, SetWant::Any};
    } else if (sub == "b_star") {  // xxzz: N(A)\N(B) empty, N(B)\N(A) not
        p = {conn, SetWant::Empty, SetWant::NonEmpty, SetWant::Any};
    } else {
        // bare detached/connected rule: anything except an isolated pair
        p = {conn, SetWant::NonEmpty, SetWant::Any, SetWant::Any};
    }
    if (label.rfind("yzzy.detached.a_star", 0) == 0) {
        p = {false, SetWant::NonEmpty, SetWant::Empty, SetWant::Any};
    }
    if (label.rfind("xxzz", 0) == 0 && sub == "a_star") {
        p.priv_a = SetWant::NonEmpty;  // b-side free
    }
    return p;
}

}  // namespace

FusionInstance make_subcase_instance(const std::string& label, uint32_t n, Rng& rng) {
    SubcasePattern want = subcase_pattern(label);
    if (n < 6) {
        n = 6;
    }
    for (int attempt = 0; attempt < 100; ++attempt) {
        double density = attempt % 3 == 0 ? 0.2 : (attempt % 3 == 1 ? 0.5 : 0.8);
        GraphState g = random_graph(n, density, rng);
        uint32_t a = rng.below(n);
        uint32_t b = rng.below(n);
        if (a == b) {
            continue;
        }
        if (g.has_edge(a, b) != want.connected) {
            g.toggle_edge(a, b);
        }
        if (want.isolated) {
            std::vector<uint32_t> strip = g.neighborhood(a).to_vector();
            for (uint32_t x : strip) {
                if (x != b) g.toggle_edge(a, x);
            }
            strip = g.neighborhood(b).to_vector();
            for (uint32_t x : strip) {
                if (x != a) g.toggle_edge(b, x);
            }
            if (rng.coin(0.5) != g.has_edge(a, b)) {
                g.toggle_edge(a, b);
            }
            return {std::move(g), a, b};
        }
        bool no_new_shared = want.shared == SetWant::Empty;
        auto clear_set = [&](const VertexSet& s, uint32_t from, uint32_t to) {
            s.for_each([&](uint32_t x) {
                if (!no_new_shared && rng.coin(0.5)) {
                    g.add_edge(to, x);
                } else {
                    g.toggle_edge(from, x);
                }
            });
        };
        auto sets = [&] {
            VertexSet va = g.neighborhood(a).without(b);
            VertexSet vb = g.neighborhood(b).without(a);
            return std::tuple{set_difference(va, vb), set_difference(vb, va),
                              set_intersection(va, vb)};
        };
        auto [pa, pb, sh] = sets();
        if (want.shared == SetWant::Empty) {
            sh.for_each([&](uint32_t x) { g.toggle_edge(rng.coin(0.5) ? a : b, x); });
        }
        std::tie(pa, pb, sh) = sets();
        if (want.priv_a == SetWant::Empty) {
            clear_set(pa, a, b);
        }
        std::tie(pa, pb, sh) = sets();
        if (want.priv_b == SetWant::Empty) {
            clear_set(pb, b, a);
        }
        std::tie(pa, pb, sh) = sets();
        auto grow = [&](uint32_t host, uint32_t other) {
            for (uint32_t x = 0; x < n; ++x) {
                if (x != a && x != b && !g.neighborhood(host).contains(x) &&
                    !g.neighborhood(other).contains(x)) {
                    g.add_edge(host, x);
                    return true;
                }
            }
            return false;
        };
        if (want.priv_a == SetWant::NonEmpty && pa.empty() && !grow(a, b)) {
            continue;
        }
        if (want.priv_b == SetWant::NonEmpty && pb.empty() && !grow(b, a)) {
            continue;
        }
        std::tie(pa, pb, sh) = sets();
        if (want.shared == SetWant::NonEmpty && sh.empty()) {
            bool done = false;
            for (uint32_t x = 0; x < n && !done; ++x) {
                if (x != a && x != b && !g.neighborhood(a).contains(x) &&
                    !g.neighborhood(b).contains(x)) {
                    g.add_edge(a, x);
                    g.add_edge(b, x);
                    done = true;
                }
            }
            if (!done) {
                continue;
            }
        }
        std::tie(pa, pb, sh) = sets();
        auto ok = [](SetWant w, const VertexSet& s) {
            return w == SetWant::Any || (w == SetWant::Empty ? s.empty() : !s.empty());
        };
        if (ok(want.priv_a, pa) && ok(want.priv_b, pb) && ok(want.shared, sh) &&
            !(pa.empty() && pb.empty() && sh.empty())) {
            return {std::move(g), a, b};
        }
    }
    throw std::runtime_error("could not build instance for " + label);
}


}  // namespace fusionsim
