#include "fusionsim/io.hpp"

#include <fstream>
#include <sstream>

namespace fusionsim {

nlohmann::json graph_to_json(const GraphState& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    nlohmann::json edges = nlohmann::json::array();
    for (uint32_t u = 0; u < g.vertex_count(); ++u) {
        if (!g.alive(u)) {
            continue;
        }
        g.neighborhood(u).for_each([&](uint32_t v) {
            if (u < v) {
                edges.push_back({u, v});
            }
        });
    }
    j["edges"] = std::move(edges);
    nlohmann::json cliffords = nlohmann::json::object();
    for (uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (g.alive(v) && !g.clifford(v).is_identity()) {
            cliffords[std::to_string(v)] = g.clifford(v).word();
        }
    }
    if (!cliffords.empty()) {
        j["cliffords"] = std::move(cliffords);
    }
    nlohmann::json dead = nlohmann::json::array();
    for (uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (!g.alive(v)) {
            dead.push_back(v);
        }
    }
    if (!dead.empty()) {
        j["dead"] = std::move(dead);
    }
    return j;
}

GraphState graph_from_json(const nlohmann::json& j) {
    try {
        uint32_t n = j.at("n").get<uint32_t>();
        GraphState g(n);
        if (j.contains("edges")) {
            for (const auto& e : j.at("edges")) {
                uint32_t u = e.at(0).get<uint32_t>();
                uint32_t v = e.at(1).get<uint32_t>();
                g.add_edge(u, v);
            }
        }
        if (j.contains("cliffords")) {
            for (const auto& [key, word] : j.at("cliffords").items()) {
                uint32_t v = static_cast<uint32_t>(std::stoul(key));
                g.set_clifford(v, LocalClifford::from_word(word.get<std::string>()));
            }
        }
        if (j.contains("dead")) {
            for (const auto& d : j.at("dead")) {
                g.delete_vertex(d.get<uint32_t>());
            }
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad graph JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("bad graph JSON: ") + e.what());
    }
}

std::string graph_to_json_string(const GraphState& g) { return graph_to_json(g).dump(2) + "\n"; }

GraphState graph_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
    return graph_from_json(j);
}

GraphState load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return graph_from_json_string(buf.str());
}

void save_graph_file(const GraphState& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw parse_error("cannot write " + path);
    }
    out << graph_to_json_string(g);
}

std::string graph_to_dot(const GraphState& g) {
    std::ostringstream out;
    out << "graph state {\n";
    for (uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (!g.alive(v)) {
            continue;
        }
        out << "  q" << v;
        if (!g.clifford(v).is_identity()) {
            out << " [label=\"" << v << ":" << g.clifford(v).word() << "\"]";
        }
        out << ";\n";
    }
    for (uint32_t u = 0; u < g.vertex_count(); ++u) {
        if (!g.alive(u)) {
            continue;
        }
        g.neighborhood(u).for_each([&](uint32_t v) {
            if (u < v) {
                out << "  q" << u << " -- q" << v << ";\n";
            }
        });
    }
    out << "}\n";
    return out.str();
}

}  // namespace fusionsim
