// fusionsim command line: graph-state fusions, measurements, rule-vs-oracle
// verification, fusion-network Monte Carlo, emitter scripts and fusion-sequence
// search.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 parse/usage error,
// 3 invalid vertex, 4 boundary warning escalated under --strict.
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"

#include "fusionsim/emitter.hpp"
#include "fusionsim/fusion_network.hpp"
#include "fusionsim/fusion_rules.hpp"
#include "fusionsim/io.hpp"
#include "fusionsim/measurement_rules.hpp"
#include "fusionsim/tableau.hpp"
#include "fusionsim/verify_corpus.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitVertex = 3;
constexpr int kExitBoundary = 4;

using namespace fusionsim;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw parse_error("cannot write " + out_path);
    }
    out << text;
}

std::string classify_vertex(const GraphState& g, uint32_t v, uint32_t a, uint32_t b) {
    bool in_a = g.neighborhood(a).contains(v);
    bool in_b = g.neighborhood(b).contains(v);
    if (in_a && in_b) {
        return "N(A) & N(B)";
    }
    if (in_a) {
        return "N(A) \\ N(B)";
    }
    if (in_b) {
        return "N(B) \\ N(A)";
    }
    return "outside N(A), N(B)";
}

std::string set_text(const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](uint32_t v) {
        if (!first) {
            out += ",";
        }
        out += std::to_string(v);
        first = false;
    });
    return out + "}";
}

void print_explain(const GraphState& before, const FusionResult& r, uint32_t a, uint32_t b) {
    std::cerr << "subcase: " << r.subcase << "\n";
    std::cerr << "boundary: " << to_string(r.boundary) << (r.boundary_warning ? " (warning)" : "")
              << "\n";
    if (!r.special_neighbors.empty()) {
        std::cerr << "special neighbors:";
        for (uint32_t v : r.special_neighbors) {
            std::cerr << " " << v;
        }
        std::cerr << "\n";
    }
    for (const auto& [v, c] : r.byproducts) {
        std::cerr << "byproduct " << c.word() << " on " << v << "\n";
    }
    // Per-vertex neighborhood rewrites as symmetric differences against the
    // input graph, with each vertex's class relative to the fusion qubits.
    for (uint32_t v = 0; v < r.graph.vertex_count(); ++v) {
        if (!r.graph.alive(v) || v == a || v == b) {
            continue;
        }
        VertexSet old_n = before.neighborhood(v);
        old_n.erase(a);
        old_n.erase(b);
        VertexSet new_n = r.graph.neighborhood(v);
        if (old_n == new_n) {
            continue;
        }
        std::cerr << "  " << v << " [" << classify_vertex(before, v, a, b)
                  << "]: " << set_text(before.neighborhood(v)) << " -> " << set_text(new_n)
                  << "  (delta " << set_text(old_n ^ new_n) << ")\n";
    }
}

int cmd_fuse(const std::string& in, const std::string& out, const std::string& type_s,
             uint32_t a, uint32_t b, const std::string& branch, bool explain, bool strict) {
    GraphState g = load_graph_file(in);
    FusionType type = fusion_type_from_string(type_s);
    FusionResult r = branch == "failure" ? fuse_failure(g, a, b, type)
                                         : fuse_success(g, a, b, type);
    if (explain) {
        print_explain(g, r, a, b);
    }
    if (r.boundary_warning) {
        std::cerr << "warning: boundary case " << to_string(r.boundary)
                  << "; success probability may be 0 or 1 (see fusion_probability)\n";
        if (strict) {
            return kExitBoundary;
        }
    }
    write_output(graph_to_json_string(r.graph), out);
    return kExitOk;
}

int cmd_measure(const std::string& in, const std::string& out, const std::string& basis_s,
                uint32_t qubit) {
    GraphState g = load_graph_file(in);
    Pauli basis;
    if (basis_s == "x") {
        basis = Pauli::X;
    } else if (basis_s == "y") {
        basis = Pauli::Y;
    } else if (basis_s == "z") {
        basis = Pauli::Z;
    } else {
        throw parse_error("basis must be x, y or z");
    }
    MeasurementResult r = measure_pauli_basis(g, qubit, basis);
    write_output(graph_to_json_string(r.graph), out);
    return kExitOk;
}

int cmd_verify(uint32_t n, uint32_t trials, uint64_t seed, const std::string& only_type,
               bool only_connected, const std::string& dump_path) {
    Rng rng(seed);
    std::map<std::string, uint64_t> hits;
    uint64_t mismatches = 0;
    auto check = [&](const GraphState& g, uint32_t a, uint32_t b, FusionType type) {
        for (FusionBranch branch : {FusionBranch::Success, FusionBranch::Failure}) {
            FusionResult r = branch == FusionBranch::Success ? fuse_success(g, a, b, type)
                                                             : fuse_failure(g, a, b, type);
            Rng orng(rng.next());
            OracleFusion oracle =
                oracle_fuse(from_graph(g), a, b, type, branch, std::nullopt, orng);
            if (branch == FusionBranch::Success) {
                ++hits[r.subcase];
            }
            if (!groups_equal_mod_signs(from_graph(r.graph), oracle.tableau)) {
                ++mismatches;
                std::cerr << "MISMATCH " << r.subcase << " a=" << a << " b=" << b << "\n";
                if (!dump_path.empty()) {
                    save_graph_file(g, dump_path);
                    std::cerr << "counterexample written to " << dump_path << "\n";
                }
            }
        }
    };
    for (const std::string& label : fusion_subcase_labels()) {
        FusionType type = fusion_type_from_string(label.substr(0, label.find('.')));
        if (!only_type.empty() && to_string(type) != only_type) {
            continue;
        }
        bool connected = label.find("connected") != std::string::npos ||
                         label.find("isolated") != std::string::npos;
        if (only_connected && !connected) {
            continue;
        }
        for (uint32_t t = 0; t < trials; ++t) {
            uint32_t size = 3 + rng.below(n > 3 ? n - 2 : 1);
            FusionInstance inst = make_subcase_instance(label, size, rng);
            check(inst.g, inst.a, inst.b, type);
        }
    }
    std::cout << "per-subcase pass counts:\n";
    for (const auto& [label, count] : hits) {
        std::cout << "  " << label << ": " << count << "\n";
    }
    std::cout << (mismatches ? "FAIL" : "OK") << ": " << mismatches << " mismatches\n";
    return mismatches == 0 ? kExitOk : kExitMismatch;
}

int cmd_simulate(const std::string& spec_path, std::optional<uint64_t> trials,
                 std::optional<uint64_t> seed, bool exact_boundaries, unsigned threads,
                 const std::string& out, const std::string& aggregate_out) {
    NetworkSpec spec = NetworkSpec::load(spec_path);
    if (trials) {
        spec.trials = *trials;
    }
    if (seed) {
        spec.seed = *seed;
    }
    if (exact_boundaries) {
        spec.exact_boundaries = true;
    }
    MonteCarloResult mc = run_monte_carlo(spec, threads);
    std::string lines;
    for (const std::string& line : mc.trial_lines) {
        lines += line;
        lines += '\n';
    }
    write_output(lines, out);
    if (!aggregate_out.empty()) {
        write_output(mc.aggregate_json().dump(2) + "\n", aggregate_out);
    } else {
        std::cerr << mc.aggregate_json().dump(2) << "\n";
    }
    // headline check for schedules built around a spotlight fusion
    if (!spec.fusions.empty() && spec.trials >= 1) {
        TrialRecord first = run_trial(spec, 0);
        size_t last = first.fusions.size() - 1;
        std::cerr << "fusion " << last + 1
                  << " qubits connected: " << (first.fusions[last].adjacent_before ? "true" : "false")
                  << "\n";
    }
    return kExitOk;
}

int cmd_generate(const std::string& script_path, const std::string& out) {
    GraphState g = build_resource(load_script(script_path));
    write_output(graph_to_json_string(g), out);
    return kExitOk;
}

int cmd_search(const std::string& source_path, const std::string& target_path, int max_fusions,
               const std::string& out) {
    GraphState source = load_graph_file(source_path);
    GraphState target = load_graph_file(target_path);
    auto seq = find_fusion_sequence(source, target, max_fusions);
    if (!seq) {
        std::cerr << "no fusion sequence found\n";
        return kExitMismatch;
    }
    nlohmann::json j = nlohmann::json::array();
    std::set<std::string> types;
    for (const FusionStep& s : *seq) {
        j.push_back({{"a", s.a}, {"b", s.b}, {"type", to_string(s.type)}});
        types.insert(to_string(s.type));
    }
    std::cerr << "found " << seq->size() << " fusions using " << types.size()
              << " distinct types\n";
    write_output(j.dump(2) + "\n", out);
    return kExitOk;
}

int cmd_export(const std::string& in, const std::string& out, bool dot) {
    GraphState g = load_graph_file(in);
    if (dot) {
        write_output(graph_to_dot(g), out);
    } else {
        write_output(graph_to_json_string(g), out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-state fusion rules, tableau oracle and network simulator"};
    app.require_subcommand(1);
    {
        std::string footer = "fusion types: xxzz, xyyx, xzzx, yzzy, xyyz\nsubcase labels:";
        for (const std::string& label : fusion_subcase_labels()) {
            footer += "\n  " + label;
        }
        app.footer(footer);
    }

    std::string in, out, type_s = "xxzz", branch = "success", basis = "z";
    uint32_t qa = 0, qb = 0, qubit = 0;
    bool explain = false, strict = false, dot = false;

    auto* fuse = app.add_subcommand("fuse", "apply one fusion to a graph");
    fuse->add_option("--type", type_s, "xxzz|xyyx|xzzx|yzzy|xyyz")->required();
    fuse->add_option("--a", qa, "first fusion qubit")->required();
    fuse->add_option("--b", qb, "second fusion qubit")->required();
    fuse->add_option("--branch", branch, "success|failure")
        ->check(CLI::IsMember({"success", "failure"}));
    fuse->add_option("--in", in, "input graph JSON")->required();
    fuse->add_option("--out", out, "output graph JSON (stdout when omitted)");
    fuse->add_flag("--explain", explain, "print the rewrite composition to stderr");
    fuse->add_flag("--strict", strict, "exit 4 on boundary warnings");

    auto* measure = app.add_subcommand("measure", "single-qubit Pauli measurement");
    measure->add_option("--basis", basis, "x|y|z")->check(CLI::IsMember({"x", "y", "z"}));
    measure->add_option("--qubit", qubit, "measured qubit")->required();
    measure->add_option("--in", in, "input graph JSON")->required();
    measure->add_option("--out", out, "output graph JSON");

    uint32_t vn = 10, vtrials = 25;
    uint64_t vseed = 1;
    std::string vtype, vdump = "verify_counterexample.json";
    bool vconnected = false, vrandom = false;
    auto* verify = app.add_subcommand("verify", "graph rules vs tableau oracle");
    verify->add_flag("--random", vrandom, "randomized corpus (always on)");
    verify->add_option("--n", vn, "max graph size");
    verify->add_option("--trials", vtrials, "instances per subcase");
    verify->add_option("--seed", vseed, "rng seed");
    verify->add_option("--type", vtype, "restrict to one fusion type");
    verify->add_flag("--connected", vconnected, "restrict to connected subcases");
    verify->add_option("--dump", vdump, "write first counterexample graph here");

    std::string network, aggregate_out;
    std::optional<uint64_t> strials, sseed;
    bool exact_boundaries = false;
    unsigned threads = 0;
    auto* simulate = app.add_subcommand("simulate", "fusion-network Monte Carlo");
    simulate->add_option("--network", network, "network spec JSON")->required();
    simulate->add_option("--trials", strials, "override trial count");
    simulate->add_option("--seed", sseed, "override seed");
    simulate->add_flag("--exact-boundaries", exact_boundaries,
                       "resolve boundary fusions on the tableau");
    simulate->add_option("--threads", threads, "worker threads (0 = auto)");
    simulate->add_option("--out", out, "trial records JSONL (stdout when omitted)");
    simulate->add_option("--aggregate", aggregate_out, "aggregate statistics JSON");

    std::string script;
    auto* generate = app.add_subcommand("generate", "replay an emitter script");
    generate->add_option("--script", script, "emitter ops JSON")->required();
    generate->add_option("--out", out, "output graph JSON");

    std::string source_path, target_path;
    int max_fusions = 3;
    auto* search = app.add_subcommand("search", "find a fusion sequence to a target");
    search->add_option("--source", source_path, "source graph JSON")->required();
    search->add_option("--target", target_path, "target graph JSON")->required();
    search->add_option("--max-fusions", max_fusions, "fusion budget");
    search->add_option("--out", out, "sequence JSON");

    auto* exportc = app.add_subcommand("export", "re-emit a graph");
    exportc->add_option("--in", in, "input graph JSON")->required();
    exportc->add_option("--out", out, "output file");
    exportc->add_flag("--dot", dot, "emit DOT instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (app.got_subcommand(fuse)) {
            return cmd_fuse(in, out, type_s, qa, qb, branch, explain, strict);
        }
        if (app.got_subcommand(measure)) {
            return cmd_measure(in, out, basis, qubit);
        }
        if (app.got_subcommand(verify)) {
            return cmd_verify(vn, vtrials, vseed, vtype, vconnected, vdump);
        }
        if (app.got_subcommand(simulate)) {
            return cmd_simulate(network, strials, sseed, exact_boundaries, threads, out,
                                aggregate_out);
        }
        if (app.got_subcommand(generate)) {
            return cmd_generate(script, out);
        }
        if (app.got_subcommand(search)) {
            return cmd_search(source_path, target_path, max_fusions, out);
        }
        if (app.got_subcommand(exportc)) {
            return cmd_export(in, out, dot);
        }
    } catch (const invalid_vertex_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVertex;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const spec_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}
