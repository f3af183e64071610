#include "fusionsim/fusion_network.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <thread>

#include "fusionsim/io.hpp"
#include "fusionsim/tableau.hpp"

namespace fusionsim {

NetworkSpec NetworkSpec::from_json(const nlohmann::json& j, const std::string& base_dir) {
    NetworkSpec spec;
    try {
        for (const auto& [name, value] : j.at("resources").items()) {
            if (value.is_string()) {
                std::filesystem::path p = value.get<std::string>();
                if (p.is_relative()) {
                    p = std::filesystem::path(base_dir) / p;
                }
                spec.resources.emplace(name, load_graph_file(p.string()));
            } else {
                spec.resources.emplace(name, graph_from_json(value));
            }
        }
        for (const auto& inst : j.at("instances")) {
            spec.instances.push_back(
                {inst.at("resource").get<std::string>(), inst.at("offset").get<uint32_t>()});
        }
        for (const auto& f : j.at("fusions")) {
            ScheduledFusion sf;
            sf.a = f.at("a").get<uint32_t>();
            sf.b = f.at("b").get<uint32_t>();
            sf.type = fusion_type_from_string(f.value("type", "xxzz"));
            if (f.contains("force")) {
                std::string branch = f.at("force").get<std::string>();
                if (branch == "success") {
                    sf.forced = FusionBranch::Success;
                } else if (branch == "failure") {
                    sf.forced = FusionBranch::Failure;
                } else {
                    throw spec_error("force must be success or failure");
                }
            }
            spec.fusions.push_back(sf);
        }
        spec.loss = j.value("loss", 0.0);
        spec.trials = j.value("trials", uint64_t{1});
        spec.seed = j.value("seed", uint64_t{0});
        std::string conv = j.value("loss_convention", "partner_z");
        if (conv == "partner_z") {
            spec.loss_convention = LossConvention::PartnerZ;
        } else if (conv == "partner_x") {
            spec.loss_convention = LossConvention::PartnerX;
        } else {
            throw spec_error("loss_convention must be partner_z or partner_x");
        }
        spec.exact_boundaries = j.value("exact_boundaries", false);
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("bad network spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

NetworkSpec NetworkSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw spec_error("cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("bad network spec JSON: ") + e.what());
    }
    return from_json(j, std::filesystem::path(path).parent_path().string());
}

void NetworkSpec::validate() const {
    if (loss < 0.0 || loss > 1.0) {
        throw spec_error("loss must be in [0, 1]");
    }
    std::vector<std::pair<uint32_t, uint32_t>> ranges;
    for (const Placement& p : instances) {
        auto it = resources.find(p.resource);
        if (it == resources.end()) {
            throw spec_error("unknown resource: " + p.resource);
        }
        ranges.emplace_back(p.offset, p.offset + it->second.vertex_count());
    }
    std::sort(ranges.begin(), ranges.end());
    for (size_t i = 1; i < ranges.size(); ++i) {
        if (ranges[i].first < ranges[i - 1].second) {
            throw spec_error("instance offsets overlap");
        }
    }
    uint32_t total = total_qubits();
    std::vector<uint8_t> fused(total, 0);
    for (const ScheduledFusion& f : fusions) {
        if (f.a == f.b) {
            throw spec_error("fusion qubits must be distinct");
        }
        for (uint32_t q : {f.a, f.b}) {
            if (q >= total) {
                throw spec_error("fusion qubit " + std::to_string(q) + " out of range");
            }
            if (fused[q]) {
                throw spec_error("qubit " + std::to_string(q) + " fused more than once");
            }
            fused[q] = 1;
        }
    }
}

uint32_t NetworkSpec::total_qubits() const {
    uint32_t total = 0;
    for (const Placement& p : instances) {
        total = std::max(total, p.offset + resources.at(p.resource).vertex_count());
    }
    return total;
}

GraphState build_state(const NetworkSpec& spec) {
    GraphState g(spec.total_qubits());
    for (const Placement& p : spec.instances) {
        const GraphState& r = spec.resources.at(p.resource);
        for (uint32_t v = 0; v < r.vertex_count(); ++v) {
            if (!r.alive(v)) {
                g.delete_vertex(p.offset + v);
                continue;
            }
            r.neighborhood(v).for_each([&](uint32_t w) {
                if (v < w) {
                    g.add_edge(p.offset + v, p.offset + w);
                }
            });
            g.set_clifford(p.offset + v, r.clifford(v));
        }
    }
    return g;
}

namespace {

// Resolve a boundary fusion's success probability on the tableau of the
// component(s) holding the fusion qubits.
double exact_probability(const GraphState& g, uint32_t a, uint32_t b, FusionType scheduled) {
    auto [sub, mapping] = g.induced_components({a, b});
    uint32_t ca = 0, cb = 0;
    for (uint32_t i = 0; i < mapping.size(); ++i) {
        if (mapping[i] == a) {
            ca = i;
        }
        if (mapping[i] == b) {
            cb = i;
        }
    }
    return fusion_probability(from_graph(sub), ca, cb, scheduled);
}

}  // namespace

TrialRecord run_trial(const NetworkSpec& spec, uint64_t trial_index) {
    Rng rng = Rng::split(spec.seed, trial_index);
    GraphState g = build_state(spec);
    TrialRecord record;
    record.trial = trial_index;
    for (const ScheduledFusion& f : spec.fusions) {
        FusionOutcome out;
        out.a = f.a;
        out.b = f.b;
        out.scheduled = f.type;
        out.adjacent_before = g.has_edge(f.a, f.b);
        bool lost_a = spec.loss > 0.0 && rng.coin(spec.loss);
        bool lost_b = spec.loss > 0.0 && rng.coin(spec.loss);
        if (lost_a || lost_b) {
            // A lost photon is erased via the graph-level Z rule; the fusion
            // cannot proceed, so the surviving partner is measured out too,
            // in Z by default or in X under the partner_x convention.
            Pauli partner_basis =
                spec.loss_convention == LossConvention::PartnerZ ? Pauli::Z : Pauli::X;
            GraphState next = g;
            for (auto [q, lost] : {std::pair{f.a, lost_a}, std::pair{f.b, lost_b}}) {
                MeasurementResult m =
                    measure_pauli_basis(next, q, lost ? Pauli::Z : partner_basis);
                next = std::move(m.graph);
            }
            g = std::move(next);
            out.branch = "erased";
            out.effective = f.type;
            record.fusions.push_back(std::move(out));
            continue;
        }
        ClassifiedFusion eff = rotated_fusion_of(g.clifford(f.a), g.clifford(f.b), f.type);
        out.effective = eff.type;
        out.swapped = eff.swapped;
        BoundaryInfo binfo = detect_boundary(g, f.a, f.b);
        out.boundary = binfo.cls;
        out.p_success = 0.5;
        if (binfo.cls != BoundaryClass::Generic) {
            out.warned = true;
            if (spec.exact_boundaries) {
                out.p_success = exact_probability(g, f.a, f.b, f.type);
            }
        }
        bool success;
        if (f.forced) {
            success = *f.forced == FusionBranch::Success;
        } else if (out.p_success == 0.0) {
            success = false;
        } else if (out.p_success == 1.0) {
            success = true;
        } else {
            success = rng.coin(out.p_success);
        }
        FusionResult fr = [&] {
            if (success) {
                uint32_t qa = eff.swapped ? f.b : f.a;
                uint32_t qb = eff.swapped ? f.a : f.b;
                return fuse_success(g, qa, qb, eff.type);
            }
            const FusionSetup& setup = fusion_setup(f.type);
            Pauli ba = g.clifford(f.a).conj_inv(setup.failure_a).letter;
            Pauli bb = g.clifford(f.b).conj_inv(setup.failure_b).letter;
            return fuse_failure_bases(g, f.a, f.b, ba, bb, to_string(eff.type) + ".failure");
        }();
        out.branch = success ? "success" : "failure";
        out.subcase = fr.subcase;
        g = std::move(fr.graph);
        record.fusions.push_back(std::move(out));
    }
    record.component_sizes = g.component_sizes();
    record.final_graph = std::move(g);
    return record;
}

nlohmann::json TrialRecord::summary_json() const {
    nlohmann::json j;
    j["trial"] = trial;
    nlohmann::json fs = nlohmann::json::array();
    for (const FusionOutcome& f : fusions) {
        nlohmann::json o;
        o["a"] = f.a;
        o["b"] = f.b;
        o["scheduled"] = to_string(f.scheduled);
        o["effective"] = to_string(f.effective);
        if (f.swapped) {
            o["swapped"] = true;
        }
        o["branch"] = f.branch;
        if (!f.subcase.empty()) {
            o["subcase"] = f.subcase;
        }
        if (f.warned) {
            o["boundary"] = to_string(f.boundary);
            o["p_success"] = f.p_success;
        }
        o["adjacent_before"] = f.adjacent_before;
        fs.push_back(std::move(o));
    }
    j["fusions"] = std::move(fs);
    j["components"] = component_sizes;
    return j;
}

nlohmann::json MonteCarloResult::aggregate_json() const {
    nlohmann::json j;
    j["trials"] = trials;
    nlohmann::json fs = nlohmann::json::array();
    for (const FusionStats& s : per_fusion) {
        nlohmann::json o;
        o["success"] = s.success;
        o["failure"] = s.failure;
        o["erased"] = s.erased;
        o["warned"] = s.warned;
        o["adjacent_before"] = s.adjacent_before;
        uint64_t decided = s.success + s.failure;
        if (decided > 0) {
            o["success_rate"] = static_cast<double>(s.success) / static_cast<double>(decided);
        }
        fs.push_back(std::move(o));
    }
    j["per_fusion"] = std::move(fs);
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [size, count] : component_histogram) {
        hist[std::to_string(size)] = count;
    }
    j["component_histogram"] = std::move(hist);
    j["mean_components"] = mean_components;
    return j;
}

MonteCarloResult run_monte_carlo(const NetworkSpec& spec, unsigned threads) {
    if (spec.trials < 1) {
        throw spec_error("trials must be >= 1");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<uint64_t>(threads, spec.trials));

    MonteCarloResult result;
    result.trials = spec.trials;
    result.per_fusion.resize(spec.fusions.size());
    result.trial_lines.resize(spec.trials);

    std::vector<std::vector<FusionStats>> local_stats(
        threads, std::vector<FusionStats>(spec.fusions.size()));
    std::vector<std::map<size_t, uint64_t>> local_hist(threads);
    std::vector<double> local_components(threads, 0.0);

    auto worker = [&](unsigned w) {
        for (uint64_t t = w; t < spec.trials; t += threads) {
            TrialRecord rec = run_trial(spec, t);
            for (size_t i = 0; i < rec.fusions.size(); ++i) {
                FusionStats& s = local_stats[w][i];
                const FusionOutcome& o = rec.fusions[i];
                s.success += o.branch == "success";
                s.failure += o.branch == "failure";
                s.erased += o.branch == "erased";
                s.warned += o.warned;
                s.adjacent_before += o.adjacent_before;
            }
            for (size_t size : rec.component_sizes) {
                ++local_hist[w][size];
            }
            local_components[w] += static_cast<double>(rec.component_sizes.size());
            result.trial_lines[t] = rec.summary_json().dump();
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(worker, w);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    double total_components = 0.0;
    for (unsigned w = 0; w < threads; ++w) {
        for (size_t i = 0; i < spec.fusions.size(); ++i) {
            FusionStats& s = result.per_fusion[i];
            const FusionStats& l = local_stats[w][i];
            s.success += l.success;
            s.failure += l.failure;
            s.erased += l.erased;
            s.warned += l.warned;
            s.adjacent_before += l.adjacent_before;
        }
        for (const auto& [size, count] : local_hist[w]) {
            result.component_histogram[size] += count;
        }
        total_components += local_components[w];
    }
    result.mean_components = total_components / static_cast<double>(spec.trials);
    return result;
}

}  // namespace fusionsim
