// Copyright 2026 The qdotkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdotkit/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qdotkit/bench.h"
#include "qdotkit/circuits.h"
#include "qdotkit/clustering.h"
#include "qdotkit/coherence.h"
#include "qdotkit/error.h"
#include "qdotkit/fixtures.h"
#include "qdotkit/json_io.h"
#include "qdotkit/marginals.h"
#include "qdotkit/parallel.h"
#include "qdotkit/reconstruct.h"
#include "qdotkit/simulator.h"

namespace qdk::cli {

namespace {

// Marks errors caused by the command line itself (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CnModel load_device(const std::string &model, const std::string &fixture) {
    if (model.empty() == fixture.empty()) {
        throw UsageError("give exactly one of --model/--device and --fixture");
    }
    return fixture.empty() ? cn_model_from_json(read_json_file(model)) : planted_model_library(fixture);
}

void write_error(std::ostream &err, int code, const std::string &type, const std::string &message) {
    Json j{{"error", Json{{"code", code}, {"type", type}, {"message", message}}}};
    err << j.dump() << "\n";
}

std::string join(const std::filesystem::path &base, const std::string &p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q.string() : (base / q).string();
}

}  // namespace

void gen_circuits(const GenCircuitsArgs &a, std::ostream &log) {
    CircuitCollection c = generate_collection(parse_protocol(a.protocol), a.qubits, a.circuits, a.seed);
    write_json_file(a.out, circuits_to_json(c));
    if (!a.gate_lines.empty()) {
        std::string text;
        for (const auto &s : c.circuits) {
            text += setting_to_gate_line(s) + "\n";
        }
        write_text_file(a.gate_lines, text);
    }
    log << "wrote " << c.circuits.size() << " circuits to " << a.out << "\n";
}

void simulate(const SimulateArgs &a, std::ostream &log) {
    CircuitCollection c = circuits_from_json(read_json_file(a.circuits));
    ExperimentRecords r;
    if (!a.quantum_device.empty()) {
        if (!a.model.empty() || !a.fixture.empty()) {
            throw UsageError("--quantum-device excludes --model and --fixture");
        }
        r = sample_quantum(quantum_device_from_json(read_json_file(a.quantum_device)), c, a.shots, a.seed);
    } else {
        r = sample_cn(load_device(a.model, a.fixture), c, a.shots, a.seed);
    }
    write_json_file(a.out, records_to_json(r));
    log << "wrote " << r.records.size() << " records to " << a.out << "\n";
}

void estimate(const EstimateArgs &a, std::ostream &log) {
    ExperimentRecords r = records_from_json(read_json_file(a.counts));
    MarginalTable t = a.multishot ? estimate_marginals_multishot(r, a.k) : estimate_marginals(r, a.k);
    write_json_file(a.out, marginals_to_json(t));
    log << "wrote " << t.entries.size() << " marginals to " << a.out << "\n";
}

void correlations(const CorrelationsArgs &a, std::ostream &log) {
    MarginalTable t = marginals_from_json(read_json_file(a.marginals));
    Metric m = parse_metric(a.metric);
    CorrelationMatrix c = parse_kind(a.kind) == CorrelationKind::kClassical ? classical_correlations(t, m, a.p_err)
                                                                            : quantum_correlations(t, m);
    c.threshold = a.threshold;
    write_json_file(a.out, correlations_to_json(c));
    if (!a.dot.empty()) {
        write_text_file(a.dot, correlations_to_dot(c));
    }
    log << "wrote " << a.kind << " " << a.metric << " correlations to " << a.out << "\n";
}

void cluster(const ClusterArgs &a, std::ostream &log) {
    CorrelationMatrix c = correlations_from_json(read_json_file(a.corr));
    ClusteringConfig cfg;
    cfg.c_max = a.c_max;
    cfg.alpha = a.alpha;
    cfg.n_runs = a.runs;
    cfg.seed = a.seed;
    cfg.randomized_acceptance = a.randomized;
    Partition p = cluster_qubits(c, cfg);
    PartitionFile f{p, objective(p, c, cfg), a.alpha, a.c_max, a.seed};
    write_json_file(a.out, partition_to_json(f));
    log << "wrote " << p.clusters.size() << " clusters to " << a.out << "\n";
}

void reconstruct(const ReconstructArgs &a, std::ostream &log) {
    ExperimentRecords r = records_from_json(read_json_file(a.counts));
    Partition p = partition_from_json(read_json_file(a.partition)).partition;
    std::optional<std::vector<QubitSubset>> nb;
    if (a.max_neighbors > 0) {
        if (a.corr.empty()) {
            throw UsageError("--max-neighbors needs --corr");
        }
        nb = suggest_neighborhoods(
            correlations_from_json(read_json_file(a.corr)), p, a.neighbor_threshold, a.max_neighbors);
    }
    CnModel m = reconstruct_cn(r, p, nb, a.min_count);
    write_json_file(a.out, cn_model_to_json(m));
    if (!a.tpn_out.empty()) {
        write_json_file(a.tpn_out, cn_model_to_json(reconstruct_tpn(r, a.min_count)));
    }
    log << "wrote CN model with " << m.clusters().size() << " clusters to " << a.out << "\n";
}

void gen_hamiltonians(const GenHamiltoniansArgs &a, std::ostream &log) {
    HamiltonianOptions opts;
    opts.edge_density = a.density;
    auto hs = random_hamiltonians(a.instances, a.qubits, a.seed, opts);
    write_json_file(a.out, hamiltonians_to_json(hs));
    log << "wrote " << hs.size() << " Hamiltonians to " << a.out << "\n";
}

void benchmark(const BenchmarkArgs &a, std::ostream &log) {
    auto hs = hamiltonians_from_json(read_json_file(a.hamiltonians));
    CnModel device = load_device(a.device, a.fixture);
    BenchModels models{cn_model_from_json(read_json_file(a.cn)), cn_model_from_json(read_json_file(a.tpn))};
    BenchReport rep = run_benchmark(models, hs, device, a.shots, a.seed, parse_mitigation_mode(a.mode));
    write_text_file(a.out, report_to_csv(rep));
    log << "median dE_est " << rep.median_de_est << ", dE_mit_cn " << rep.median_de_mit_cn << ", dE_mit_tpn "
        << rep.median_de_mit_tpn << "; report in " << a.out << "\n";
}

void pipeline(const std::string &config_path, std::ostream &log) {
    Json cfg = read_json_file(config_path);
    std::filesystem::path base = std::filesystem::path(config_path).parent_path();
    auto need = [&](const Json &obj, const char *key) -> const Json & {
        if (!obj.contains(key)) {
            throw std::invalid_argument(std::string("pipeline config lacks '") + key + "'");
        }
        return obj.at(key);
    };
    try {
        const Json &seeds = need(cfg, "seeds");
        std::string protocol = cfg.value("protocol", std::string("ddot"));
        if (parse_protocol(protocol) != Protocol::kDdot) {
            throw std::invalid_argument("the pipeline reconstructs CN models and needs protocol ddot");
        }
        std::filesystem::path out_dir = join(base, cfg.value("out_dir", std::string(".")));
        std::filesystem::create_directories(out_dir);
        Json paths = cfg.value("paths", Json::object());
        auto path = [&](const char *key, const char *def) { return join(out_dir, paths.value(key, std::string(def))); };

        const Json &device = need(cfg, "device");
        std::string model = device.contains("model") ? join(base, device.at("model").get<std::string>()) : "";
        std::string fixture = device.value("fixture", std::string());

        gen_circuits(
            {protocol, need(cfg, "num_qubits").get<std::size_t>(), need(cfg, "circuits").get<std::size_t>(),
             need(seeds, "circuits").get<std::uint64_t>(), path("circuits", "circuits.json"),
             path("gate_lines", "circuits.txt")},
            log);
        simulate(
            {path("circuits", "circuits.json"), model, fixture, "", need(cfg, "shots").get<std::uint64_t>(),
             need(seeds, "simulate").get<std::uint64_t>(), path("counts", "counts.json")},
            log);
        estimate({path("counts", "counts.json"), cfg.value("k", std::size_t{2}), false, path("marginals", "marginals.json")}, log);
        correlations(
            {path("marginals", "marginals.json"), cfg.value("metric", std::string("wc")), "classical",
             cfg.value("p_err", 0.01), cfg.value("threshold", 0.03), path("corr", "corr.json"), path("dot", "corr.dot")},
            log);
        cluster(
            {path("corr", "corr.json"), cfg.value("c_max", std::size_t{2}), cfg.value("alpha", 0.0),
             cfg.value("n_runs", std::size_t{10}), need(seeds, "cluster").get<std::uint64_t>(), false,
             path("partition", "partition.json")},
            log);
        reconstruct(
            {path("counts", "counts.json"), path("partition", "partition.json"), path("corr", "corr.json"),
             cfg.value("neighbor_threshold", 0.05), cfg.value("max_neighbors", std::size_t{0}),
             cfg.value("min_count", std::uint64_t{10}), path("model", "cn_model.json"), path("tpn_model", "tpn_model.json")},
            log);
        gen_hamiltonians(
            {need(cfg, "hamiltonians").get<std::size_t>(), need(cfg, "num_qubits").get<std::size_t>(),
             need(seeds, "hamiltonians").get<std::uint64_t>(), cfg.value("density", 1.0),
             path("hamiltonians", "hamiltonians.json")},
            log);
        benchmark(
            {path("hamiltonians", "hamiltonians.json"), model, fixture, path("model", "cn_model.json"),
             path("tpn_model", "tpn_model.json"), cfg.value("bench_shots", cfg.at("shots").get<std::uint64_t>()),
             need(seeds, "benchmark").get<std::uint64_t>(), cfg.value("mitigation", std::string("marginal")),
             path("report", "report.csv")},
            log);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed pipeline config: ") + e.what());
    } catch (const std::filesystem::filesystem_error &e) {
        throw IoError(e.what());
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qdotkit: readout-noise characterization and mitigation"};
    app.require_subcommand(1);
    std::optional<std::size_t> threads;
    app.add_option("--threads", threads, "worker threads (default: QDOTKIT_THREADS or 1)")->check(CLI::PositiveNumber);

    GenCircuitsArgs gc;
    auto *c_gen = app.add_subcommand("gen-circuits", "generate a random DDOT/QDOT circuit collection");
    c_gen->add_option("--protocol", gc.protocol, "ddot or qdot")->required();
    c_gen->add_option("--qubits", gc.qubits)->required();
    c_gen->add_option("--circuits", gc.circuits)->required();
    c_gen->add_option("--seed", gc.seed)->required();
    c_gen->add_option("--out", gc.out, "circuits.json path")->required();
    c_gen->add_option("--gate-lines", gc.gate_lines, "also write one gate-label line per circuit");

    ComplexityQuery pq;
    std::string plan_protocol;
    bool plan_choi = false;
    bool plan_exact = false;
    auto *c_plan = app.add_subcommand("plan", "number of circuits for a target accuracy");
    c_plan->add_option("--protocol", plan_protocol)->required();
    c_plan->add_option("--k", pq.k)->required();
    c_plan->add_option("--qubits", pq.num_qubits)->required();
    c_plan->add_option("--eps", pq.epsilon)->required();
    c_plan->add_option("--delta", pq.delta)->required();
    c_plan->add_flag("--choi", plan_choi, "bound for Choi-matrix accuracy instead of matrix elements");
    c_plan->add_flag("--exact", plan_exact, "also print the value before rounding up");

    SimulateArgs sa;
    auto *c_sim = app.add_subcommand("simulate", "sample outcome counts for a circuit collection");
    c_sim->add_option("--circuits", sa.circuits)->required();
    c_sim->add_option("--model", sa.model, "cn_model.json of the simulated device");
    c_sim->add_option("--fixture", sa.fixture, "planted model name");
    c_sim->add_option("--quantum-device", sa.quantum_device, "block POVM device JSON");
    c_sim->add_option("--shots", sa.shots)->required();
    c_sim->add_option("--seed", sa.seed)->required();
    c_sim->add_option("--out", sa.out)->required();

    EstimateArgs ea;
    auto *c_est = app.add_subcommand("estimate", "estimate all k-qubit marginal matrix elements");
    c_est->add_option("--counts", ea.counts)->required();
    c_est->add_option("--k", ea.k)->required();
    c_est->add_flag("--multishot", ea.multishot, "average per-circuit frequencies instead of pooling counts");
    c_est->add_option("--out", ea.out)->required();

    CorrelationsArgs ca;
    auto *c_corr = app.add_subcommand("correlations", "pairwise correlation coefficients from 2-qubit marginals");
    c_corr->add_option("--marginals", ca.marginals)->required();
    c_corr->add_option("--metric", ca.metric, "wc or ac")->capture_default_str();
    c_corr->add_option("--kind", ca.kind, "classical or quantum")->capture_default_str();
    c_corr->add_option("--p-err", ca.p_err)->capture_default_str();
    c_corr->add_option("--threshold", ca.threshold)->capture_default_str();
    c_corr->add_option("--out", ca.out)->required();
    c_corr->add_option("--dot", ca.dot, "write above-threshold edges as a DOT graph");

    std::string cb_counts;
    std::string cb_povm;
    std::string cb_subset;
    double cb_p_err = 0.01;
    auto *c_coh = app.add_subcommand("coherence-bound", "coherence strength or its lower bound");
    c_coh->add_option("--counts", cb_counts, "QDOT counts.json");
    c_coh->add_option("--subset", cb_subset, "comma-separated qubits");
    c_coh->add_option("--povm", cb_povm, "POVM JSON for the direct coherence strength");
    c_coh->add_option("--p-err", cb_p_err)->capture_default_str();

    ClusterArgs cl;
    auto *c_cl = app.add_subcommand("cluster", "partition qubits into noise clusters");
    c_cl->add_option("--corr", cl.corr)->required();
    c_cl->add_option("--c-max", cl.c_max)->capture_default_str();
    c_cl->add_option("--alpha", cl.alpha)->capture_default_str();
    c_cl->add_option("--runs", cl.runs)->capture_default_str();
    c_cl->add_option("--seed", cl.seed)->required();
    c_cl->add_flag("--randomized", cl.randomized, "randomized acceptance variant");
    c_cl->add_option("--out", cl.out)->required();

    ReconstructArgs ra;
    auto *c_rec = app.add_subcommand("reconstruct", "build CN and TPN models from DDOT counts");
    c_rec->add_option("--counts", ra.counts)->required();
    c_rec->add_option("--partition", ra.partition)->required();
    c_rec->add_option("--corr", ra.corr, "correlations used to pick neighborhoods");
    c_rec->add_option("--neighbor-threshold", ra.neighbor_threshold)->capture_default_str();
    c_rec->add_option("--max-neighbors", ra.max_neighbors)->capture_default_str();
    c_rec->add_option("--min-count", ra.min_count)->capture_default_str();
    c_rec->add_option("--out", ra.out)->required();
    c_rec->add_option("--tpn-out", ra.tpn_out, "also write the tensor-product model");

    GenHamiltoniansArgs ga;
    auto *c_ham = app.add_subcommand("gen-hamiltonians", "random 2-local Pauli-Z Hamiltonians");
    c_ham->add_option("--instances", ga.instances)->required();
    c_ham->add_option("--qubits", ga.qubits)->required();
    c_ham->add_option("--seed", ga.seed)->required();
    c_ham->add_option("--density", ga.density, "coupling probability per pair")->capture_default_str();
    c_ham->add_option("--out", ga.out)->required();

    BenchmarkArgs ba;
    auto *c_bench = app.add_subcommand("benchmark", "energy prediction and mitigation benchmark");
    c_bench->add_option("--hamiltonians", ba.hamiltonians)->required();
    c_bench->add_option("--device", ba.device, "cn_model.json of the simulated device");
    c_bench->add_option("--fixture", ba.fixture, "planted model name for the simulated device");
    c_bench->add_option("--cn", ba.cn)->required();
    c_bench->add_option("--tpn", ba.tpn)->required();
    c_bench->add_option("--shots", ba.shots)->required();
    c_bench->add_option("--seed", ba.seed)->required();
    c_bench->add_option("--mode", ba.mode, "marginal or cluster-inverse")->capture_default_str();
    c_bench->add_option("--out", ba.out)->required();

    std::string config;
    auto *c_pipe = app.add_subcommand("pipeline", "run every stage from a JSON config");
    c_pipe->add_option("--config", config)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        write_error(err, kExitUsage, "usage", e.what());
        return kExitUsage;
    }

    if (threads) {
        set_default_threads(*threads);
    }
    try {
        if (*c_gen) {
            gen_circuits(gc, out);
        } else if (*c_plan) {
            pq.protocol = parse_protocol(plan_protocol);
            if (plan_choi) {
                out << required_circuits_choi(pq) << "\n";
                if (plan_exact) {
                    out << std::setprecision(12) << required_circuits_choi_exact(pq) << "\n";
                }
            } else {
                out << required_circuits_matrix_elements(pq) << "\n";
                if (plan_exact) {
                    out << std::setprecision(12) << required_circuits_matrix_elements_exact(pq) << "\n";
                }
            }
        } else if (*c_sim) {
            simulate(sa, out);
        } else if (*c_est) {
            estimate(ea, out);
        } else if (*c_corr) {
            correlations(ca, out);
        } else if (*c_coh) {
            Json rep;
            if (!cb_povm.empty()) {
                rep["cs_ac"] = coherence_strength_ac(povm_from_json(read_json_file(cb_povm)));
            }
            if (!cb_counts.empty()) {
                ExperimentRecords r = records_from_json(read_json_file(cb_counts));
                std::vector<std::size_t> qs;
                std::stringstream ss(cb_subset);
                for (std::string tok; std::getline(ss, tok, ',');) {
                    qs.push_back(std::stoul(tok));
                }
                CoherenceReport cr = scan_coherence_bound(r, QubitSubset::from_unsorted(qs, r.num_qubits), cb_p_err);
                rep["subset"] = cr.subset.qubits();
                rep["cs_lower_bound"] = cr.cs_lower_bound;
                rep["bound_error"] = cr.bound_error;
                rep["witness_pair"] = Json::array({cr.witness_p, cr.witness_q});
            }
            if (rep.empty()) {
                throw UsageError("coherence-bound needs --povm or --counts with --subset");
            }
            out << rep.dump(2) << "\n";
        } else if (*c_cl) {
            cluster(cl, out);
        } else if (*c_rec) {
            reconstruct(ra, out);
        } else if (*c_ham) {
            gen_hamiltonians(ga, out);
        } else if (*c_bench) {
            benchmark(ba, out);
        } else if (*c_pipe) {
            pipeline(config, out);
        }
    } catch (const UsageError &e) {
        write_error(err, kExitUsage, "usage", e.what());
        return kExitUsage;
    } catch (const IoError &e) {
        write_error(err, kExitIo, "io", e.what());
        return kExitIo;
    } catch (const CoverageError &e) {
        write_error(err, kExitValidation, "coverage", e.what());
        return kExitValidation;
    } catch (const ConvergenceError &e) {
        write_error(err, kExitValidation, "convergence", e.what());
        return kExitValidation;
    } catch (const std::invalid_argument &e) {
        write_error(err, kExitValidation, "validation", e.what());
        return kExitValidation;
    } catch (const std::exception &e) {
        write_error(err, kExitFailure, "internal", e.what());
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace qdk::cli
