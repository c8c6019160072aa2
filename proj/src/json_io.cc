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

#include "qdotkit/json_io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qdotkit/error.h"

namespace qdk {

namespace {

// Wraps nlohmann type/key errors into invalid_argument with the file kind.
template <typename F>
auto decode(const char *what, F &&f) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed ") + what + ": " + e.what());
    }
}

Json matrix_rows(const RMatrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back(m(r, c));
        }
    }
    return out;
}

RMatrix read_matrix(const Json &j) {
    std::size_t rows = j.at("dim_out").get<std::size_t>();
    std::size_t cols = j.at("dim_in").get<std::size_t>();
    const Json &e = j.at("entries");
    if (!e.is_array() || e.size() != rows * cols) {
        throw std::invalid_argument("matrix entries do not match dim_out * dim_in");
    }
    RMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = e[r * cols + c].get<double>();
        }
    }
    return m;
}

Json raw_matrix_to_json(const RMatrix &m) {
    return Json{{"dim_out", m.rows()}, {"dim_in", m.cols()}, {"entries", matrix_rows(m)}};
}

std::vector<std::size_t> qubit_list(const Json &j) { return j.get<std::vector<std::size_t>>(); }

// Input-setting label of column y: base-b digits, first qubit most significant.
std::string setting_label(std::size_t y, std::size_t k, std::size_t base) {
    std::string s(k, '0');
    for (std::size_t i = k; i-- > 0;) {
        s[i] = static_cast<char>('0' + y % base);
        y /= base;
    }
    return s;
}

std::size_t parse_setting_label(const std::string &s, std::size_t k, std::size_t base) {
    if (s.size() != k) {
        throw std::invalid_argument("setting label '" + s + "' has the wrong length");
    }
    std::size_t y = 0;
    for (char ch : s) {
        std::size_t d = static_cast<std::size_t>(ch - '0');
        if (ch < '0' || d >= base) {
            throw std::invalid_argument("setting label '" + s + "' has an invalid symbol");
        }
        y = y * base + d;
    }
    return y;
}

}  // namespace

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw IoError("cannot parse '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string &path, const Json &j) { write_text_file(path, j.dump(2) + "\n"); }

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

Json povm_to_json(const Povm &m) {
    Json effects = Json::array();
    for (const auto &e : m.effects()) {
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < e.rows(); ++r) {
            for (Eigen::Index c = 0; c < e.cols(); ++c) {
                rows.push_back(Json::array({e(r, c).real(), e(r, c).imag()}));
            }
        }
        effects.push_back(rows);
    }
    return Json{{"dim", m.dim()}, {"effects", effects}};
}

Povm povm_from_json(const Json &j) {
    return decode("POVM", [&] {
        std::size_t d = j.at("dim").get<std::size_t>();
        std::vector<CMatrix> effects;
        for (const auto &ej : j.at("effects")) {
            if (ej.size() != d * d) {
                throw std::invalid_argument("POVM effect does not hold dim^2 entries");
            }
            CMatrix e(d, d);
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    const Json &z = ej[r * d + c];
                    e(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
                }
            }
            effects.push_back(e);
        }
        return Povm(std::move(effects));
    });
}

Json stochastic_to_json(const StochasticMatrix &m) { return raw_matrix_to_json(m.entries()); }

StochasticMatrix stochastic_from_json(const Json &j) {
    return decode("stochastic matrix", [&] { return StochasticMatrix(read_matrix(j)); });
}

Json circuits_to_json(const CircuitCollection &c) {
    return Json{
        {"protocol", protocol_name(c.protocol)},
        {"num_qubits", c.num_qubits},
        {"seed", c.seed},
        {"circuits", c.circuits}};
}

CircuitCollection circuits_from_json(const Json &j) {
    return decode("circuits", [&] {
        CircuitCollection c;
        c.protocol = parse_protocol(j.at("protocol").get<std::string>());
        c.num_qubits = j.at("num_qubits").get<std::size_t>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.circuits = j.at("circuits").get<std::vector<std::string>>();
        c.validate();
        return c;
    });
}

Json records_to_json(const ExperimentRecords &r) {
    Json recs = Json::array();
    for (const auto &rec : r.records) {
        Json counts = Json::object();
        for (const auto &[bits, n] : rec.counts) {
            counts[bits] = n;
        }
        recs.push_back(Json{{"setting", rec.setting}, {"shots", rec.shots}, {"counts", counts}});
    }
    return Json{{"protocol", protocol_name(r.protocol)}, {"num_qubits", r.num_qubits}, {"records", recs}};
}

ExperimentRecords records_from_json(const Json &j) {
    return decode("counts", [&] {
        ExperimentRecords r;
        r.protocol = parse_protocol(j.at("protocol").get<std::string>());
        r.num_qubits = j.at("num_qubits").get<std::size_t>();
        for (const auto &rj : j.at("records")) {
            Record rec;
            rec.setting = rj.at("setting").get<std::string>();
            rec.shots = rj.at("shots").get<std::uint64_t>();
            for (const auto &[bits, n] : rj.at("counts").items()) {
                rec.counts[bits] = n.get<std::uint64_t>();
            }
            r.records.push_back(std::move(rec));
        }
        r.validate();
        return r;
    });
}

Json marginals_to_json(const MarginalTable &t) {
    std::size_t base = alphabet_size(t.protocol);
    Json subsets = Json::array();
    for (const auto &e : t.entries) {
        Json h = Json::object();
        Json shots = Json::object();
        for (std::size_t y = 0; y < e.occurrences.size(); ++y) {
            std::string label = setting_label(y, e.subset.size(), base);
            h[label] = e.occurrences[y];
            shots[label] = e.shots[y];
        }
        subsets.push_back(
            Json{{"qubits", e.subset.qubits()}, {"lambda", raw_matrix_to_json(e.elements)}, {"h", h}, {"shots", shots}});
    }
    return Json{
        {"protocol", protocol_name(t.protocol)}, {"k", t.k}, {"num_qubits", t.num_qubits}, {"subsets", subsets}};
}

MarginalTable marginals_from_json(const Json &j) {
    return decode("marginals", [&] {
        MarginalTable t;
        t.protocol = parse_protocol(j.at("protocol").get<std::string>());
        t.k = j.at("k").get<std::size_t>();
        t.num_qubits = j.at("num_qubits").get<std::size_t>();
        std::size_t base = alphabet_size(t.protocol);
        for (const auto &sj : j.at("subsets")) {
            MarginalEstimate e;
            e.subset = QubitSubset::from_unsorted(qubit_list(sj.at("qubits")), t.num_qubits);
            if (e.subset.size() != t.k) {
                throw std::invalid_argument("marginal subset " + e.subset.to_string() + " does not hold k qubits");
            }
            e.elements = read_matrix(sj.at("lambda"));
            std::size_t inputs = 1;
            for (std::size_t i = 0; i < t.k; ++i) {
                inputs *= base;
            }
            if (static_cast<std::size_t>(e.elements.rows()) != pow2(t.k) ||
                static_cast<std::size_t>(e.elements.cols()) != inputs) {
                throw std::invalid_argument("marginal on " + e.subset.to_string() + " has the wrong shape");
            }
            e.occurrences.assign(inputs, 0);
            e.shots.assign(inputs, 0);
            for (const auto &[label, n] : sj.at("h").items()) {
                e.occurrences.at(parse_setting_label(label, t.k, base)) = n.get<std::uint64_t>();
            }
            for (const auto &[label, n] : sj.at("shots").items()) {
                e.shots.at(parse_setting_label(label, t.k, base)) = n.get<std::uint64_t>();
            }
            t.entries.push_back(std::move(e));
        }
        return t;
    });
}

Json correlations_to_json(const CorrelationMatrix &c) {
    return Json{
        {"num_qubits", c.num_qubits},
        {"metric", metric_name(c.metric)},
        {"kind", kind_name(c.kind)},
        {"values", matrix_rows(c.values)},
        {"threshold", c.threshold},
        {"noise_floor", c.noise_floor}};
}

CorrelationMatrix correlations_from_json(const Json &j) {
    return decode("correlations", [&] {
        CorrelationMatrix c;
        c.metric = parse_metric(j.at("metric").get<std::string>());
        c.kind = parse_kind(j.at("kind").get<std::string>());
        const Json &v = j.at("values");
        std::size_t n = j.contains("num_qubits") ? j.at("num_qubits").get<std::size_t>()
                                                 : static_cast<std::size_t>(std::llround(std::sqrt(v.size())));
        if (v.size() != n * n) {
            throw std::invalid_argument("correlation values are not N x N");
        }
        c.num_qubits = n;
        c.values.resize(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t col = 0; col < n; ++col) {
                c.values(r, col) = v[r * n + col].get<double>();
            }
        }
        c.threshold = j.at("threshold").get<double>();
        c.noise_floor = j.value("noise_floor", 0.0);
        return c;
    });
}

Json partition_to_json(const PartitionFile &p) {
    Json clusters = Json::array();
    for (const auto &c : p.partition.clusters) {
        clusters.push_back(c.qubits());
    }
    Json obj = std::isfinite(p.objective) ? Json(p.objective) : Json(nullptr);
    return Json{
        {"num_qubits", p.partition.num_qubits},
        {"clusters", clusters},
        {"objective", obj},
        {"alpha", p.alpha},
        {"c_max", p.c_max},
        {"seed", p.seed}};
}

PartitionFile partition_from_json(const Json &j) {
    return decode("partition", [&] {
        PartitionFile p;
        p.partition.num_qubits = j.at("num_qubits").get<std::size_t>();
        for (const auto &c : j.at("clusters")) {
            p.partition.clusters.push_back(QubitSubset::from_unsorted(qubit_list(c), p.partition.num_qubits));
        }
        p.partition.canonicalize();
        const Json &o = j.at("objective");
        p.objective = o.is_null() ? -std::numeric_limits<double>::infinity() : o.get<double>();
        p.alpha = j.value("alpha", 0.0);
        p.c_max = j.value("c_max", std::size_t{0});
        p.seed = j.value("seed", std::uint64_t{0});
        return p;
    });
}

Json cn_model_to_json(const CnModel &m) {
    Json clusters = Json::array();
    for (const auto &c : m.clusters()) {
        Json noise = Json::object();
        for (std::size_t y = 0; y < c.noise.size(); ++y) {
            noise[index_to_bits(y, c.neighborhood.size())] = stochastic_to_json(c.noise[y]);
        }
        clusters.push_back(Json{{"qubits", c.qubits.qubits()}, {"neighborhood", c.neighborhood.qubits()}, {"noise", noise}});
    }
    return Json{{"num_qubits", m.num_qubits()}, {"clusters", clusters}};
}

CnModel cn_model_from_json(const Json &j) {
    return decode("CN model", [&] {
        std::size_t n = j.at("num_qubits").get<std::size_t>();
        std::vector<Cluster> clusters;
        for (const auto &cj : j.at("clusters")) {
            Cluster c;
            c.qubits = QubitSubset::from_unsorted(qubit_list(cj.at("qubits")), n);
            c.neighborhood = QubitSubset::from_unsorted(qubit_list(cj.value("neighborhood", Json::array())), n);
            std::size_t dn = pow2(c.neighborhood.size());
            c.noise.resize(dn);
            std::vector<bool> seen(dn, false);
            for (const auto &[label, mj] : cj.at("noise").items()) {
                if (label.size() != c.neighborhood.size() || label.find_first_not_of("01") != std::string::npos) {
                    throw std::invalid_argument("noise key '" + label + "' is not a neighborhood bitstring");
                }
                std::size_t y = bits_to_index(label);
                c.noise[y] = stochastic_from_json(mj);
                seen[y] = true;
            }
            for (std::size_t y = 0; y < dn; ++y) {
                if (!seen[y]) {
                    throw std::invalid_argument(
                        "cluster " + c.qubits.to_string() + " lacks noise for y_N=" + index_to_bits(y, c.neighborhood.size()));
                }
            }
            clusters.push_back(std::move(c));
        }
        return CnModel(n, std::move(clusters));
    });
}

Json quantum_device_to_json(const QuantumDeviceSpec &d) {
    Json blocks = Json::array();
    for (const auto &b : d.blocks) {
        blocks.push_back(Json{{"qubits", b.qubits.qubits()}, {"povm", povm_to_json(b.povm)}});
    }
    return Json{{"num_qubits", d.num_qubits}, {"blocks", blocks}};
}

QuantumDeviceSpec quantum_device_from_json(const Json &j) {
    return decode("quantum device", [&] {
        QuantumDeviceSpec d;
        d.num_qubits = j.at("num_qubits").get<std::size_t>();
        for (const auto &bj : j.at("blocks")) {
            d.blocks.push_back({QubitSubset::from_unsorted(qubit_list(bj.at("qubits")), d.num_qubits),
                                povm_from_json(bj.at("povm"))});
        }
        d.validate();
        return d;
    });
}

Json hamiltonians_to_json(const std::vector<Hamiltonian> &hs) {
    if (hs.empty()) {
        throw std::invalid_argument("no Hamiltonians to write");
    }
    Json inst = Json::array();
    for (const auto &h : hs) {
        Json fields = Json::object();
        for (const auto &[q, v] : h.h) {
            fields[std::to_string(q)] = v;
        }
        Json couplings = Json::object();
        for (const auto &[p, v] : h.j) {
            couplings[std::to_string(p.first) + "," + std::to_string(p.second)] = v;
        }
        inst.push_back(Json{{"h", fields}, {"J", couplings}});
    }
    return Json{{"num_qubits", hs.front().num_qubits}, {"instances", inst}};
}

std::vector<Hamiltonian> hamiltonians_from_json(const Json &j) {
    return decode("hamiltonians", [&] {
        std::size_t n = j.at("num_qubits").get<std::size_t>();
        std::vector<Hamiltonian> out;
        for (const auto &ij : j.at("instances")) {
            Hamiltonian h;
            h.num_qubits = n;
            for (const auto &[key, v] : ij.at("h").items()) {
                h.h[std::stoul(key)] = v.get<double>();
            }
            for (const auto &[key, v] : ij.at("J").items()) {
                auto comma = key.find(',');
                if (comma == std::string::npos) {
                    throw std::invalid_argument("coupling key '" + key + "' is not 'i,j'");
                }
                h.j[{std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1))}] = v.get<double>();
            }
            h.validate();
            out.push_back(std::move(h));
        }
        return out;
    });
}

}  // namespace qdk
