// Copyright 2026 The ttload Authors
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

#include "ttload/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ttload/errors.hpp"

namespace ttload {

namespace {

using nlohmann::json;

const json &require(const json &obj, const std::string &key, const std::string &field) {
    if (!obj.is_object() || !obj.contains(key)) throw SchemaError(field, "missing");
    return obj.at(key);
}

template <class T>
T as(const json &j, const std::string &field) {
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw SchemaError(field, "wrong type");
    }
}

std::vector<int> int_list(const json &j, const std::string &field) {
    if (!j.is_array()) throw SchemaError(field, "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) throw SchemaError(field + "[" + std::to_string(i) + "]", "expected an integer");
        out.push_back(j[i].get<int>());
    }
    return out;
}

Eigen::MatrixXcd parse_matrix(const json &j, const std::string &field) {
    if (!j.is_array() || j.empty()) throw SchemaError(field, "expected a non-empty array of rows");
    const auto n = Eigen::Index(j.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json &row = j[std::size_t(r)];
        const std::string rf = field + "[" + std::to_string(r) + "]";
        if (!row.is_array() || Eigen::Index(row.size()) != n) throw SchemaError(rf, "expected a row of length " + std::to_string(n));
        for (Eigen::Index c = 0; c < n; ++c) {
            const json &z = row[std::size_t(c)];
            const std::string cf = rf + "[" + std::to_string(c) + "]";
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw SchemaError(cf, "expected [re, im]");
            }
            m(r, c) = {z[0].get<double>(), z[1].get<double>()};
        }
    }
    return m;
}

json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw SchemaError("<root>", what + " is not valid JSON: " + e.what());
    }
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string &line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    return cells;
}

// Splits on newlines that are not inside quotes.
std::vector<std::string> csv_records(const std::string &text) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : text) {
        if (c == '"') quoted = !quoted;
        if (c == '\n' && !quoted) {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

template <class T>
std::string opt_cell(const std::optional<T> &v) {
    if (!v) return "";
    if constexpr (std::is_floating_point_v<T>) {
        return fmt_double(*v);
    } else {
        return std::to_string(*v);
    }
}

template <class T>
json opt_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

double parse_double(const std::string &s, const std::string &field) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw SchemaError(field, "not a number: '" + s + "'");
    }
}

std::uint64_t parse_u64(const std::string &s, const std::string &field) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw SchemaError(field, "not an unsigned integer: '" + s + "'");
    }
}

std::optional<double> opt_double(const std::string &s, const std::string &field) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, field);
}

}  // namespace

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError(path, "read failed");
    return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

std::string circuit_to_json(const CircuitPlan &plan) {
    validate_plan(plan);
    json doc;
    doc["num_qubits"] = plan.num_qubits;
    doc["normalizer"] = plan.normalizer;
    doc["bit_convention"] = "qubit1_msb";
    json gates = json::array();
    for (const GateOp &g : plan.gates) {
        json m = json::array();
        for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) row.push_back({g.matrix(r, c).real(), g.matrix(r, c).imag()});
            m.push_back(std::move(row));
        }
        json rec = {{"qubits", g.qubits}, {"matrix", std::move(m)}};
        if (!g.controls.empty()) {
            rec["controls"] = g.controls;
            rec["control_values"] = g.control_values;
        }
        rec["origin"] = to_string(g.origin);
        rec["origin_index"] = g.origin_index;
        gates.push_back(std::move(rec));
    }
    doc["gates"] = std::move(gates);
    return doc.dump(1);
}

CircuitPlan circuit_from_json(const std::string &text) {
    json doc = parse_json(text, "circuit");
    if (!doc.is_object()) throw SchemaError("<root>", "expected an object");
    CircuitPlan plan;
    const json &conv = require(doc, "bit_convention", "bit_convention");
    if (!conv.is_string() || conv.get<std::string>() != "qubit1_msb") {
        throw SchemaError("bit_convention", "must be \"qubit1_msb\"");
    }
    const json &nq = require(doc, "num_qubits", "num_qubits");
    if (!nq.is_number_integer() || nq.get<long long>() < 1) throw SchemaError("num_qubits", "expected a positive integer");
    plan.num_qubits = nq.get<int>();
    const json &norm = require(doc, "normalizer", "normalizer");
    if (!norm.is_number()) throw SchemaError("normalizer", "expected a number");
    plan.normalizer = norm.get<double>();
    const json &gates = require(doc, "gates", "gates");
    if (!gates.is_array()) throw SchemaError("gates", "expected an array");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string gf = "gates[" + std::to_string(i) + "]";
        const json &rec = gates[i];
        if (!rec.is_object()) throw SchemaError(gf, "expected an object");
        GateOp g;
        g.qubits = int_list(require(rec, "qubits", gf + ".qubits"), gf + ".qubits");
        g.matrix = parse_matrix(require(rec, "matrix", gf + ".matrix"), gf + ".matrix");
        if (rec.contains("controls")) g.controls = int_list(rec.at("controls"), gf + ".controls");
        if (rec.contains("control_values")) {
            g.control_values = int_list(rec.at("control_values"), gf + ".control_values");
        } else if (!g.controls.empty()) {
            g.control_values.assign(g.controls.size(), 1);
        }
        if (rec.contains("origin")) {
            try {
                g.origin = gate_origin_from_string(as<std::string>(rec.at("origin"), gf + ".origin"));
            } catch (const SchemaError &) {
                throw;
            } catch (const std::exception &e) {
                throw SchemaError(gf + ".origin", e.what());
            }
        }
        if (rec.contains("origin_index")) g.origin_index = as<int>(rec.at("origin_index"), gf + ".origin_index");
        if (g.matrix.rows() != (Eigen::Index{1} << g.qubits.size())) {
            throw SchemaError(gf + ".matrix", "dimension does not match the number of qubits");
        }
        if (g.control_values.size() != g.controls.size()) {
            throw SchemaError(gf + ".control_values", "length differs from controls");
        }
        for (std::size_t k = 0; k + 1 < g.qubits.size(); ++k) {
            if (g.qubits[k] <= g.qubits[k + 1]) throw SchemaError(gf + ".qubits", "must be strictly descending");
        }
        try {
            validate_gate(g, plan.num_qubits);
        } catch (const std::invalid_argument &e) {
            const std::string what = e.what();
            throw SchemaError(what.find("unitar") != std::string::npos ? gf + ".matrix" : gf + ".qubits", what);
        }
        plan.gates.push_back(std::move(g));
    }
    return plan;
}

void export_circuit(const CircuitPlan &plan, const std::string &path) { write_file(path, circuit_to_json(plan)); }

CircuitPlan import_circuit(const std::string &path) { return circuit_from_json(read_file(path)); }

std::string tt_to_json(const TensorTrain &tt) {
    json cores = json::array();
    for (const TTCore &c : tt.cores()) {
        cores.push_back({{"shape", {c.left(), c.mode(), c.right()}}, {"data", c.data()}});
    }
    return json{{"cores", std::move(cores)}}.dump();
}

TensorTrain tt_from_json(const std::string &text) {
    json doc = parse_json(text, "tensor train");
    const json &cores = require(doc, "cores", "cores");
    if (!cores.is_array() || cores.empty()) throw SchemaError("cores", "expected a non-empty array");
    std::vector<TTCore> out;
    for (std::size_t k = 0; k < cores.size(); ++k) {
        const std::string cf = "cores[" + std::to_string(k) + "]";
        auto shape = as<std::vector<std::size_t>>(require(cores[k], "shape", cf + ".shape"), cf + ".shape");
        auto data = as<std::vector<double>>(require(cores[k], "data", cf + ".data"), cf + ".data");
        if (shape.size() != 3) throw SchemaError(cf + ".shape", "expected [left, mode, right]");
        if (data.size() != shape[0] * shape[1] * shape[2]) throw SchemaError(cf + ".data", "length does not match shape");
        out.emplace_back(shape[0], shape[1], shape[2], std::move(data));
    }
    try {
        return TensorTrain(std::move(out));
    } catch (const std::invalid_argument &e) {
        throw SchemaError("cores", e.what());
    }
}

void save_tt(const TensorTrain &tt, const std::string &path) { write_file(path, tt_to_json(tt)); }

TensorTrain load_tt(const std::string &path) { return tt_from_json(read_file(path)); }

ReportFormat report_format_from_string(const std::string &s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw ConfigError("unknown report format '" + s + "'");
}

std::string format_report(const ExperimentReport &report, ReportFormat format) {
    const auto &cols = report_columns();
    if (format == ReportFormat::json) {
        json rows = json::array();
        for (const ReportRow &r : report.rows) {
            json o = json::object();
            o["d_total"] = r.d_total;
            o["qubits_per_dim"] = r.qubits_per_dim;
            o["dims"] = r.dims;
            o["scheme"] = r.scheme;
            o["chi"] = r.chi;
            o["ks"] = opt_json(r.ks);
            o["kl"] = opt_json(r.kl);
            o["fidelity"] = opt_json(r.fidelity);
            o["gate_count"] = r.gate_count;
            o["depth"] = r.depth;
            o["baseline_gate_count"] = opt_json(r.baseline_gate_count);
            o["function_evaluations"] = r.function_evaluations;
            o["wall_time_ms"] = opt_json(r.wall_time_ms);
            o["seed"] = r.seed;
            o["validation_error"] = opt_json(r.validation_error);
            o["error"] = r.error;
            rows.push_back(std::move(o));
        }
        return json{{"columns", cols}, {"rows", std::move(rows)}}.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += "\n";
    for (const ReportRow &r : report.rows) {
        const std::vector<std::string> cells = {std::to_string(r.d_total),
                                                std::to_string(r.qubits_per_dim),
                                                std::to_string(r.dims),
                                                csv_quote(r.scheme),
                                                std::to_string(r.chi),
                                                opt_cell(r.ks),
                                                opt_cell(r.kl),
                                                opt_cell(r.fidelity),
                                                std::to_string(r.gate_count),
                                                std::to_string(r.depth),
                                                opt_cell(r.baseline_gate_count),
                                                std::to_string(r.function_evaluations),
                                                opt_cell(r.wall_time_ms),
                                                std::to_string(r.seed),
                                                opt_cell(r.validation_error),
                                                csv_quote(r.error)};
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
        out += "\n";
    }
    return out;
}

void emit_report(const ExperimentReport &report, ReportFormat format, const std::string &path) {
    write_file(path, format_report(report, format));
}

ExperimentReport parse_report_csv(const std::string &text) {
    const auto records = csv_records(text);
    const auto &cols = report_columns();
    if (records.empty() || csv_split(records[0]) != cols) throw SchemaError("header", "unexpected report columns");
    ExperimentReport rep;
    for (std::size_t n = 1; n < records.size(); ++n) {
        const auto c = csv_split(records[n]);
        const std::string rf = "rows[" + std::to_string(n - 1) + "]";
        if (c.size() != cols.size()) throw SchemaError(rf, "wrong number of cells");
        auto f = [&](std::size_t i) { return rf + "." + cols[i]; };
        ReportRow r;
        r.d_total = int(parse_u64(c[0], f(0)));
        r.qubits_per_dim = int(parse_u64(c[1], f(1)));
        r.dims = parse_u64(c[2], f(2));
        r.scheme = c[3];
        r.chi = parse_u64(c[4], f(4));
        r.ks = opt_double(c[5], f(5));
        r.kl = opt_double(c[6], f(6));
        r.fidelity = opt_double(c[7], f(7));
        r.gate_count = parse_u64(c[8], f(8));
        r.depth = parse_u64(c[9], f(9));
        if (!c[10].empty()) r.baseline_gate_count = parse_u64(c[10], f(10));
        r.function_evaluations = parse_u64(c[11], f(11));
        r.wall_time_ms = opt_double(c[12], f(12));
        r.seed = parse_u64(c[13], f(13));
        r.validation_error = opt_double(c[14], f(14));
        r.error = c[15];
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

}  // namespace ttload
