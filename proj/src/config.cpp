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

#include "ttload/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ttload/errors.hpp"

namespace ttload {

namespace {

using nlohmann::json;

// Reads typed fields out of one JSON object and remembers which keys were
// consumed so leftovers can be reported as unknown.
class Section {
   public:
    Section(const json &obj, std::string path, std::vector<std::string> &unknown)
        : obj_(obj), path_(std::move(path)), unknown_(unknown) {
        if (!obj_.is_object()) throw SchemaError(path_.empty() ? "<root>" : path_, "expected an object");
    }
    Section(const Section &) = delete;
    ~Section() {
        for (const auto &[key, value] : obj_.items()) {
            if (!used_.count(key)) unknown_.push_back(field(key));
        }
    }

    bool has(const std::string &key) {
        used_.insert(key);
        return obj_.contains(key);
    }

    template <class T>
    void read(const std::string &key, T &out) {
        if (!has(key)) return;
        try {
            out = obj_.at(key).get<T>();
        } catch (const json::exception &) {
            throw SchemaError(field(key), "wrong type");
        }
    }

    Section sub(const std::string &key) {
        used_.insert(key);
        static const json empty = json::object();
        return Section(obj_.contains(key) ? obj_.at(key) : empty, field(key), unknown_);
    }

    std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

   private:
    const json &obj_;
    std::string path_;
    std::vector<std::string> &unknown_;
    std::set<std::string> used_;
};

template <class T>
void read_unsigned(Section &s, const std::string &key, T &out) {
    long long v = static_cast<long long>(out);
    s.read(key, v);
    if (v < 0) throw SchemaError(s.field(key), "must be nonnegative");
    out = static_cast<T>(v);
}

}  // namespace

std::vector<int> ExperimentConfig::sweep_points() const {
    return sweep.qubits.empty() ? std::vector<int>{grid.qubits_per_dim} : sweep.qubits;
}

void ExperimentConfig::validate() const {
    if (distribution.kind == "lognormal_1d") {
        if (distribution.dims != 1) throw ConfigError("distribution: lognormal_1d requires dims = 1");
    } else if (distribution.kind != "lognormal_nd") {
        throw ConfigError("distribution: unknown kind '" + distribution.kind + "'");
    }
    if (!(distribution.sigma > 0.0)) throw ConfigError("distribution: sigma must be positive");
    if (!(distribution.correlation > -1.0 && distribution.correlation < 1.0)) {
        throw ConfigError("distribution: correlation must lie in (-1, 1)");
    }
    if (ordering.scheme == OrderingScheme::mirrored && distribution.dims != 2) {
        throw ConfigError("ordering: mirrored scheme requires exactly 2 dimensions, got " +
                          std::to_string(distribution.dims));
    }
    if (grid.bounds && grid.bounds->size() != distribution.dims) {
        throw ConfigError("grid: bounds must list one [lower, upper] pair per dimension");
    }
    for (int q : sweep_points()) {
        if (q < 1 || q * int(distribution.dims) > 62) throw ConfigError("sweep: qubits per dimension out of range");
    }
    if (compile.chi_cap < 1) throw ConfigError("compile: chi_cap must be >= 1");
    if (compile.chi_cap < cross.max_rank) throw ConfigError("compile: chi_cap must be >= cross.max_rank");
    if (metrics.kl_log != "natural") throw ConfigError("metrics: kl_log must be \"natural\"");
    if (!(metrics.kl_floor > 0.0)) throw ConfigError("metrics: kl_floor must be positive");
    if (metrics.dense_limit > kMaxEnumerableQubits) {
        throw ConfigError("metrics: dense_limit may not exceed " + std::to_string(kMaxEnumerableQubits));
    }
    if (simulate.shots < 1) throw ConfigError("simulate: shots must be >= 1");
    if (sweep.repeats < 1) throw ConfigError("sweep: repeats must be >= 1");
    if (output.format != "csv" && output.format != "json") throw ConfigError("output: format must be csv or json");
    try {
        cross.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    (void)distribution_spec();
}

DistributionSpec ExperimentConfig::distribution_spec() const {
    if (distribution.kind == "lognormal_1d") {
        return DistributionSpec::lognormal_1d(distribution.mu, distribution.sigma);
    }
    const auto n = Eigen::Index(distribution.dims);
    if (n < 1) throw ConfigError("distribution: dims must be >= 1");
    Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, distribution.mu);
    if (distribution.mean) {
        if (Eigen::Index(distribution.mean->size()) != n) throw ConfigError("distribution: mean has wrong length");
        for (Eigen::Index i = 0; i < n; ++i) mu[i] = (*distribution.mean)[std::size_t(i)];
    }
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(n, n, distribution.correlation);
    cov.diagonal().setOnes();
    cov *= distribution.sigma * distribution.sigma;
    if (distribution.covariance) {
        const auto &c = *distribution.covariance;
        if (Eigen::Index(c.size()) != n) throw ConfigError("distribution: covariance has wrong shape");
        for (Eigen::Index i = 0; i < n; ++i) {
            if (Eigen::Index(c[std::size_t(i)].size()) != n) throw ConfigError("distribution: covariance has wrong shape");
            for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = c[std::size_t(i)][std::size_t(j)];
        }
    }
    return DistributionSpec::lognormal_nd(std::move(mu), std::move(cov));
}

GridSpec ExperimentConfig::grid_spec(int qubits_per_dim) const {
    if (grid.bounds) {
        std::vector<DimensionGrid> dims;
        for (const auto &[lo, hi] : *grid.bounds) dims.push_back({lo, hi, qubits_per_dim});
        return GridSpec(std::move(dims));
    }
    return GridSpec(distribution_spec().quantile_grid(qubits_per_dim, grid.quantile_lo, grid.quantile_hi));
}

OrderingMap ExperimentConfig::ordering_map(int qubits_per_dim) const {
    return ordering_bitmap(ordering.scheme, int(distribution.dims), qubits_per_dim, ordering.reversed_variable);
}

ExperimentConfig parse_config(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    std::vector<std::string> unknown;
    {
        Section root(doc, "", unknown);
        read_unsigned(root, "seed", cfg.seed);
        {
            Section s = root.sub("distribution");
            auto &d = cfg.distribution;
            s.read("kind", d.kind);
            read_unsigned(s, "dims", d.dims);
            s.read("mu", d.mu);
            s.read("sigma", d.sigma);
            s.read("correlation", d.correlation);
            if (s.has("mean")) {
                std::vector<double> m;
                s.read("mean", m);
                d.mean = std::move(m);
            }
            if (s.has("covariance")) {
                std::vector<std::vector<double>> c;
                s.read("covariance", c);
                d.covariance = std::move(c);
            }
        }
        {
            Section s = root.sub("grid");
            s.read("qubits_per_dim", cfg.grid.qubits_per_dim);
            if (s.has("bounds")) {
                std::vector<std::pair<double, double>> b;
                s.read("bounds", b);
                cfg.grid.bounds = std::move(b);
            }
            s.read("quantile_lo", cfg.grid.quantile_lo);
            s.read("quantile_hi", cfg.grid.quantile_hi);
        }
        {
            Section s = root.sub("ordering");
            std::string scheme = to_string(cfg.ordering.scheme);
            s.read("scheme", scheme);
            cfg.ordering.scheme = ordering_scheme_from_string(scheme);
            s.read("reversed_variable", cfg.ordering.reversed_variable);
        }
        {
            Section s = root.sub("cross");
            auto &c = cfg.cross;
            read_unsigned(s, "max_rank", c.max_rank);
            s.read("rel_tol", c.rel_tol);
            read_unsigned(s, "max_sweeps", c.max_sweeps);
            read_unsigned(s, "rank_increment", c.rank_increment);
            read_unsigned(s, "validation_samples", c.validation_samples);
            s.read("swap_tol", c.maxvol.swap_tol);
            s.read("rank_tol", c.rank_tol);
        }
        {
            Section s = root.sub("compile");
            read_unsigned(s, "chi_cap", cfg.compile.chi_cap);
            s.read("round_tol", cfg.compile.round_tol);
            s.read("merge", cfg.compile.merge);
            s.read("baseline", cfg.compile.baseline);
        }
        {
            Section s = root.sub("simulate");
            read_unsigned(s, "shots", cfg.simulate.shots);
        }
        {
            Section s = root.sub("metrics");
            s.read("kl_log", cfg.metrics.kl_log);
            s.read("kl_floor", cfg.metrics.kl_floor);
            s.read("dense_limit", cfg.metrics.dense_limit);
        }
        {
            Section s = root.sub("sweep");
            s.read("qubits", cfg.sweep.qubits);
            read_unsigned(s, "repeats", cfg.sweep.repeats);
        }
        {
            Section s = root.sub("output");
            s.read("path", cfg.output.path);
            s.read("format", cfg.output.format);
        }
    }
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto &k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
    cfg.validate();
    return cfg;
}

std::string serialize_config(const ExperimentConfig &cfg) {
    json doc;
    doc["seed"] = cfg.seed;
    auto &d = doc["distribution"];
    d["kind"] = cfg.distribution.kind;
    d["dims"] = cfg.distribution.dims;
    d["mu"] = cfg.distribution.mu;
    d["sigma"] = cfg.distribution.sigma;
    d["correlation"] = cfg.distribution.correlation;
    if (cfg.distribution.mean) d["mean"] = *cfg.distribution.mean;
    if (cfg.distribution.covariance) d["covariance"] = *cfg.distribution.covariance;
    auto &g = doc["grid"];
    g["qubits_per_dim"] = cfg.grid.qubits_per_dim;
    if (cfg.grid.bounds) g["bounds"] = *cfg.grid.bounds;
    g["quantile_lo"] = cfg.grid.quantile_lo;
    g["quantile_hi"] = cfg.grid.quantile_hi;
    doc["ordering"] = {{"scheme", to_string(cfg.ordering.scheme)},
                       {"reversed_variable", cfg.ordering.reversed_variable}};
    doc["cross"] = {{"max_rank", cfg.cross.max_rank},
                    {"rel_tol", cfg.cross.rel_tol},
                    {"max_sweeps", cfg.cross.max_sweeps},
                    {"rank_increment", cfg.cross.rank_increment},
                    {"validation_samples", cfg.cross.validation_samples},
                    {"swap_tol", cfg.cross.maxvol.swap_tol},
                    {"rank_tol", cfg.cross.rank_tol}};
    doc["compile"] = {{"chi_cap", cfg.compile.chi_cap},
                      {"round_tol", cfg.compile.round_tol},
                      {"merge", cfg.compile.merge},
                      {"baseline", cfg.compile.baseline}};
    doc["simulate"] = {{"shots", cfg.simulate.shots}};
    doc["metrics"] = {{"kl_log", cfg.metrics.kl_log},
                      {"kl_floor", cfg.metrics.kl_floor},
                      {"dense_limit", cfg.metrics.dense_limit}};
    doc["sweep"] = {{"qubits", cfg.sweep.qubits}, {"repeats", cfg.sweep.repeats}};
    doc["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
    return doc.dump(2);
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace ttload
