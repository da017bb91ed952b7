#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "selgraph/experiment/config.hpp"
#include "selgraph/experiment/runner.hpp"
#include "selgraph/io/csv.hpp"
#include "selgraph/io/json_writer.hpp"
#include "selgraph/theory.hpp"

namespace selgraph {

/// Serialized limit computation. Arrays are indexed by degree starting at
/// m; z has one extra entry (degree D+1). The tail bound stored for x is
/// z_{D+1}, the exact truncated mass of the limit distribution.
struct TheoryFile {
    std::string model = "custom";
    int m = 0;
    int d_max = 0;
    double alpha = 1.0;
    double gamma = 0.0;
    double gamma_star = 0.0;
    std::string q_mode = "same-as-p";
    DegreeSequence c, p, q;
    std::vector<double> k, t, a, x, z;
    double x_tail_bound = 0.0;
    bool condition6_ok = false;
    // parameter echo (one of these is meaningful, depending on the model)
    double beta = 0.0, lambda = 0.0;
    int m_arity = 0;
};

inline void write_theory_file(const std::filesystem::path& path, const TheoryFile& tf) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kConfigSchemaVersion);
    w.key("kind").value("selgraph-theory");
    w.key("model").value(tf.model);
    w.key("params").begin_object();
    if (tf.model == "port") w.key("beta").value(tf.beta);
    if (tf.model == "indep") w.key("lambda").value(tf.lambda);
    if (tf.model == "multitree") w.key("m").value(tf.m_arity);
    w.end_object();
    w.key("m").value(tf.m);
    w.key("alpha").value(tf.alpha);
    w.key("gamma").value(tf.gamma);
    w.key("gamma_star").value(tf.gamma_star);
    w.key("D").value(tf.d_max);
    w.key("q_mode").value(tf.q_mode);
    w.key("condition6_ok").value(tf.condition6_ok);
    w.key("c").array(tf.c.values);
    w.key("p").array(tf.p.values);
    w.key("q").array(tf.q.values);
    w.key("k").array(tf.k);
    w.key("t").array(tf.t);
    w.key("a").array(tf.a);
    w.key("x").array(tf.x);
    w.key("z").array(tf.z);
    w.key("q_offset").value(tf.q.m);
    w.key("p_offset").value(tf.p.m);
    w.key("tail_bounds").begin_object();
    w.key("c").value(tf.c.tail_bound);
    w.key("p").value(tf.p.tail_bound);
    w.key("q").value(tf.q.tail_bound);
    w.key("x").value(tf.x_tail_bound);
    w.end_object();
    w.end_object();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << w.str() << "\n";
}

inline TheoryFile load_theory_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open theory file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad theory file: ") + e.what());
    }
    TheoryFile tf;
    try {
        tf.model = j.at("model").get<std::string>();
        tf.m = j.at("m").get<int>();
        tf.d_max = j.at("D").get<int>();
        tf.alpha = j.at("alpha").get<double>();
        tf.gamma = j.at("gamma").get<double>();
        tf.gamma_star = j.at("gamma_star").get<double>();
        tf.q_mode = j.value("q_mode", std::string("same-as-p"));
        tf.condition6_ok = j.at("condition6_ok").get<bool>();
        auto load_seq = [&](const char* key, int offset) {
            DegreeSequence seq;
            seq.m = offset;
            for (const auto& v : j.at(key))
                seq.values.push_back(v.is_null() ? 0.0 : v.get<double>());
            return seq;
        };
        tf.c = load_seq("c", tf.m);
        tf.p = load_seq("p", j.value("p_offset", tf.m));
        tf.q = load_seq("q", j.value("q_offset", tf.m));
        for (const auto& v : j.at("k")) tf.k.push_back(v.is_null() ? 0.0 : v.get<double>());
        for (const auto& v : j.at("t")) tf.t.push_back(v.is_null() ? 0.0 : v.get<double>());
        for (const auto& v : j.at("a"))
            tf.a.push_back(v.is_null() ? std::numeric_limits<double>::infinity()
                                       : v.get<double>());
        for (const auto& v : j.at("x")) tf.x.push_back(v.is_null() ? 0.0 : v.get<double>());
        for (const auto& v : j.at("z")) tf.z.push_back(v.is_null() ? 0.0 : v.get<double>());
        if (j.contains("tail_bounds")) {
            const auto& tb = j.at("tail_bounds");
            tf.c.tail_bound = tb.value("c", 0.0);
            tf.p.tail_bound = tb.value("p", 0.0);
            tf.q.tail_bound = tb.value("q", 0.0);
            tf.x_tail_bound = tb.value("x", 0.0);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("theory file " + path.string() + " is malformed: " + e.what());
    }
    return tf;
}

/// x as a DegreeSequence (offset m, tail bound z_{D+1}).
inline DegreeSequence theory_x_sequence(const TheoryFile& tf) {
    DegreeSequence seq;
    seq.m = tf.m;
    seq.values = tf.x;
    seq.tail_bound = tf.x_tail_bound;
    return seq;
}

// ---------------------------------------------------------------------------
// Empirical plug-in estimation from finished runs
// ---------------------------------------------------------------------------

struct PooledRun {
    ExperimentConfig config;
    std::uint64_t n_final = 0;
    std::uint64_t vertices = 0; // summed over replicas
    std::uint64_t s_total = 0;
    std::uint64_t new_total = 0;     // number of steps, summed
    std::uint64_t new_sel_total = 0; // number of selected new vertices, summed
    std::vector<std::int64_t> x, x_star, new_deg, new_deg_sel;
    std::vector<LoadedReplica> replicas;
};

namespace detail {

inline void add_into(std::vector<std::int64_t>& acc, const std::vector<std::int64_t>& inc) {
    if (inc.size() > acc.size()) acc.resize(inc.size(), 0);
    for (std::size_t i = 0; i < inc.size(); ++i) acc[i] += inc[i];
}

} // namespace detail

inline PooledRun load_pooled_run(const std::filesystem::path& run_dir) {
    PooledRun pooled;
    pooled.config = load_run_config(run_dir);
    pooled.replicas = load_run_replicas(run_dir, pooled.config.replicas);
    for (const auto& rep : pooled.replicas) {
        const auto& last = rep.checkpoints.back();
        if (pooled.n_final == 0) pooled.n_final = last.n;
        if (last.n != pooled.n_final)
            throw ConfigError("replicas ended at different checkpoints");
        pooled.vertices += last.vertex_count;
        pooled.s_total += last.s_size;
        detail::add_into(pooled.x, last.x);
        detail::add_into(pooled.x_star, last.x_star);
        detail::add_into(pooled.new_deg, last.new_deg);
        detail::add_into(pooled.new_deg_sel, last.new_deg_sel);
    }
    for (const auto v : pooled.new_deg) pooled.new_total += static_cast<std::uint64_t>(v);
    for (const auto v : pooled.new_deg_sel)
        pooled.new_sel_total += static_cast<std::uint64_t>(v);
    return pooled;
}

/// Pooled empirical degree distribution of a finished run, restricted to
/// the contiguous stretch of strictly positive estimates starting at m (the
/// recursion requires c_d > 0 on its whole support). The tail bound is the
/// pooled mass left out, including the degrees below m held by initial
/// vertices.
inline DegreeSequence empirical_c_from_run(const std::filesystem::path& run_dir, int d_cap) {
    const auto pooled = load_pooled_run(run_dir);
    const int m = pooled.config.model.minimal_degree();
    DegreeSequence seq;
    seq.m = m;
    const auto total = static_cast<double>(pooled.vertices);
    for (std::size_t d = static_cast<std::size_t>(m); d < pooled.x.size(); ++d) {
        if (pooled.x[d] <= 0) break;
        if (d_cap > 0 && static_cast<int>(d) > d_cap) break;
        seq.values.push_back(static_cast<double>(pooled.x[d]) / total);
    }
    if (seq.values.size() < 2)
        throw ConfigError("run has no usable contiguous degree support at m=" +
                          std::to_string(m));
    seq.tail_bound = std::max(0.0, 1.0 - seq.sum());
    return seq;
}

/// Pooled empirical distribution of the selected new vertices' initial
/// degrees (the q estimate).
inline DegreeSequence empirical_q_from_run(const std::filesystem::path& run_dir) {
    const auto pooled = load_pooled_run(run_dir);
    if (pooled.new_sel_total == 0)
        throw ConfigError("run selected no new vertices; q cannot be estimated");
    DegreeSequence seq;
    seq.m = pooled.config.model.minimal_degree();
    const auto total = static_cast<double>(pooled.new_sel_total);
    const auto lo = static_cast<std::size_t>(seq.m);
    for (std::size_t d = lo; d < pooled.new_deg_sel.size(); ++d)
        seq.values.push_back(static_cast<double>(pooled.new_deg_sel[d]) / total);
    if (seq.values.empty()) seq.values.push_back(0.0);
    return seq;
}

/// Two-column CSV (`d,value`, header optional) with ascending degrees;
/// gaps are filled with zeros.
inline DegreeSequence empirical_c_from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    DegreeSequence seq;
    std::string line;
    bool first_row = true;
    int expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("bad row in " + path.string());
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        if (first_row && (a == "d" || a == "degree")) {
            first_row = false;
            continue;
        }
        first_row = false;
        int d;
        double v;
        try {
            d = std::stoi(a);
            v = std::stod(b);
        } catch (const std::exception&) {
            throw ConfigError("bad row '" + line + "' in " + path.string());
        }
        if (seq.values.empty()) {
            seq.m = d;
            expected = d;
        }
        if (d < expected) throw ConfigError("degrees must ascend in " + path.string());
        while (expected < d) {
            seq.values.push_back(0.0);
            ++expected;
        }
        seq.values.push_back(v);
        ++expected;
    }
    if (seq.values.empty()) throw ConfigError("no data rows in " + path.string());
    seq.tail_bound = std::max(0.0, 1.0 - seq.sum());
    return seq;
}

// ---------------------------------------------------------------------------
// Theory assembly for the CLI
// ---------------------------------------------------------------------------

struct TheorySpec {
    ModelParams model;
    double alpha = 0.0;
    int d_max = 10000;
    std::string q_mode = "same-as-p"; // same-as-p | shift1 | empirical
    std::string empirical_c;          // run directory or d,value CSV ("" = none)
};

inline TheoryFile build_theory(const TheorySpec& spec) {
    spec.model.validate();
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
        throw ConfigError("alpha must lie in (0, 1], got " + std::to_string(spec.alpha));
    if (spec.d_max < 2) throw ConfigError("dmax must be at least 2");
    TheoryFile tf;
    tf.model = spec.model.name();
    tf.alpha = spec.alpha;
    tf.q_mode = spec.q_mode;
    tf.beta = spec.model.beta;
    tf.lambda = spec.model.lambda;
    tf.m_arity = spec.model.m_arity;

    TheoryInputs in;
    in.alpha = spec.alpha;

    auto load_empirical_c = [&]() -> DegreeSequence {
        const std::filesystem::path path(spec.empirical_c);
        if (std::filesystem::is_directory(path))
            return empirical_c_from_run(path, spec.d_max);
        return empirical_c_from_csv(path);
    };

    switch (spec.model.kind) {
    case ModelKind::Port:
        tf.gamma = 3.0 + spec.model.beta;
        in.m = 1;
        in.c = spec.empirical_c.empty() ? port_cd(spec.model.beta, spec.d_max)
                                        : load_empirical_c();
        in.p = delta_sequence(1, 1);
        break;
    case ModelKind::Indep: {
        tf.gamma = 3.0;
        in.m = 0;
        auto [c, p] = indep_cd(spec.model.lambda, spec.d_max);
        if (!spec.empirical_c.empty()) c = load_empirical_c();
        in.c = std::move(c);
        in.p = std::move(p);
        break;
    }
    case ModelKind::Multitree: {
        const auto m_arity = spec.model.m_arity;
        tf.gamma = 2.0 + 1.0 / (m_arity - 1.0);
        in.m = m_arity;
        if (spec.empirical_c.empty())
            throw ConfigError("multitree theory has no closed-form c; pass --empirical-c "
                              "with a finished run directory or a d,value CSV");
        in.c = load_empirical_c();
        if (in.c.m != m_arity)
            throw ConfigError("empirical c starts at degree " + std::to_string(in.c.m) +
                              ", expected m = " + std::to_string(m_arity));
        in.p = delta_sequence(m_arity, m_arity);
        break;
    }
    case ModelKind::DegreeOneFrozen:
        throw ConfigError("the frozen counterexample has no limit theory; inspect it with "
                          "check-conditions instead");
    }

    if (spec.q_mode == "same-as-p") {
        in.q = in.p;
    } else if (spec.q_mode == "shift1") {
        in.q = shift_by_one(in.p);
    } else if (spec.q_mode == "empirical") {
        const std::filesystem::path path(spec.empirical_c);
        if (spec.empirical_c.empty() || !std::filesystem::is_directory(path))
            throw ConfigError("--q-mode empirical needs --empirical-c <run directory>");
        in.q = empirical_q_from_run(path);
    } else {
        throw ConfigError("unknown q mode '" + spec.q_mode + "'");
    }

    const LimitResult res = solve_limit(in, tf.gamma);
    tf.m = in.m;
    tf.d_max = in.c.max_degree();
    tf.gamma_star = res.gamma_star;
    tf.condition6_ok = res.condition6_ok;
    tf.c = std::move(in.c);
    tf.p = std::move(in.p);
    tf.q = std::move(in.q);
    tf.k = res.k;
    tf.t = res.t;
    tf.a = res.a;
    tf.x = res.x;
    tf.z = res.z;
    tf.x_tail_bound = res.z.back();
    return tf;
}

} // namespace selgraph
