#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "selgraph/errors.hpp"
#include "selgraph/io/json_writer.hpp"
#include "selgraph/models/params.hpp"
#include "selgraph/selection.hpp"

namespace selgraph {

inline constexpr int kConfigSchemaVersion = 1;

/// Declarative description of one experiment. Parsed from strict JSON:
/// unknown keys are rejected so that typos in scientific configs fail loudly.
struct ExperimentConfig {
    ModelParams model;
    SelectionRule rule;
    std::uint64_t n_steps = 1;
    bool dyadic_checkpoints = true;
    std::vector<std::uint64_t> checkpoints; // resolved, ascending, unique
    std::uint32_t replicas = 1;
    std::uint64_t master_seed = 0;
    std::uint32_t d_max = 100000;
    std::string output_dir;
};

inline std::vector<std::uint64_t> dyadic_schedule(std::uint64_t n_steps) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t n = 1; n < n_steps; n *= 2) cps.push_back(n);
    cps.push_back(n_steps);
    return cps;
}

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("key '" + std::string(key) + "' in " + where + " has the wrong type");
    }
}

inline ModelParams parse_model(const json& obj) {
    if (!obj.is_object()) throw ConfigError("'model' must be an object");
    const auto name = require<std::string>(obj, "name", "model");
    ModelParams params;
    if (name == "port") {
        params.kind = ModelKind::Port;
        reject_unknown_keys(obj, {"name", "beta"}, "model");
        params.beta = require<double>(obj, "beta", "model");
    } else if (name == "indep") {
        params.kind = ModelKind::Indep;
        reject_unknown_keys(obj, {"name", "lambda"}, "model");
        params.lambda = require<double>(obj, "lambda", "model");
    } else if (name == "frozen") {
        params.kind = ModelKind::DegreeOneFrozen;
        reject_unknown_keys(obj, {"name", "lambda"}, "model");
        params.lambda = require<double>(obj, "lambda", "model");
    } else if (name == "multitree") {
        params.kind = ModelKind::Multitree;
        reject_unknown_keys(obj, {"name", "m"}, "model");
        params.m_arity = require<int>(obj, "m", "model");
    } else {
        throw ConfigError("unknown model '" + name + "'");
    }
    params.validate();
    return params;
}

inline SelectionRule parse_rule(const json& obj) {
    if (!obj.is_object()) throw ConfigError("'rule' must be an object");
    const auto name = require<std::string>(obj, "name", "rule");
    SelectionRule rule;
    if (name == "all") {
        rule.kind = RuleKind::All;
        reject_unknown_keys(obj, {"name"}, "rule");
    } else if (name == "level") {
        rule.kind = RuleKind::LevelJ;
        reject_unknown_keys(obj, {"name", "j"}, "rule");
        const int j = require<int>(obj, "j", "rule");
        if (j < 1) throw ConfigError("rule level: j must be >= 1");
        rule.j = static_cast<std::uint32_t>(j);
    } else if (name == "neighbors") {
        rule.kind = RuleKind::NeighborsOf;
        reject_unknown_keys(obj, {"name", "target"}, "rule");
        const int t = require<int>(obj, "target", "rule");
        if (t < 0) throw ConfigError("rule neighbors: target must be >= 0");
        rule.target = static_cast<VertexId>(t);
    } else if (name == "connected_to_all") {
        rule.kind = RuleKind::ConnectedToAll;
        reject_unknown_keys(obj, {"name", "fixed"}, "rule");
        const auto fixed = require<std::vector<int>>(obj, "fixed", "rule");
        for (const int f : fixed) {
            if (f < 0) throw ConfigError("rule connected_to_all: negative vertex id");
            rule.fixed.push_back(static_cast<VertexId>(f));
        }
    } else if (name == "degree_one") {
        rule.kind = RuleKind::DegreeOneAtBirth;
        reject_unknown_keys(obj, {"name"}, "rule");
    } else {
        throw ConfigError("unknown rule '" + name + "'");
    }
    return rule;
}

} // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    using detail::require;
    if (!j.is_object()) throw ConfigError("config root must be an object");
    detail::reject_unknown_keys(j,
                                {"schema_version", "model", "rule", "n_steps", "checkpoints",
                                 "replicas", "master_seed", "d_max", "output_dir"},
                                "config");
    const int version = require<int>(j, "schema_version", "config");
    if (version != kConfigSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(version));
    for (const char* key : {"model", "rule"})
        if (!j.contains(key))
            throw ConfigError("missing key '" + std::string(key) + "' in config");

    ExperimentConfig cfg;
    cfg.model = detail::parse_model(j.at("model"));
    cfg.rule = detail::parse_rule(j.at("rule"));
    validate_rule(cfg.rule, cfg.model);

    const auto n_steps = require<std::int64_t>(j, "n_steps", "config");
    if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
    cfg.n_steps = static_cast<std::uint64_t>(n_steps);

    if (!j.contains("checkpoints") || (j.at("checkpoints").is_string() &&
                                       j.at("checkpoints").get<std::string>() == "dyadic")) {
        cfg.dyadic_checkpoints = true;
        cfg.checkpoints = dyadic_schedule(cfg.n_steps);
    } else if (j.at("checkpoints").is_array()) {
        cfg.dyadic_checkpoints = false;
        for (const auto& v : j.at("checkpoints")) {
            if (!v.is_number_integer()) throw ConfigError("checkpoints must be integers");
            const auto n = v.get<std::int64_t>();
            if (n < 1 || static_cast<std::uint64_t>(n) > cfg.n_steps)
                throw ConfigError("checkpoint " + std::to_string(n) + " out of range");
            cfg.checkpoints.push_back(static_cast<std::uint64_t>(n));
        }
        if (cfg.checkpoints.empty()) throw ConfigError("checkpoint list is empty");
        if (!std::is_sorted(cfg.checkpoints.begin(), cfg.checkpoints.end()))
            throw ConfigError("checkpoints must be sorted ascending");
        if (std::adjacent_find(cfg.checkpoints.begin(), cfg.checkpoints.end()) !=
            cfg.checkpoints.end())
            throw ConfigError("checkpoints must be unique");
    } else {
        throw ConfigError("'checkpoints' must be \"dyadic\" or an integer array");
    }

    const auto replicas = require<std::int64_t>(j, "replicas", "config");
    if (replicas < 1) throw ConfigError("replicas must be >= 1");
    cfg.replicas = static_cast<std::uint32_t>(replicas);

    cfg.master_seed = static_cast<std::uint64_t>(require<std::int64_t>(j, "master_seed", "config"));

    if (j.contains("d_max")) {
        const auto d_max = require<std::int64_t>(j, "d_max", "config");
        if (d_max < 1) throw ConfigError("d_max must be >= 1");
        cfg.d_max = static_cast<std::uint32_t>(d_max);
    }

    cfg.output_dir = require<std::string>(j, "output_dir", "config");
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
    return cfg;
}

inline ExperimentConfig config_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

/// Exact JSON echo of a config; feeding it back through config_from_string
/// reproduces the same experiment.
inline void write_config(JsonWriter& w, const ExperimentConfig& cfg) {
    w.begin_object();
    w.key("schema_version").value(kConfigSchemaVersion);
    w.key("model").begin_object();
    w.key("name").value(cfg.model.name());
    switch (cfg.model.kind) {
    case ModelKind::Port: w.key("beta").value(cfg.model.beta); break;
    case ModelKind::Indep:
    case ModelKind::DegreeOneFrozen: w.key("lambda").value(cfg.model.lambda); break;
    case ModelKind::Multitree: w.key("m").value(cfg.model.m_arity); break;
    }
    w.end_object();
    w.key("rule").begin_object();
    w.key("name").value(cfg.rule.name());
    switch (cfg.rule.kind) {
    case RuleKind::LevelJ: w.key("j").value(static_cast<std::uint64_t>(cfg.rule.j)); break;
    case RuleKind::NeighborsOf:
        w.key("target").value(static_cast<std::uint64_t>(cfg.rule.target));
        break;
    case RuleKind::ConnectedToAll: {
        w.key("fixed").begin_array();
        for (const auto v : cfg.rule.fixed) w.value(static_cast<std::uint64_t>(v));
        w.end_array();
        break;
    }
    default: break;
    }
    w.end_object();
    w.key("n_steps").value(cfg.n_steps);
    if (cfg.dyadic_checkpoints) {
        w.key("checkpoints").value("dyadic");
    } else {
        w.key("checkpoints").array(cfg.checkpoints);
    }
    w.key("replicas").value(static_cast<std::uint64_t>(cfg.replicas));
    w.key("master_seed").value(cfg.master_seed);
    w.key("d_max").value(static_cast<std::uint64_t>(cfg.d_max));
    w.key("output_dir").value(cfg.output_dir);
    w.end_object();
}

} // namespace selgraph
