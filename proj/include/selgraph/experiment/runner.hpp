#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "selgraph/experiment/config.hpp"
#include "selgraph/io/csv.hpp"
#include "selgraph/io/json_writer.hpp"
#include "selgraph/models/models.hpp"
#include "selgraph/rng.hpp"
#include "selgraph/selection.hpp"

namespace selgraph {

struct ReplicaStats {
    std::uint32_t index = 0;
    std::uint64_t seed = 0;
    std::uint64_t wall_ms = 0;
    std::uint64_t clamp_events = 0;
    std::uint64_t final_s_size = 0;
};

struct RunSummary {
    std::vector<ReplicaStats> replicas;
    std::filesystem::path manifest_path;
};

namespace detail {

inline void append_row(std::string& buf, std::uint32_t replica, std::uint64_t n,
                       std::int64_t d, std::int64_t a, std::int64_t b) {
    char line[128];
    std::snprintf(line, sizeof line, "%u,%llu,%lld,%lld,%lld\n", replica,
                  static_cast<unsigned long long>(n), static_cast<long long>(d),
                  static_cast<long long>(a), static_cast<long long>(b));
    buf += line;
}

/// Histogram rows for one checkpoint, truncated at d_max with the overflow
/// mass in the d = -2 sentinel.
inline void append_checkpoint(std::string& buf, std::uint32_t replica,
                              const Checkpoint& cp, std::uint32_t d_max) {
    append_row(buf, replica, cp.n, kSentinelSize,
               static_cast<std::int64_t>(cp.vertex_count),
               static_cast<std::int64_t>(cp.s_size));
    std::int64_t over_all = 0, over_sel = 0;
    const std::size_t cut = static_cast<std::size_t>(d_max) + 1;
    for (std::size_t d = cut; d < cp.x.size(); ++d) over_all += cp.x[d];
    for (std::size_t d = cut; d < cp.x_star.size(); ++d) over_sel += cp.x_star[d];
    append_row(buf, replica, cp.n, kSentinelOverflow, over_all, over_sel);
    const std::size_t top = std::min(cut, std::max(cp.x.size(), cp.x_star.size()));
    for (std::size_t d = 0; d < top; ++d) {
        const std::int64_t a = d < cp.x.size() ? cp.x[d] : 0;
        const std::int64_t b = d < cp.x_star.size() ? cp.x_star[d] : 0;
        if (a != 0 || b != 0)
            append_row(buf, replica, cp.n, static_cast<std::int64_t>(d), a, b);
    }
}

inline void append_initdeg(std::string& buf, std::uint32_t replica, std::uint64_t n,
                           const std::vector<std::int64_t>& new_deg,
                           const std::vector<std::int64_t>& new_deg_sel) {
    const std::size_t top = std::max(new_deg.size(), new_deg_sel.size());
    for (std::size_t d = 0; d < top; ++d) {
        const std::int64_t a = d < new_deg.size() ? new_deg[d] : 0;
        const std::int64_t b = d < new_deg_sel.size() ? new_deg_sel[d] : 0;
        if (a != 0 || b != 0)
            append_row(buf, replica, n, static_cast<std::int64_t>(d), a, b);
    }
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("short write to " + path.string());
}

inline void model_verify_aux(const ModelVariant& model, const SelectionState& sel) {
    if (const auto* indep = std::get_if<IndepModel>(&model)) {
        // tracked = selected plus the fixed target, if any
        auto marks = sel.members();
        if (sel.rule().kind == RuleKind::NeighborsOf) marks[sel.rule().target] = 1;
        indep->verify_aux(marks);
    } else if (const auto* mt = std::get_if<MultitreeModel>(&model)) {
        mt->verify_aux();
    }
}

} // namespace detail

/// Run one replica to completion and persist its two CSV files.
inline ReplicaStats run_replica(const ExperimentConfig& cfg, std::uint32_t index) {
    const auto t0 = std::chrono::steady_clock::now();
    ReplicaStats stats;
    stats.index = index;
    stats.seed = replica_seed(cfg.master_seed, index);

    Rng rng(stats.seed);
    ModelVariant model = make_model(cfg.model);
    SelectionState selection = init_selection(cfg.rule, model);

    std::vector<std::int64_t> new_deg, new_deg_sel;
    std::string csv = "replica,n,d,count_all,count_selected\n";
    std::string initdeg_csv = "replica,n,d,count_new,count_new_selected\n";

    std::size_t next_cp = 0;
    std::uint64_t total_clamps = 0;
    for (std::uint64_t step = 1; step <= cfg.n_steps; ++step) {
        const StepRecord rec = advance(model, selection, rng);
        total_clamps += rec.outcome.clamp_events;
        const auto d0 = rec.outcome.endpoints.size();
        if (d0 >= new_deg.size()) new_deg.resize(d0 + 1, 0);
        ++new_deg[d0];
        if (rec.selected) {
            if (d0 >= new_deg_sel.size()) new_deg_sel.resize(d0 + 1, 0);
            ++new_deg_sel[d0];
        }
        if (next_cp < cfg.checkpoints.size() && step == cfg.checkpoints[next_cp]) {
            const GraphState& state = model_state(model);
            verify_counts(state);
            detail::model_verify_aux(model, selection);
            selection.verify(state.degrees);
            const Checkpoint cp = snapshot(state, selection);
            detail::append_checkpoint(csv, index, cp, cfg.d_max);
            detail::append_initdeg(initdeg_csv, index, step, new_deg, new_deg_sel);
            ++next_cp;
        }
    }
    stats.clamp_events = total_clamps;
    stats.final_s_size = selection.s_size();

    const std::filesystem::path dir(cfg.output_dir);
    detail::write_file(dir / replica_file_name(index), csv);
    detail::write_file(dir / initdeg_file_name(index), initdeg_csv);

    const auto t1 = std::chrono::steady_clock::now();
    stats.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    return stats;
}

/// Run all replicas in a worker pool. Each replica has confined state and
/// its own deterministically derived RNG stream, so the outputs do not
/// depend on scheduling; aggregation happens later from the finished files.
inline RunSummary run_experiment(const ExperimentConfig& cfg, unsigned threads = 0) {
    std::filesystem::create_directories(cfg.output_dir);
    if (threads == 0)
        threads = std::max(1u, std::min<unsigned>(cfg.replicas,
                                                  std::thread::hardware_concurrency()));
    threads = std::min<unsigned>(threads, cfg.replicas);

    std::vector<ReplicaStats> stats(cfg.replicas);
    std::vector<std::exception_ptr> failures(cfg.replicas);
    std::atomic<std::uint32_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::uint32_t r = cursor.fetch_add(1);
            if (r >= cfg.replicas) return;
            try {
                stats[r] = run_replica(cfg, r);
            } catch (...) {
                failures[r] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kConfigSchemaVersion);
    w.key("kind").value("selgraph-run");
    w.key("config");
    write_config(w, cfg);
    w.key("resolved_checkpoints").array(cfg.checkpoints);
    w.key("replicas").begin_array();
    for (const auto& s : stats) {
        w.begin_object();
        w.key("index").value(static_cast<std::uint64_t>(s.index));
        w.key("seed").value(s.seed);
        w.key("wall_ms").value(s.wall_ms);
        w.key("clamp_events").value(s.clamp_events);
        w.key("final_s_size").value(s.final_s_size);
        w.end_object();
    }
    w.end_array();
    w.end_object();

    RunSummary summary;
    summary.replicas = std::move(stats);
    summary.manifest_path = std::filesystem::path(cfg.output_dir) / "manifest.json";
    detail::write_file(summary.manifest_path, w.str() + "\n");
    return summary;
}

/// Parse the manifest of a finished run back into its configuration.
inline ExperimentConfig load_run_config(const std::filesystem::path& run_dir) {
    std::ifstream in(run_dir / "manifest.json");
    if (!in) throw ConfigError("cannot open manifest in " + run_dir.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad manifest: ") + e.what());
    }
    if (!j.contains("config")) throw ConfigError("manifest has no config echo");
    return config_from_json(j.at("config"));
}

} // namespace selgraph
