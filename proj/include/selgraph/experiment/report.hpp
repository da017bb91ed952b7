#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "selgraph/estimators.hpp"
#include "selgraph/experiment/conditions.hpp"
#include "selgraph/experiment/theory_file.hpp"

namespace selgraph {

struct ReportRow {
    int d = 0;
    double x_hat_mean = 0.0;   // mean of per-replica X*[d]/|S|
    double x_hat_stderr = 0.0; // across replicas
    double x_hat_pooled = 0.0; // sum X*[d] / sum |S|
    double x_theory = 0.0;
    double abs_error = 0.0; // |mean - theory|
};

/// Empirical-versus-theory comparison of one finished run.
struct Report {
    std::string run_dir;
    std::string theory_file; // provenance of every theory value in the table
    std::string theory_model;
    std::uint64_t n_final = 0;
    std::uint32_t replicas = 0;
    std::vector<ReportRow> rows;
    double tv = 0.0;        // TV(mean x_hat, theory x), full common support
    double tv_pooled = 0.0; // same with the pooled estimate
    bool gamma_hat_present = false;
    TailFit gamma_hat; // log-log fit of pooled X*
    double gamma_star = 0.0;
    bool alpha_hat_present = false;
    GrowthFit alpha_hat; // fit of mean |S_n| over checkpoints with n >= 1024
    double alpha_theory = 0.0;
    std::uint64_t clamp_events = 0;
    ConditionsReport conditions;
};

namespace detail {

inline std::uint64_t manifest_clamp_total(const std::filesystem::path& run_dir) {
    std::ifstream in(run_dir / "manifest.json");
    if (!in) return 0;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return 0;
    }
    std::uint64_t total = 0;
    if (j.contains("replicas"))
        for (const auto& r : j.at("replicas")) total += r.value("clamp_events", 0ULL);
    return total;
}

} // namespace detail

inline Report compare_report(const std::filesystem::path& run_dir, const TheoryFile& theory,
                             const std::string& theory_path = "") {
    const auto pooled = load_pooled_run(run_dir);
    if (theory.m != pooled.config.model.minimal_degree())
        throw ConfigError("theory file has m = " + std::to_string(theory.m) +
                          " but the run's model has m = " +
                          std::to_string(pooled.config.model.minimal_degree()));
    if (pooled.s_total == 0)
        throw ConfigError("selected set is empty at the final checkpoint");

    Report rep;
    rep.run_dir = run_dir.string();
    rep.theory_file = theory_path;
    rep.theory_model = theory.model;
    rep.n_final = pooled.n_final;
    rep.replicas = pooled.config.replicas;
    rep.gamma_star = theory.gamma_star;
    rep.alpha_theory = theory.alpha;
    rep.clamp_events = detail::manifest_clamp_total(run_dir);

    const DegreeSequence x_theory = theory_x_sequence(theory);

    // per-replica ratios at the final checkpoint
    std::vector<const LoadedCheckpoint*> finals;
    for (const auto& r : pooled.replicas) finals.push_back(&r.checkpoints.back());
    const int d_top = std::max<int>(static_cast<int>(pooled.x_star.size()) - 1,
                                    x_theory.max_degree());
    DegreeSequence x_mean;
    x_mean.m = theory.m;
    DegreeSequence x_pool;
    x_pool.m = theory.m;
    for (int d = theory.m; d <= d_top; ++d) {
        double sum = 0, sum_sq = 0;
        std::size_t used = 0;
        for (const auto* cp : finals) {
            if (cp->s_size == 0) continue;
            const double v = d < static_cast<int>(cp->x_star.size())
                                 ? static_cast<double>(cp->x_star[static_cast<std::size_t>(d)]) /
                                       static_cast<double>(cp->s_size)
                                 : 0.0;
            sum += v;
            sum_sq += v * v;
            ++used;
        }
        ReportRow row;
        row.d = d;
        row.x_hat_mean = used > 0 ? sum / static_cast<double>(used) : 0.0;
        if (used > 1) {
            const double var =
                (sum_sq - sum * sum / static_cast<double>(used)) / static_cast<double>(used - 1);
            row.x_hat_stderr = std::sqrt(std::max(0.0, var) / static_cast<double>(used));
        }
        row.x_hat_pooled =
            d < static_cast<int>(pooled.x_star.size())
                ? static_cast<double>(pooled.x_star[static_cast<std::size_t>(d)]) /
                      static_cast<double>(pooled.s_total)
                : 0.0;
        row.x_theory = x_theory.at(d);
        row.abs_error = std::fabs(row.x_hat_mean - row.x_theory);
        rep.rows.push_back(row);
        x_mean.values.push_back(row.x_hat_mean);
        x_pool.values.push_back(row.x_hat_pooled);
    }
    rep.tv = tv_distance(x_mean, x_theory);
    rep.tv_pooled = tv_distance(x_pool, x_theory);

    try {
        const auto [lo, hi] = default_empirical_window(pooled.x_star);
        rep.gamma_hat = tail_exponent_fit(pooled.x_star, lo, hi, FitMethod::LogLogLS);
        rep.gamma_hat_present = true;
    } catch (const EstimationError&) {
    }

    try {
        const auto r_count = static_cast<double>(pooled.config.replicas);
        std::vector<std::pair<double, double>> points;
        for (std::size_t i = 0; i < pooled.replicas.front().checkpoints.size(); ++i) {
            const auto n = pooled.replicas.front().checkpoints[i].n;
            double s = 0;
            for (const auto& r : pooled.replicas)
                s += static_cast<double>(r.checkpoints[i].s_size);
            if (n >= 1024) points.emplace_back(static_cast<double>(n), s / r_count);
        }
        if (points.size() >= 3) {
            rep.alpha_hat = growth_exponent_fit(points);
            rep.alpha_hat_present = true;
        }
    } catch (const EstimationError&) {
    }

    rep.conditions = check_conditions(run_dir, &theory);
    return rep;
}

inline std::string report_to_json(const Report& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kConfigSchemaVersion);
    w.key("kind").value("selgraph-report");
    w.key("run_dir").value(rep.run_dir);
    w.key("theory_file").value(rep.theory_file);
    w.key("theory_model").value(rep.theory_model);
    w.key("n_final").value(rep.n_final);
    w.key("replicas").value(static_cast<std::uint64_t>(rep.replicas));
    w.key("tv").value(rep.tv);
    w.key("tv_pooled").value(rep.tv_pooled);
    w.key("gamma_star").value(rep.gamma_star);
    if (rep.gamma_hat_present) {
        w.key("gamma_hat").begin_object();
        w.key("exponent").value(rep.gamma_hat.exponent);
        w.key("stderr").value(rep.gamma_hat.stderr_);
        w.key("r_squared").value(rep.gamma_hat.r_squared);
        w.key("window").begin_array().value(rep.gamma_hat.d_min).value(rep.gamma_hat.d_max).end_array();
        w.end_object();
    } else {
        w.key("gamma_hat").null();
    }
    w.key("alpha_theory").value(rep.alpha_theory);
    if (rep.alpha_hat_present) {
        w.key("alpha_hat").begin_object();
        w.key("value").value(rep.alpha_hat.alpha_hat);
        w.key("stderr").value(rep.alpha_hat.stderr_);
        w.key("r_squared").value(rep.alpha_hat.r_squared);
        w.key("checkpoints").value(static_cast<std::uint64_t>(rep.alpha_hat.checkpoint_count));
        w.end_object();
    } else {
        w.key("alpha_hat").null();
    }
    w.key("clamp_events").value(rep.clamp_events);
    w.key("table").begin_array();
    for (const auto& row : rep.rows) {
        w.begin_object();
        w.key("d").value(row.d);
        w.key("x_hat_mean").value(row.x_hat_mean);
        w.key("x_hat_stderr").value(row.x_hat_stderr);
        w.key("x_hat_pooled").value(row.x_hat_pooled);
        w.key("x_theory").value(row.x_theory);
        w.key("abs_error").value(row.abs_error);
        w.end_object();
    }
    w.end_array();
    w.key("conditions");
    write_conditions(w, rep.conditions);
    w.end_object();
    return w.str();
}

/// Human-readable summary table (first 25 degrees).
inline std::string report_table(const Report& rep) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "run %s  (n = %llu, %u replicas)\n",
                  rep.run_dir.c_str(), static_cast<unsigned long long>(rep.n_final),
                  rep.replicas);
    out += line;
    std::snprintf(line, sizeof line, "%6s %14s %12s %14s %12s\n", "d", "x_hat(mean)",
                  "stderr", "x(theory)", "abs.err");
    out += line;
    std::size_t shown = 0;
    for (const auto& row : rep.rows) {
        if (shown++ >= 25) break;
        std::snprintf(line, sizeof line, "%6d %14.6g %12.3g %14.6g %12.3g\n", row.d,
                      row.x_hat_mean, row.x_hat_stderr, row.x_theory, row.abs_error);
        out += line;
    }
    std::snprintf(line, sizeof line, "TV(x_hat, x) = %.6g   (pooled: %.6g)\n", rep.tv,
                  rep.tv_pooled);
    out += line;
    if (rep.gamma_hat_present) {
        std::snprintf(line, sizeof line, "gamma_hat = %.4g (fit on [%d, %d])   gamma* = %.4g\n",
                      rep.gamma_hat.exponent, rep.gamma_hat.d_min, rep.gamma_hat.d_max,
                      rep.gamma_star);
        out += line;
    }
    if (rep.alpha_hat_present) {
        std::snprintf(line, sizeof line, "alpha_hat = %.4g +- %.2g   alpha = %.4g\n",
                      rep.alpha_hat.alpha_hat, rep.alpha_hat.stderr_, rep.alpha_theory);
        out += line;
    }
    std::snprintf(line, sizeof line, "clamp events: %llu\n",
                  static_cast<unsigned long long>(rep.clamp_events));
    out += line;
    return out;
}

} // namespace selgraph
