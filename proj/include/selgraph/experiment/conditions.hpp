#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "selgraph/estimators.hpp"
#include "selgraph/experiment/theory_file.hpp"

namespace selgraph {

/// Finite-n proxies for the model and selection conditions. Every field is
/// a diagnostic, not a proof: the conditions are statements about almost
/// sure limits and a single run can only be checked for gross violations.
struct ConditionsReport {
    int m = 0;
    std::uint64_t n_final = 0;
    std::uint32_t replicas = 0;

    // C1: convergence proxy between the final and half-time checkpoints
    bool c1_present = false;
    double c1_max_delta = 0.0;
    std::uint64_t c1_n_half = 0;

    // C2: scale-free proxy, log-log fit of the pooled empirical c
    bool c2_present = false;
    TailFit c2_fit;

    // C4: pooled initial-degree frequencies and their geometric tail ratio
    std::vector<double> p_hat;
    double c4_geometric_ratio = 0.0;

    // C6: integer-exact cumulative dominance on the empirical (c_hat, p_hat)
    bool c6_ok = false;
    int c6_first_violation = -1;
    int c6_d_hi = 0;
    std::vector<double> k_hat;

    // C9: growth of |S_n| across checkpoints
    bool c9_present = false;
    GrowthFit c9_fit;

    // C10: pooled selected-initial-degree frequencies, TV against theory q
    std::vector<double> q_hat;
    bool c10_has_theory = false;
    double c10_tv = 0.0;
};

namespace detail {

inline double geometric_ratio(const std::vector<double>& values) {
    int hi = -1;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] > 0.0) hi = static_cast<int>(i);
    if (hi < 1) return 0.0;
    const int lo = hi * 9 / 10;
    double s = 0.0;
    int pairs = 0;
    for (int d = std::max(1, lo); d <= hi; ++d) {
        if (values[static_cast<std::size_t>(d)] > 0.0 &&
            values[static_cast<std::size_t>(d - 1)] > 0.0) {
            s += std::log(values[static_cast<std::size_t>(d)] /
                          values[static_cast<std::size_t>(d - 1)]);
            ++pairs;
        }
    }
    return pairs > 0 ? std::exp(s / pairs) : 0.0;
}

} // namespace detail

inline ConditionsReport check_conditions(const std::filesystem::path& run_dir,
                                         const TheoryFile* theory = nullptr) {
    const auto pooled = load_pooled_run(run_dir);
    if (pooled.replicas.front().checkpoints.size() < 2)
        throw ConfigError("check-conditions needs at least 2 checkpoints");

    ConditionsReport rep;
    rep.m = pooled.config.model.minimal_degree();
    rep.n_final = pooled.n_final;
    rep.replicas = pooled.config.replicas;
    const auto r_count = static_cast<double>(pooled.config.replicas);

    // C1: compare X[n,d]/n at the final checkpoint with the latest
    // checkpoint at or before n/2, over d <= 20.
    {
        std::uint64_t n_half = 0;
        for (const auto& cp : pooled.replicas.front().checkpoints)
            if (cp.n <= pooled.n_final / 2) n_half = cp.n;
        if (n_half > 0) {
            std::vector<std::int64_t> x_half;
            for (const auto& r : pooled.replicas)
                for (const auto& cp : r.checkpoints)
                    if (cp.n == n_half) detail::add_into(x_half, cp.x);
            rep.c1_present = true;
            rep.c1_n_half = n_half;
            for (int d = rep.m; d <= 20; ++d) {
                const double f_final =
                    static_cast<double>(d < static_cast<int>(pooled.x.size())
                                            ? pooled.x[static_cast<std::size_t>(d)]
                                            : 0) /
                    (r_count * static_cast<double>(pooled.n_final));
                const double f_half =
                    static_cast<double>(d < static_cast<int>(x_half.size())
                                            ? x_half[static_cast<std::size_t>(d)]
                                            : 0) /
                    (r_count * static_cast<double>(n_half));
                rep.c1_max_delta = std::max(rep.c1_max_delta, std::fabs(f_final - f_half));
            }
        }
    }

    // C2: log-log fit of pooled empirical c over the default window.
    try {
        const auto [lo, hi] = default_empirical_window(pooled.x);
        rep.c2_fit = tail_exponent_fit(pooled.x, lo, hi, FitMethod::LogLogLS);
        rep.c2_present = true;
    } catch (const EstimationError&) {
    }

    // C4: initial-degree frequencies.
    {
        const auto total = static_cast<double>(pooled.new_total);
        rep.p_hat.resize(pooled.new_deg.size());
        for (std::size_t d = 0; d < pooled.new_deg.size(); ++d)
            rep.p_hat[d] = static_cast<double>(pooled.new_deg[d]) / total;
        rep.c4_geometric_ratio = detail::geometric_ratio(rep.p_hat);
    }

    // C6 on the empirical estimates, in exact integer arithmetic:
    // N_d = sum_{j=m}^{d} (#new vertices born with degree j - X[n_final, j]),
    // both normalized by n so the comparison is count against count.
    // Checked up to the last degree with at least 25 pooled observations;
    // beyond that the estimates are dominated by noise and by the O(|V0|)
    // initial-vertex excess.
    {
        int d_hi = rep.m;
        for (std::size_t d = 0; d < pooled.x.size(); ++d)
            if (pooled.x[d] >= 25) d_hi = static_cast<int>(d);
        rep.c6_d_hi = d_hi;
        rep.c6_ok = true;
        std::int64_t cum = 0;
        for (int d = rep.m; d <= d_hi; ++d) {
            const std::int64_t born = d < static_cast<int>(pooled.new_deg.size())
                                          ? pooled.new_deg[static_cast<std::size_t>(d)]
                                          : 0;
            const std::int64_t now = d < static_cast<int>(pooled.x.size())
                                         ? pooled.x[static_cast<std::size_t>(d)]
                                         : 0;
            cum += born - now;
            if (static_cast<std::size_t>(d - rep.m) < 50)
                rep.k_hat.push_back(static_cast<double>(cum) /
                                    (r_count * static_cast<double>(pooled.n_final)));
            const bool bad = (d == rep.m) ? (cum < 0) : (cum <= 0);
            if (bad && rep.c6_ok) {
                rep.c6_ok = false;
                rep.c6_first_violation = d;
            }
        }
    }

    // C9: growth fit of mean |S_n| over checkpoints with n >= 64.
    try {
        std::vector<std::pair<double, double>> points;
        for (std::size_t i = 0; i < pooled.replicas.front().checkpoints.size(); ++i) {
            const auto n = pooled.replicas.front().checkpoints[i].n;
            double s = 0;
            for (const auto& r : pooled.replicas)
                s += static_cast<double>(r.checkpoints[i].s_size);
            if (n >= 64) points.emplace_back(static_cast<double>(n), s / r_count);
        }
        if (points.size() < 3) {
            points.clear();
            for (std::size_t i = 0; i < pooled.replicas.front().checkpoints.size(); ++i) {
                const auto n = pooled.replicas.front().checkpoints[i].n;
                double s = 0;
                for (const auto& r : pooled.replicas)
                    s += static_cast<double>(r.checkpoints[i].s_size);
                points.emplace_back(static_cast<double>(n), s / r_count);
            }
        }
        rep.c9_fit = growth_exponent_fit(points);
        rep.c9_present = true;
    } catch (const EstimationError&) {
    }

    // C10: selected-initial-degree frequencies against theory q.
    if (pooled.new_sel_total > 0) {
        const auto total = static_cast<double>(pooled.new_sel_total);
        rep.q_hat.resize(pooled.new_deg_sel.size());
        for (std::size_t d = 0; d < pooled.new_deg_sel.size(); ++d)
            rep.q_hat[d] = static_cast<double>(pooled.new_deg_sel[d]) / total;
        if (theory != nullptr) {
            DegreeSequence q_hat_seq;
            q_hat_seq.m = 0;
            q_hat_seq.values = rep.q_hat;
            rep.c10_has_theory = true;
            rep.c10_tv = tv_distance(q_hat_seq, theory->q);
        }
    }

    return rep;
}

inline void write_conditions(JsonWriter& w, const ConditionsReport& rep) {
    w.begin_object();
    w.key("note").value("diagnostic, not proof");
    w.key("m").value(rep.m);
    w.key("n_final").value(rep.n_final);
    w.key("replicas").value(static_cast<std::uint64_t>(rep.replicas));
    w.key("c1_convergence").begin_object();
    if (rep.c1_present) {
        w.key("max_abs_delta_d_le_20").value(rep.c1_max_delta);
        w.key("n_half").value(rep.c1_n_half);
    } else {
        w.key("max_abs_delta_d_le_20").null();
    }
    w.end_object();
    w.key("c2_scale_free").begin_object();
    if (rep.c2_present) {
        w.key("exponent").value(rep.c2_fit.exponent);
        w.key("r_squared").value(rep.c2_fit.r_squared);
        w.key("window").begin_array().value(rep.c2_fit.d_min).value(rep.c2_fit.d_max).end_array();
    } else {
        w.key("exponent").null();
    }
    w.end_object();
    w.key("c4_initial_degrees").begin_object();
    w.key("p_hat").array(rep.p_hat);
    w.key("geometric_tail_ratio").value(rep.c4_geometric_ratio);
    w.end_object();
    w.key("c6_dominance").begin_object();
    w.key("ok").value(rep.c6_ok);
    if (rep.c6_first_violation >= 0) w.key("first_violation_d").value(rep.c6_first_violation);
    else w.key("first_violation_d").null();
    w.key("checked_up_to_d").value(rep.c6_d_hi);
    w.key("k_hat").array(rep.k_hat);
    w.end_object();
    w.key("c9_growth").begin_object();
    if (rep.c9_present) {
        w.key("alpha_hat").value(rep.c9_fit.alpha_hat);
        w.key("stderr").value(rep.c9_fit.stderr_);
        w.key("r_squared").value(rep.c9_fit.r_squared);
        w.key("checkpoints").value(static_cast<std::uint64_t>(rep.c9_fit.checkpoint_count));
    } else {
        w.key("alpha_hat").null();
    }
    w.end_object();
    w.key("c10_selected_initial_degrees").begin_object();
    w.key("q_hat").array(rep.q_hat);
    if (rep.c10_has_theory) w.key("tv_vs_theory_q").value(rep.c10_tv);
    else w.key("tv_vs_theory_q").null();
    w.end_object();
    w.end_object();
}

inline std::string conditions_to_json(const ConditionsReport& rep) {
    JsonWriter w;
    write_conditions(w, rep);
    return w.str();
}

} // namespace selgraph
