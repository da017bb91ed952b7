#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "selgraph/errors.hpp"
#include "selgraph/graph_state.hpp"
#include "selgraph/theory.hpp"

namespace selgraph {

enum class FitMethod { LogLogLS, Hill };

struct TailFit {
    double exponent = 0.0;
    double stderr_ = 0.0;
    int d_min = 0;
    int d_max = 0;
    FitMethod method = FitMethod::LogLogLS;
    double r_squared = 0.0;
};

struct GrowthFit {
    double alpha_hat = 0.0;
    double stderr_ = 0.0;
    std::size_t checkpoint_count = 0;
    double r_squared = 0.0;
};

namespace detail {

struct LinFit {
    double slope, stderr_, r_squared;
};

inline LinFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw EstimationError("degenerate fit: no spread in abscissae");
    LinFit fit{};
    fit.slope = sxy / sxx;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = (ys[i] - my) - fit.slope * (xs[i] - mx);
        ss_res += r * r;
    }
    fit.stderr_ = xs.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

} // namespace detail

/// Power-law exponent of a value sequence over the window [d_min, d_max]:
/// least squares of log(value) on log(d), zero bins skipped (not imputed).
/// Requires at least 5 nonzero entries in the window.
inline TailFit tail_exponent_fit(const DegreeSequence& dist, int d_min, int d_max) {
    std::vector<double> xs, ys;
    for (int d = std::max(d_min, 1); d <= d_max; ++d) {
        const double v = dist.at(d);
        if (v > 0.0) {
            xs.push_back(std::log(static_cast<double>(d)));
            ys.push_back(std::log(v));
        }
    }
    if (xs.size() < 5)
        throw EstimationError("tail fit window [" + std::to_string(d_min) + ", " +
                              std::to_string(d_max) + "] has fewer than 5 nonzero entries");
    const auto fit = detail::least_squares(xs, ys);
    TailFit out;
    out.exponent = -fit.slope;
    out.stderr_ = fit.stderr_;
    out.d_min = d_min;
    out.d_max = d_max;
    out.method = FitMethod::LogLogLS;
    out.r_squared = fit.r_squared;
    return out;
}

/// Tail exponent from a degree histogram (counts by degree).
/// LogLogLS fits the normalized counts; Hill reports
/// 1 + 1/mean(log(d_i/d_min)) over the sampled degrees >= d_min, matching
/// the density exponent convention.
inline TailFit tail_exponent_fit(const std::vector<std::int64_t>& counts, int d_min,
                                 int d_max, FitMethod method) {
    if (method == FitMethod::LogLogLS) {
        DegreeSequence seq;
        seq.m = 0;
        double total = 0;
        for (const auto c : counts) total += static_cast<double>(c);
        if (total <= 0) throw EstimationError("empty histogram");
        seq.values.resize(counts.size());
        for (std::size_t d = 0; d < counts.size(); ++d)
            seq.values[d] = static_cast<double>(counts[d]) / total;
        return tail_exponent_fit(seq, d_min, d_max);
    }
    if (d_min < 1) throw EstimationError("hill: d_min must be >= 1");
    double log_sum = 0.0;
    double n = 0.0;
    for (std::size_t d = static_cast<std::size_t>(d_min); d < counts.size(); ++d) {
        if (counts[d] <= 0) continue;
        const auto cnt = static_cast<double>(counts[d]);
        log_sum += cnt * std::log(static_cast<double>(d) / static_cast<double>(d_min));
        n += cnt;
    }
    if (n < 5.0) throw EstimationError("hill: fewer than 5 sample points above d_min");
    if (log_sum <= 0.0) throw EstimationError("hill: all sample points equal d_min");
    TailFit out;
    out.exponent = 1.0 + n / log_sum;
    out.stderr_ = (out.exponent - 1.0) / std::sqrt(n);
    out.d_min = d_min;
    out.d_max = d_max;
    out.method = FitMethod::Hill;
    out.r_squared = 0.0;
    return out;
}

/// Growth exponent of |S_n|: least-squares slope of log s against log n.
inline GrowthFit growth_exponent_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw EstimationError("growth fit needs at least 3 checkpoints, got " +
                              std::to_string(points.size()));
    std::vector<double> xs, ys;
    for (const auto& [n, s] : points) {
        if (!(s > 0.0))
            throw EstimationError("growth fit: s_size must be positive at every checkpoint");
        xs.push_back(std::log(n));
        ys.push_back(std::log(s));
    }
    const auto fit = detail::least_squares(xs, ys);
    GrowthFit out;
    out.alpha_hat = fit.slope;
    out.stderr_ = fit.stderr_;
    out.checkpoint_count = points.size();
    out.r_squared = fit.r_squared;
    return out;
}

/// Total variation distance over a common degree window (missing entries
/// count as zero). The default window is the union of both supports.
inline double tv_distance(const DegreeSequence& a, const DegreeSequence& b, int d_lo,
                          int d_hi) {
    double s = 0.0;
    for (int d = d_lo; d <= d_hi; ++d) s += std::fabs(a.at(d) - b.at(d));
    return 0.5 * s;
}

inline double tv_distance(const DegreeSequence& a, const DegreeSequence& b) {
    return tv_distance(a, b, std::min(a.m, b.m), std::max(a.max_degree(), b.max_degree()));
}

/// Restricted empirical distribution X*[n, .] / |S_n| from a checkpoint.
inline DegreeSequence empirical_x(const Checkpoint& cp) {
    if (cp.s_size == 0) throw EstimationError("empirical_x: selected set is empty");
    DegreeSequence seq;
    seq.m = 0;
    seq.values.resize(cp.x_star.size());
    for (std::size_t d = 0; d < cp.x_star.size(); ++d)
        seq.values[d] = static_cast<double>(cp.x_star[d]) / static_cast<double>(cp.s_size);
    return seq;
}

/// Full empirical degree distribution X[n, .] / |V_n| from a checkpoint.
inline DegreeSequence empirical_c(const Checkpoint& cp) {
    if (cp.vertex_count == 0) throw EstimationError("empirical_c: empty graph");
    DegreeSequence seq;
    seq.m = 0;
    seq.values.resize(cp.x.size());
    for (std::size_t d = 0; d < cp.x.size(); ++d)
        seq.values[d] = static_cast<double>(cp.x[d]) / static_cast<double>(cp.vertex_count);
    return seq;
}

/// Default fit window for empirical histograms: [5, largest d with at
/// least 25 observations]. Variance control; zero-heavy tails excluded.
inline std::pair<int, int> default_empirical_window(const std::vector<std::int64_t>& counts) {
    int hi = 0;
    for (std::size_t d = 0; d < counts.size(); ++d)
        if (counts[d] >= 25) hi = static_cast<int>(d);
    return {5, hi};
}

/// Default fit window for theory sequences truncated at D: [100, D/10].
inline std::pair<int, int> default_theory_window(int d_max) {
    return {100, d_max / 10};
}

} // namespace selgraph
