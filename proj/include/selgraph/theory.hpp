#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "selgraph/errors.hpp"

namespace selgraph {

/// Finite stretch of a sequence indexed by degree, starting at the minimal
/// degree m, together with an estimate of the mass beyond the truncation.
struct DegreeSequence {
    int m = 0;
    std::vector<double> values; // values[i] belongs to degree m + i
    double tail_bound = 0.0;

    int max_degree() const { return m + static_cast<int>(values.size()) - 1; }

    double at(int d) const {
        const int i = d - m;
        if (i < 0 || i >= static_cast<int>(values.size())) return 0.0;
        return values[static_cast<std::size_t>(i)];
    }

    double sum() const {
        double s = 0.0, comp = 0.0;
        for (const double v : values) {
            const double y = v - comp;
            const double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        return s;
    }
};

/// Inputs of the limit computation: the asymptotic degree distribution c,
/// the initial-degree distribution p, the selected-initial-degree
/// distribution q, and the growth exponent alpha of |S_n|.
struct TheoryInputs {
    DegreeSequence c;
    DegreeSequence p;
    DegreeSequence q;
    double alpha = 1.0;
    int m = 0;
};

struct KSequence {
    int m = 0;
    std::vector<double> k; // k[i] = sum_{j=m}^{m+i} (p_j - c_j)
    bool condition6_ok = false;
    int first_violation = -1; // degree, or -1

    double at(int d) const { return k[static_cast<std::size_t>(d - m)]; }
};

struct LimitResult {
    int m = 0;
    std::vector<double> k;
    std::vector<double> t; // t_d = k_d / c_d
    std::vector<double> a; // a_d = prod_{i=m}^{d-1} (t_i + alpha) / t_i
    std::vector<double> x; // limit distribution, degrees m..D
    std::vector<double> z; // survival sequence, degrees m..D+1
    double gamma_star = 0.0;
    bool condition6_ok = false;
};

/// gamma* = alpha * (gamma - 1) + 1.
inline double gamma_star(double alpha, double gamma) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ConfigError("gamma_star: alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (!(gamma > 1.0))
        throw ConfigError("gamma_star: gamma must exceed 1, got " + std::to_string(gamma));
    return alpha * (gamma - 1.0) + 1.0;
}

/// Cumulative dominance sequence k_d = sum_{j=m}^{d} (p_j - c_j), evaluated
/// over the support of c. The positivity flag tolerates k_m = 0 -- that
/// boundary equality occurs exactly (c_m = p_m) in the independent-edges
/// model, where the recursions stay well defined because their first
/// denominator is alpha alone. Any interior zero or any negative value
/// marks the sequence as failing.
inline KSequence k_sequence(const DegreeSequence& c, const DegreeSequence& p) {
    KSequence out;
    out.m = c.m;
    out.k.resize(c.values.size());
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        const int d = c.m + static_cast<int>(i);
        const double y = (p.at(d) - c.values[i]) - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
        out.k[i] = s;
    }
    out.condition6_ok = true;
    for (std::size_t i = 0; i < out.k.size(); ++i) {
        const bool bad = (i == 0) ? (out.k[i] < 0.0) : !(out.k[i] > 0.0);
        if (bad) {
            out.condition6_ok = false;
            out.first_violation = c.m + static_cast<int>(i);
            break;
        }
    }
    return out;
}

/// Per-degree cumulative dominance: whether sum p_j >= sum c_j up to d,
/// i.e. k_d >= 0.
inline std::vector<std::uint8_t> dominance_check(const DegreeSequence& c,
                                                 const DegreeSequence& p) {
    const KSequence ks = k_sequence(c, p);
    std::vector<std::uint8_t> ok(ks.k.size());
    for (std::size_t i = 0; i < ks.k.size(); ++i) ok[i] = ks.k[i] >= 0.0 ? 1 : 0;
    return ok;
}

namespace detail {

inline void require_condition6(const KSequence& ks) {
    if (!ks.condition6_ok)
        throw Condition6Error(ks.first_violation,
                              "k_d positivity fails at degree " +
                                  std::to_string(ks.first_violation) +
                                  "; the limit recursion is not applicable");
}

inline std::vector<double> t_ratios(const TheoryInputs& in, const KSequence& ks) {
    std::vector<double> t(ks.k.size());
    for (std::size_t i = 0; i < ks.k.size(); ++i) t[i] = ks.k[i] / in.c.values[i];
    return t;
}

inline double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace detail

/// Limit distribution by the forward recursion
///   x_m = alpha q_m / (alpha + t_m),
///   x_d = (x_{d-1} t_{d-1} + alpha q_d) / (alpha + t_d).
inline std::vector<double> x_recursion(const TheoryInputs& in, const KSequence& ks) {
    detail::require_condition6(ks);
    const std::vector<double> t = detail::t_ratios(in, ks);
    std::vector<double> x(t.size());
    x[0] = in.alpha * in.q.at(in.m) / (in.alpha + t[0]);
    for (std::size_t i = 1; i < t.size(); ++i) {
        const int d = in.m + static_cast<int>(i);
        x[i] = (x[i - 1] * t[i - 1] + in.alpha * in.q.at(d)) / (in.alpha + t[i]);
    }
    return x;
}

/// Survival sequence over degrees m..D+1:
///   z_m = 1,
///   z_d = (z_{d-1} t_{d-1} + alpha * sum_{j>=d} q_j) / (alpha + t_{d-1}).
/// x_d = z_d - z_{d+1} holds, so sum_{d<=D} x_d + z_{D+1} telescopes to 1.
inline std::vector<double> z_recursion(const TheoryInputs& in, const KSequence& ks) {
    detail::require_condition6(ks);
    const std::vector<double> t = detail::t_ratios(in, ks);
    const int d_top = in.m + static_cast<int>(t.size()); // D + 1
    // suffix sums of q over its stored support
    std::vector<double> q_suffix(static_cast<std::size_t>(d_top - in.m) + 1, 0.0);
    {
        double s = 0.0;
        for (int d = in.q.max_degree(); d >= in.m; --d) {
            s += in.q.at(d);
            if (d <= d_top) q_suffix[static_cast<std::size_t>(d - in.m)] = s;
        }
    }
    std::vector<double> z(t.size() + 1);
    z[0] = 1.0;
    for (std::size_t i = 1; i < z.size(); ++i) {
        const double qs = i < q_suffix.size() ? q_suffix[i] : 0.0;
        z[i] = (z[i - 1] * t[i - 1] + in.alpha * qs) / (in.alpha + t[i - 1]);
    }
    return z;
}

/// Limit distribution in closed form,
///   x_d = (a_d (t_d + alpha))^{-1} sum_{i=m}^{d} a_i q_i alpha,
/// with a_d = prod_{i=m}^{d-1} (t_i + alpha)/t_i, evaluated in log space.
/// When t_m = 0 the i = m term carries weight zero for d > m and the
/// products are rebased at m+1.
inline std::vector<double> x_closed_form(const TheoryInputs& in, const KSequence& ks) {
    detail::require_condition6(ks);
    const std::vector<double> t = detail::t_ratios(in, ks);
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> x(t.size());

    const std::size_t base = (t[0] == 0.0) ? 1 : 0;
    if (base == 1) x[0] = in.q.at(in.m); // alpha q_m / (alpha + 0)

    double log_a = 0.0;      // log a_d relative to the base index
    double log_w = neg_inf;  // log sum of a_i q_i over base <= i <= d
    for (std::size_t i = base; i < t.size(); ++i) {
        const int d = in.m + static_cast<int>(i);
        if (i > base) log_a += std::log((t[i - 1] + in.alpha) / t[i - 1]);
        const double q_d = in.q.at(d);
        if (q_d > 0.0) log_w = detail::log_add_exp(log_w, log_a + std::log(q_d));
        x[i] = (log_w == neg_inf)
                   ? 0.0
                   : std::exp(std::log(in.alpha) + log_w - log_a - std::log(t[i] + in.alpha));
    }
    return x;
}

/// a_d as stated (linear scale; infinite from m+1 on when t_m = 0).
inline std::vector<double> a_products(const TheoryInputs& in, const KSequence& ks) {
    const std::vector<double> t = detail::t_ratios(in, ks);
    std::vector<double> a(t.size());
    double log_a = 0.0;
    a[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i - 1] == 0.0 || log_a == std::numeric_limits<double>::infinity()) {
            log_a = std::numeric_limits<double>::infinity();
            a[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        log_a += std::log((t[i - 1] + in.alpha) / t[i - 1]);
        a[i] = std::exp(log_a);
    }
    return a;
}

/// Full limit computation for one set of inputs. gamma is the model's
/// characteristic exponent (used only for gamma*).
inline LimitResult solve_limit(const TheoryInputs& in, double gamma) {
    const KSequence ks = k_sequence(in.c, in.p);
    detail::require_condition6(ks);
    LimitResult out;
    out.m = in.m;
    out.k = ks.k;
    out.t = detail::t_ratios(in, ks);
    out.a = a_products(in, ks);
    out.x = x_recursion(in, ks);
    out.z = z_recursion(in, ks);
    out.gamma_star = gamma_star(in.alpha, gamma);
    out.condition6_ok = ks.condition6_ok;
    return out;
}

// ---------------------------------------------------------------------------
// Base distributions of the worked models
// ---------------------------------------------------------------------------

namespace detail {

/// Least-squares slope of log(value) against log(degree) over [d_lo, d_hi],
/// zero entries skipped. Local helper for tail bounds only.
inline double loglog_slope(const DegreeSequence& seq, int d_lo, int d_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (int d = d_lo; d <= d_hi; ++d) {
        const double v = seq.at(d);
        if (v <= 0.0 || d <= 0) continue;
        const double lx = std::log(static_cast<double>(d));
        const double ly = std::log(v);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = sxx - sx * sx / static_cast<double>(n);
    if (denom <= 0.0) return 0.0;
    return (sxy - sx * sy / static_cast<double>(n)) / denom;
}

} // namespace detail

/// Geometric tail bound for an exponentially decreasing sequence: fit the
/// ratio over the last decade of nonzero entries and sum the geometric
/// series past the truncation.
inline double geometric_tail_bound(const DegreeSequence& seq) {
    const int d_hi = seq.max_degree();
    const int d_lo = seq.m + (d_hi - seq.m) * 9 / 10;
    double log_ratio_sum = 0.0;
    std::size_t pairs = 0;
    for (int d = d_lo; d < d_hi; ++d) {
        const double v0 = seq.at(d), v1 = seq.at(d + 1);
        if (v0 > 0.0 && v1 > 0.0) {
            log_ratio_sum += std::log(v1 / v0);
            ++pairs;
        }
    }
    const double v_end = seq.at(d_hi);
    if (pairs == 0 || v_end <= 0.0) return 0.0;
    const double r = std::exp(log_ratio_sum / static_cast<double>(pairs));
    if (!(r < 1.0)) return v_end; // not decreasing; report one more term
    return v_end * r / (1.0 - r);
}

/// Power tail bound for a polynomially decreasing sequence: fit the
/// exponent over the last decade and integrate past the truncation.
inline double power_tail_bound(const DegreeSequence& seq) {
    const int d_hi = seq.max_degree();
    const double v_end = seq.at(d_hi);
    if (v_end <= 0.0 || d_hi <= 1) return 0.0;
    const double gamma_hat = -detail::loglog_slope(seq, d_hi * 9 / 10, d_hi);
    if (!(gamma_hat > 1.0)) return v_end * d_hi; // fit failed; crude fallback
    return v_end * static_cast<double>(d_hi) / (gamma_hat - 1.0);
}

/// Point mass at d0.
inline DegreeSequence delta_sequence(int d0, int m) {
    DegreeSequence seq;
    seq.m = m;
    seq.values.assign(static_cast<std::size_t>(d0 - m) + 1, 0.0);
    seq.values.back() = 1.0;
    return seq;
}

/// Poisson(lambda) truncated at D (m = 0).
inline DegreeSequence poisson_sequence(double lambda, int d_max) {
    DegreeSequence seq;
    seq.m = 0;
    seq.values.resize(static_cast<std::size_t>(d_max) + 1);
    for (int k = 0; k <= d_max; ++k)
        seq.values[static_cast<std::size_t>(k)] =
            std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
    seq.tail_bound = geometric_tail_bound(seq);
    return seq;
}

/// q_d = p_{d-1}: the selected-initial-degree distribution when selection
/// guarantees exactly one extra edge (neighbour rules in the
/// independent-edges model).
inline DegreeSequence shift_by_one(const DegreeSequence& p) {
    DegreeSequence q = p;
    q.m = p.m + 1;
    return q;
}

/// PORT(beta) asymptotic degree distribution over 1..D,
///   c_d = (2+beta) Gamma(d+beta) Gamma(3+2beta) / (Gamma(1+beta) Gamma(d+3+2beta)),
/// decaying like d^{-(3+beta)}. The Gamma ratios collapse to an exact
/// recurrence, c_1 = (2+beta)/(3+2beta) and
/// c_{d+1} = c_d (d+beta)/(d+3+2beta), which keeps the relative error at
/// O(d * eps) -- much tighter than log-Gamma evaluation, and overflow-free.
inline DegreeSequence port_cd(double beta, int d_max) {
    if (!(beta > -1.0)) throw ConfigError("port_cd: beta must be > -1");
    if (d_max < 1) throw ConfigError("port_cd: D must be >= 1");
    DegreeSequence seq;
    seq.m = 1;
    seq.values.resize(static_cast<std::size_t>(d_max));
    double c = (2.0 + beta) / (3.0 + 2.0 * beta);
    for (int d = 1; d <= d_max; ++d) {
        seq.values[static_cast<std::size_t>(d - 1)] = c;
        c *= (d + beta) / (d + 3.0 + 2.0 * beta);
    }
    seq.tail_bound = power_tail_bound(seq);
    return seq;
}

/// Independent-edges asymptotic degree distribution over 0..D:
///   c_0 = p_0,  c_d = 2 / (d(d+1)(d+2)) * sum_{k=1}^{d} k(k+1) p_k,
/// with p = Poisson(lambda); decays like 2 lambda (2+lambda) d^{-3}.
inline std::pair<DegreeSequence, DegreeSequence> indep_cd(double lambda, int d_max) {
    if (!(lambda > 0.0 && lambda < 2.0))
        throw ConfigError("indep_cd: lambda must lie in (0, 2)");
    if (d_max < 1) throw ConfigError("indep_cd: D must be >= 1");
    DegreeSequence p = poisson_sequence(lambda, d_max);
    DegreeSequence c;
    c.m = 0;
    c.values.resize(static_cast<std::size_t>(d_max) + 1);
    c.values[0] = p.values[0];
    double prefix = 0.0;
    for (int d = 1; d <= d_max; ++d) {
        const double k = static_cast<double>(d);
        prefix += k * (k + 1.0) * p.values[static_cast<std::size_t>(d)];
        c.values[static_cast<std::size_t>(d)] = 2.0 * prefix / (k * (k + 1.0) * (k + 2.0));
    }
    c.tail_bound = power_tail_bound(c);
    return {std::move(c), std::move(p)};
}

} // namespace selgraph
