#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "selgraph/graph_state.hpp"
#include "selgraph/models/params.hpp"
#include "selgraph/rng.hpp"

namespace selgraph {

/// Independent-edges model: at each step every old vertex is connected to
/// the new one independently with probability lambda * deg / T, where T is
/// the degree sum of the previous graph. The new vertex may end up with
/// degree 0.
///
/// The frozen variant never attaches to vertices of degree 1 (or 0) and
/// normalizes by T' = sum over d >= 2 of d * X[d]. It starts from a path on
/// four vertices: a single-edge start would leave T' = 0 forever, and with
/// fewer than two eligible vertices no newcomer could ever reach degree 2,
/// freezing the whole graph.
///
/// Per-step work is O(#distinct degrees + #tracked vertices): untracked
/// vertices are realized per degree class with one binomial draw of the
/// class count followed by a uniform choice of members, while the fixed
/// target and all selected vertices are tracked individually with their own
/// Bernoulli draws.
class IndepModel {
public:
    explicit IndepModel(const ModelParams& params)
        : lambda_(params.lambda), frozen_(params.kind == ModelKind::DegreeOneFrozen) {
        params.validate();
        if (frozen_) {
            // path u1 - u2 - u3 - u4
            state_.add_initial_vertex(1);
            state_.add_initial_vertex(2);
            state_.add_initial_vertex(2);
            state_.add_initial_vertex(1);
            state_.edge_count = 3;
            t_prime_ = 4; // the two degree-2 vertices count
        } else {
            state_.add_initial_vertex(1);
            state_.add_initial_vertex(1);
            state_.edge_count = 1;
        }
        pools_.resize(3);
        for (VertexId v = 0; v < state_.vertex_count(); ++v)
            pools_[state_.degrees[v]].push_back(v);
    }

    /// Move an initial vertex out of the class pools into the individually
    /// tracked set. Must be called before the first step (used for the
    /// fixed target of a neighbour rule and for the members of S0).
    void track(VertexId v) {
        auto& pool = pools_[state_.degrees[v]];
        auto it = std::find(pool.begin(), pool.end(), v);
        if (it == pool.end()) return; // already tracked
        pool.erase(it);
        if (weight(state_.degrees[v]) > 0.0) tracked_active_.push_back(v);
    }

    StepOutcome propose(Rng& rng) {
        const double t = normalizer();
        if (!(t > 0.0))
            throw InvariantError("indep: attachment normalizer is not positive");
        StepOutcome out;
        out.new_vertex = static_cast<VertexId>(state_.vertex_count());

        // Degree classes, ascending. Pool sizes stay fixed during the draw
        // pass; chosen members are swapped to the tail of their pool and the
        // actual d -> d+1 moves happen afterwards (descending, so a pool's
        // own chosen tail is consumed before newcomers are appended).
        class_draws_.clear();
        const std::uint32_t d_lo = frozen_ ? 2 : 1;
        for (std::uint32_t d = d_lo; d < pools_.size(); ++d) {
            auto& pool = pools_[d];
            if (pool.empty()) continue;
            double p = lambda_ * static_cast<double>(d) / t;
            if (p > 1.0) {
                p = 1.0;
                ++out.clamp_events;
            }
            const auto k = static_cast<std::size_t>(rng.binomial(pool.size(), p));
            if (k == 0) continue;
            const std::size_t sb = pool.size();
            for (std::size_t j = 0; j < k; ++j) {
                const std::size_t idx = rng.below(sb - j);
                std::swap(pool[idx], pool[sb - 1 - j]);
                out.endpoints.push_back(pool[sb - 1 - j]);
            }
            class_draws_.push_back({d, k});
        }
        for (std::size_t i = class_draws_.size(); i-- > 0;) {
            const auto [d, k] = class_draws_[i];
            if (d + 2 > pools_.size()) pools_.resize(d + 2);
            auto& pool = pools_[d];
            auto& up = pools_[d + 1];
            up.insert(up.end(), pool.end() - static_cast<std::ptrdiff_t>(k), pool.end());
            pool.resize(pool.size() - k);
        }

        for (const VertexId v : tracked_active_) {
            double p = lambda_ * weight(state_.degrees[v]) / t;
            if (p > 1.0) {
                p = 1.0;
                ++out.clamp_events;
            }
            if (rng.bernoulli(p)) out.endpoints.push_back(v);
        }
        clamp_events_ += out.clamp_events;
        return out;
    }

    void commit(const StepOutcome& outcome, bool selected) {
        if (frozen_) {
            // T' tracks sum over d >= 2 of d * X[d]
            for (const VertexId e : outcome.endpoints) {
                const auto d_old = state_.degrees[e];
                if (d_old >= 2) t_prime_ += 1;
                else if (d_old == 1) t_prime_ += 2; // enters the eligible class
            }
            const auto d0 = outcome.endpoints.size();
            if (d0 >= 2) t_prime_ += d0;
        }
        apply_outcome(state_, outcome);
        const VertexId v = outcome.new_vertex;
        const auto d0 = static_cast<std::uint32_t>(outcome.endpoints.size());
        if (selected) {
            if (weight(d0) > 0.0) tracked_active_.push_back(v);
        } else {
            if (d0 + 1 > pools_.size()) pools_.resize(d0 + 1);
            pools_[d0].push_back(v);
        }
    }

    const GraphState& state() const { return state_; }
    bool frozen() const { return frozen_; }
    double lambda() const { return lambda_; }
    std::uint64_t clamp_events() const { return clamp_events_; }

    /// Current attachment normalizer (T, or T' in the frozen variant).
    double normalizer() const {
        return frozen_ ? static_cast<double>(t_prime_)
                       : static_cast<double>(2 * state_.edge_count);
    }

    /// Recount the class pools and tracked set against the histogram.
    void verify_aux(const std::vector<std::uint8_t>& tracked_mark) const {
        std::vector<std::int64_t> counted(state_.histogram.counts().size(), 0);
        for (std::uint32_t d = 0; d < pools_.size(); ++d)
            for (const VertexId v : pools_[d]) {
                if (state_.degrees[v] != d)
                    throw InvariantError("pool member with stale degree");
                if (tracked_mark[v])
                    throw InvariantError("tracked vertex found in a class pool");
                ++counted[d];
            }
        for (VertexId v = 0; v < state_.vertex_count(); ++v)
            if (tracked_mark[v]) ++counted[state_.degrees[v]];
        for (std::size_t d = 0; d < counted.size(); ++d)
            if (counted[d] != state_.histogram.at(static_cast<std::uint32_t>(d)))
                throw InvariantError("class registry disagrees with histogram at degree " +
                                     std::to_string(d));
        if (frozen_) {
            std::int64_t tp = 0;
            const auto& counts = state_.histogram.counts();
            for (std::size_t d = 2; d < counts.size(); ++d)
                tp += static_cast<std::int64_t>(d) * counts[d];
            if (tp != static_cast<std::int64_t>(t_prime_))
                throw InvariantError("frozen normalizer out of sync");
        }
    }

private:
    double weight(std::uint32_t degree) const {
        if (frozen_ && degree < 2) return 0.0;
        return static_cast<double>(degree);
    }

    GraphState state_;
    double lambda_;
    bool frozen_;
    std::uint64_t t_prime_ = 0;
    std::uint64_t clamp_events_ = 0;
    std::vector<std::vector<VertexId>> pools_; // untracked vertices by degree
    std::vector<VertexId> tracked_active_;     // tracked vertices with positive weight
    std::vector<std::pair<std::uint32_t, std::size_t>> class_draws_;
};

} // namespace selgraph
