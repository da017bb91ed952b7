#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "selgraph/graph_state.hpp"
#include "selgraph/models/params.hpp"
#include "selgraph/rng.hpp"

namespace selgraph {

/// Random M-multitree. Starts from the complete graph on M vertices, whose
/// vertex set forms the single initial base. Each step picks a base
/// uniformly, attaches the new vertex to all of its M members, and appends
/// M new bases obtained by replacing one member of the chosen base with the
/// new vertex. The chosen base is kept, so the base count is 1 + n*M.
class MultitreeModel {
public:
    explicit MultitreeModel(const ModelParams& params)
        : m_(static_cast<std::uint32_t>(params.m_arity)) {
        params.validate();
        for (std::uint32_t v = 0; v < m_; ++v) {
            state_.add_initial_vertex(m_ - 1);
            bases_.push_back(v);
            dist_.push_back(0);
        }
        state_.edge_count = static_cast<std::uint64_t>(m_) * (m_ - 1) / 2;
    }

    StepOutcome propose(Rng& rng) {
        const std::uint64_t base = rng.below(base_count());
        StepOutcome out;
        out.new_vertex = static_cast<VertexId>(state_.vertex_count());
        out.endpoints.assign(bases_.begin() + static_cast<std::ptrdiff_t>(base * m_),
                             bases_.begin() + static_cast<std::ptrdiff_t>((base + 1) * m_));
        std::uint32_t min_dist = dist_[out.endpoints[0]];
        for (const VertexId v : out.endpoints) min_dist = std::min(min_dist, dist_[v]);
        out.level = min_dist + 1;
        return out;
    }

    void commit(const StepOutcome& outcome, bool /*selected*/) {
        apply_outcome(state_, outcome);
        // M new bases: the chosen base with each position replaced in turn
        for (std::uint32_t i = 0; i < m_; ++i) {
            for (std::uint32_t j = 0; j < m_; ++j)
                bases_.push_back(i == j ? outcome.new_vertex : outcome.endpoints[j]);
        }
        dist_.push_back(outcome.level);
    }

    const GraphState& state() const { return state_; }
    std::uint32_t arity() const { return m_; }
    std::uint64_t base_count() const { return bases_.size() / m_; }
    std::uint32_t level_of(VertexId v) const { return dist_[v]; }

    void verify_aux() const {
        if (base_count() != 1 + state_.n * m_)
            throw InvariantError("base count is not 1 + n*M");
    }

private:
    GraphState state_;
    std::uint32_t m_;
    std::vector<VertexId> bases_; // flat, M entries per base
    std::vector<std::uint32_t> dist_; // distance from the initial configuration
};

} // namespace selgraph
