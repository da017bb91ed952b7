#pragma once

#include <cstdint>
#include <vector>

#include "selgraph/graph_state.hpp"
#include "selgraph/models/params.hpp"
#include "selgraph/rng.hpp"

namespace selgraph {

/// Generalized plane-oriented recursive tree. Starts from one edge
/// (u1 at depth 0, u2 at depth 1); each step attaches one new vertex to an
/// existing vertex chosen with probability proportional to degree + beta.
///
/// Sampling is O(1) amortized. A flat list holds both ends of every edge,
/// so a uniform list entry is degree-proportional. For beta >= 0 a mixture
/// with a uniform vertex yields weight deg + beta exactly; for
/// -1 < beta < 0 a degree-proportional proposal is thinned by rejection
/// with acceptance (deg + beta)/deg. Either way the effective normalizer
/// is the exact sum of (deg + beta) over existing vertices.
class PortModel {
public:
    explicit PortModel(const ModelParams& params) : beta_(params.beta) {
        params.validate();
        state_.add_initial_vertex(1);
        state_.add_initial_vertex(1);
        state_.edge_count = 1;
        endpoint_list_ = {0, 1};
        parent_ = {0, 0};
        depth_ = {0, 1};
    }

    StepOutcome propose(Rng& rng) {
        const VertexId pick = sample_attachment(rng);
        StepOutcome out;
        out.new_vertex = static_cast<VertexId>(state_.vertex_count());
        out.endpoints = {pick};
        out.level = depth_[pick] + 1;
        return out;
    }

    void commit(const StepOutcome& outcome, bool /*selected*/) {
        apply_outcome(state_, outcome);
        const VertexId parent = outcome.endpoints.front();
        endpoint_list_.push_back(parent);
        endpoint_list_.push_back(outcome.new_vertex);
        parent_.push_back(parent);
        depth_.push_back(outcome.level);
    }

    const GraphState& state() const { return state_; }
    std::uint32_t level_of(VertexId v) const { return depth_[v]; }
    VertexId parent_of(VertexId v) const { return parent_[v]; }
    double beta() const { return beta_; }

private:
    VertexId sample_attachment(Rng& rng) {
        const auto n_vertices = static_cast<double>(state_.vertex_count());
        const auto list_len = static_cast<double>(endpoint_list_.size()); // 2|E|
        if (beta_ >= 0.0) {
            if (beta_ > 0.0 && rng.u01() * (list_len + beta_ * n_vertices) < beta_ * n_vertices)
                return static_cast<VertexId>(rng.below(state_.vertex_count()));
            return endpoint_list_[rng.below(endpoint_list_.size())];
        }
        for (;;) {
            const VertexId cand = endpoint_list_[rng.below(endpoint_list_.size())];
            const double d = state_.degrees[cand];
            if (rng.u01() * d < d + beta_) return cand;
        }
    }

    GraphState state_;
    double beta_;
    std::vector<VertexId> endpoint_list_; // each edge contributes both ends
    std::vector<VertexId> parent_;
    std::vector<std::uint32_t> depth_; // distance from u1
};

} // namespace selgraph
