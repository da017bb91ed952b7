#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "selgraph/errors.hpp"
#include "selgraph/histogram.hpp"

namespace selgraph {

/// Vertices are numbered in creation order: the initial configuration
/// occupies 0..|V0|-1 and the vertex added at step n gets index |V0|+n-1.
/// Indices are dense and never reused.
using VertexId = std::uint32_t;

/// Result of one evolution step, produced by a model before it is applied.
/// `endpoints` are the existing vertices that receive an edge from the new
/// vertex; they must be distinct. `level` is the model's distance label for
/// the new vertex (tree depth / multitree distance), 0 where undefined.
struct StepOutcome {
    VertexId new_vertex = 0;
    std::vector<VertexId> endpoints;
    std::uint32_t level = 0;
    std::uint32_t clamp_events = 0;
};

/// Evolving graph state shared by every model: exact degree accounting only.
/// Adjacency is not stored here; models keep whatever auxiliary structure
/// they need (parent pointers, base tuples, degree-class pools).
struct GraphState {
    std::uint64_t n = 0; // steps applied so far
    std::vector<std::uint32_t> degrees;
    DegreeHistogram histogram;
    std::uint64_t edge_count = 0;
    std::size_t initial_vertices = 0;

    std::size_t vertex_count() const { return degrees.size(); }

    void add_initial_vertex(std::uint32_t degree) {
        degrees.push_back(degree);
        histogram.add(degree);
        ++initial_vertices;
    }
};

/// Snapshot persisted at scheduled steps: full and restricted histograms
/// plus the selected-set size. Immutable once taken.
struct Checkpoint {
    std::uint64_t n = 0;
    std::vector<std::int64_t> x;      // X[n, d] indexed by d
    std::vector<std::int64_t> x_star; // X*[n, d] indexed by d
    std::uint64_t s_size = 0;
    std::uint64_t vertex_count = 0;
};

/// Apply a step outcome: add the new vertex with degree |endpoints|,
/// give each endpoint one more edge, shift the histogram accordingly.
inline void apply_outcome(GraphState& state, const StepOutcome& outcome) {
    const std::size_t v = state.vertex_count();
    if (outcome.new_vertex != static_cast<VertexId>(v))
        throw InvariantError("step outcome has stale vertex id");
    for (std::size_t i = 0; i < outcome.endpoints.size(); ++i) {
        const VertexId e = outcome.endpoints[i];
        if (e >= v)
            throw InvariantError("endpoint " + std::to_string(e) + " does not exist");
        for (std::size_t j = i + 1; j < outcome.endpoints.size(); ++j)
            if (outcome.endpoints[j] == e)
                throw InvariantError("duplicate endpoint " + std::to_string(e));
    }
    for (const VertexId e : outcome.endpoints) {
        state.histogram.shift_up(state.degrees[e]);
        ++state.degrees[e];
    }
    const auto d0 = static_cast<std::uint32_t>(outcome.endpoints.size());
    state.degrees.push_back(d0);
    state.histogram.add(d0);
    state.edge_count += outcome.endpoints.size();
    ++state.n;
}

/// Consistency checks that are cheap enough to run at every checkpoint.
inline void verify_counts(const GraphState& state) {
    const auto total = state.histogram.total();
    if (total != static_cast<std::int64_t>(state.vertex_count()))
        throw InvariantError("histogram total " + std::to_string(total) +
                             " != vertex count " + std::to_string(state.vertex_count()));
    const auto weighted = state.histogram.weighted_total();
    if (weighted != static_cast<std::int64_t>(2 * state.edge_count))
        throw InvariantError("degree sum " + std::to_string(weighted) +
                             " != 2 * edge count");
}

} // namespace selgraph
