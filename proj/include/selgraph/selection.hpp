#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "selgraph/errors.hpp"
#include "selgraph/graph_state.hpp"
#include "selgraph/histogram.hpp"
#include "selgraph/models/models.hpp"

namespace selgraph {

enum class RuleKind {
    All,              // every vertex is selected (alpha = 1 sanity case)
    LevelJ,           // vertices at distance j from the root / initial configuration
    NeighborsOf,      // neighbours of a fixed initial vertex
    ConnectedToAll,   // multitree: vertices adjacent to every member of a fixed set
    DegreeOneAtBirth  // frozen counterexample: vertices whose initial degree is 1
};

struct SelectionRule {
    RuleKind kind = RuleKind::All;
    std::uint32_t j = 1;            // LevelJ
    VertexId target = 0;            // NeighborsOf
    std::vector<VertexId> fixed;    // ConnectedToAll

    std::string name() const {
        switch (kind) {
        case RuleKind::All: return "all";
        case RuleKind::LevelJ: return "level";
        case RuleKind::NeighborsOf: return "neighbors";
        case RuleKind::ConnectedToAll: return "connected_to_all";
        case RuleKind::DegreeOneAtBirth: return "degree_one";
        }
        return "?";
    }
};

/// Model/rule compatibility is validated eagerly, at configuration time.
inline void validate_rule(const SelectionRule& rule, const ModelParams& params) {
    const std::size_t v0 = initial_vertex_count(params);
    switch (rule.kind) {
    case RuleKind::All:
        return;
    case RuleKind::LevelJ:
        if (params.kind != ModelKind::Port && params.kind != ModelKind::Multitree)
            throw ConfigError("level rule requires a tree or multitree model");
        if (rule.j < 1) throw ConfigError("level rule requires j >= 1");
        return;
    case RuleKind::NeighborsOf:
        if (rule.target >= v0)
            throw ConfigError("neighbors rule: target " + std::to_string(rule.target) +
                              " is not an initial vertex");
        return;
    case RuleKind::ConnectedToAll: {
        if (params.kind != ModelKind::Multitree)
            throw ConfigError("connected_to_all rule requires the multitree model");
        if (rule.fixed.empty() ||
            rule.fixed.size() >= static_cast<std::size_t>(params.m_arity))
            throw ConfigError("connected_to_all rule requires 1 <= |F| < M");
        auto sorted = rule.fixed;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ConfigError("connected_to_all rule: duplicate fixed vertex");
        if (sorted.back() >= v0)
            throw ConfigError("connected_to_all rule: fixed vertices must be initial");
        return;
    }
    case RuleKind::DegreeOneAtBirth:
        if (params.kind != ModelKind::DegreeOneFrozen)
            throw ConfigError("degree_one rule is only meaningful for the frozen model");
        return;
    }
}

/// Membership of S_n and the restricted histogram X*[n, .]. Membership is
/// decided once, when the vertex appears, and never revoked.
class SelectionState {
public:
    SelectionState(SelectionRule rule, std::size_t initial_vertices)
        : rule_(std::move(rule)), member_(initial_vertices, 0) {}

    /// Decide whether the new vertex is selected, using only the freshly
    /// produced outcome (its edges and distance label).
    bool classify(const StepOutcome& outcome) const {
        switch (rule_.kind) {
        case RuleKind::All:
            return true;
        case RuleKind::LevelJ:
            return outcome.level == rule_.j;
        case RuleKind::NeighborsOf:
            return std::find(outcome.endpoints.begin(), outcome.endpoints.end(),
                             rule_.target) != outcome.endpoints.end();
        case RuleKind::ConnectedToAll:
            return std::all_of(rule_.fixed.begin(), rule_.fixed.end(), [&](VertexId f) {
                return std::find(outcome.endpoints.begin(), outcome.endpoints.end(), f) !=
                       outcome.endpoints.end();
            });
        case RuleKind::DegreeOneAtBirth:
            return outcome.endpoints.size() == 1;
        }
        return false;
    }

    /// Shift X* for the selected endpoints (using their pre-step degrees)
    /// and account for the new vertex. Runs once per step, immediately
    /// before the outcome is applied to the graph state.
    void apply_step(const StepOutcome& outcome, bool selected,
                    const std::vector<std::uint32_t>& degrees) {
        for (const VertexId e : outcome.endpoints)
            if (member_[e]) x_star_.shift_up(degrees[e]);
        member_.push_back(selected ? 1 : 0);
        if (selected) {
            x_star_.add(static_cast<std::uint32_t>(outcome.endpoints.size()));
            ++s_size_;
        }
    }

    bool is_member(VertexId v) const { return member_[v] != 0; }
    const std::vector<std::uint8_t>& members() const { return member_; }
    const DegreeHistogram& x_star() const { return x_star_; }
    std::uint64_t s_size() const { return s_size_; }
    const SelectionRule& rule() const { return rule_; }

    /// Recount X* from scratch; throws if the incremental histogram drifted.
    void verify(const std::vector<std::uint32_t>& degrees) const {
        DegreeHistogram fresh;
        std::uint64_t s = 0;
        for (VertexId v = 0; v < member_.size(); ++v)
            if (member_[v]) {
                fresh.add(degrees[v]);
                ++s;
            }
        if (s != s_size_) throw InvariantError("selected-set size out of sync");
        const auto dmax = std::max(fresh.max_degree(), x_star_.max_degree());
        for (std::uint32_t d = 0; d <= dmax; ++d)
            if (fresh.at(d) != x_star_.at(d))
                throw InvariantError("X* recount mismatch at degree " + std::to_string(d));
    }

private:
    friend SelectionState init_selection(const SelectionRule&, ModelVariant&);

    void select_initial(VertexId v, std::uint32_t degree) {
        member_[v] = 1;
        ++s_size_;
        x_star_.add(degree);
    }

    SelectionRule rule_;
    std::vector<std::uint8_t> member_;
    DegreeHistogram x_star_;
    std::uint64_t s_size_ = 0;
};

/// Build S0 for the rule and register the tracked vertices with the model
/// where it needs them (independent-edges bookkeeping).
///
/// Pinned choices: LevelJ starts from the initial vertices at the given
/// level (PORT: u1 at depth 0, u2 at depth 1; multitree initials are all at
/// distance 0). NeighborsOf starts from the target's neighbours in G0.
/// ConnectedToAll starts from V0 minus the fixed set. DegreeOneAtBirth
/// starts from the initial vertices of degree 1.
inline SelectionState init_selection(const SelectionRule& rule, ModelVariant& model) {
    const GraphState& state = model_state(model);
    const auto v0 = static_cast<VertexId>(state.initial_vertices);
    SelectionState sel(rule, v0);

    auto initial_level = [&](VertexId v) -> std::uint32_t {
        if (const auto* port = std::get_if<PortModel>(&model)) return port->level_of(v);
        if (const auto* mt = std::get_if<MultitreeModel>(&model)) return mt->level_of(v);
        return 0;
    };
    auto neighbors_in_g0 = [&](VertexId t) {
        std::vector<VertexId> result;
        if (std::holds_alternative<MultitreeModel>(model)) {
            for (VertexId v = 0; v < v0; ++v)
                if (v != t) result.push_back(v);
        } else if (const auto* indep = std::get_if<IndepModel>(&model);
                   indep != nullptr && indep->frozen()) {
            // path 0 - 1 - 2 - 3
            if (t > 0) result.push_back(t - 1);
            if (t + 1 < v0) result.push_back(t + 1);
        } else {
            result = {t == 0 ? VertexId{1} : VertexId{0}};
        }
        return result;
    };

    switch (rule.kind) {
    case RuleKind::All:
        for (VertexId v = 0; v < v0; ++v) sel.select_initial(v, state.degrees[v]);
        break;
    case RuleKind::LevelJ:
        for (VertexId v = 0; v < v0; ++v)
            if (initial_level(v) == rule.j) sel.select_initial(v, state.degrees[v]);
        break;
    case RuleKind::NeighborsOf:
        for (const VertexId v : neighbors_in_g0(rule.target))
            sel.select_initial(v, state.degrees[v]);
        break;
    case RuleKind::ConnectedToAll:
        for (VertexId v = 0; v < v0; ++v)
            if (std::find(rule.fixed.begin(), rule.fixed.end(), v) == rule.fixed.end())
                sel.select_initial(v, state.degrees[v]);
        break;
    case RuleKind::DegreeOneAtBirth:
        for (VertexId v = 0; v < v0; ++v)
            if (state.degrees[v] == 1) sel.select_initial(v, state.degrees[v]);
        break;
    }

    if (auto* indep = std::get_if<IndepModel>(&model)) {
        for (VertexId v = 0; v < v0; ++v)
            if (sel.is_member(v)) indep->track(v);
        if (rule.kind == RuleKind::NeighborsOf) indep->track(rule.target);
    }
    return sel;
}

struct StepRecord {
    StepOutcome outcome;
    bool selected = false;
};

/// One full evolution step: propose, classify, update X*, commit.
inline StepRecord advance(ModelVariant& model, SelectionState& selection, Rng& rng) {
    StepOutcome outcome = model_propose(model, rng);
    const bool selected = selection.classify(outcome);
    selection.apply_step(outcome, selected, model_state(model).degrees);
    model_commit(model, outcome, selected);
    return {std::move(outcome), selected};
}

/// Deep copy of both histograms plus n and |S_n|.
inline Checkpoint snapshot(const GraphState& state, const SelectionState& selection) {
    Checkpoint cp;
    cp.n = state.n;
    cp.x = state.histogram.counts();
    cp.x_star = selection.x_star().counts();
    cp.s_size = selection.s_size();
    cp.vertex_count = state.vertex_count();
    return cp;
}

} // namespace selgraph
