#pragma once

#include <variant>

#include "selgraph/models/indep.hpp"
#include "selgraph/models/multitree.hpp"
#include "selgraph/models/params.hpp"
#include "selgraph/models/port.hpp"

namespace selgraph {

using ModelVariant = std::variant<PortModel, IndepModel, MultitreeModel>;

inline ModelVariant make_model(const ModelParams& params) {
    params.validate();
    switch (params.kind) {
    case ModelKind::Port: return PortModel(params);
    case ModelKind::Multitree: return MultitreeModel(params);
    default: return IndepModel(params);
    }
}

inline const GraphState& model_state(const ModelVariant& model) {
    return std::visit([](const auto& m) -> const GraphState& { return m.state(); }, model);
}

inline StepOutcome model_propose(ModelVariant& model, Rng& rng) {
    return std::visit([&](auto& m) { return m.propose(rng); }, model);
}

inline void model_commit(ModelVariant& model, const StepOutcome& outcome, bool selected) {
    std::visit([&](auto& m) { m.commit(outcome, selected); }, model);
}

/// Number of vertices in the model's initial configuration.
inline std::size_t initial_vertex_count(const ModelParams& params) {
    switch (params.kind) {
    case ModelKind::Port: return 2;
    case ModelKind::Indep: return 2;
    case ModelKind::DegreeOneFrozen: return 4;
    case ModelKind::Multitree: return static_cast<std::size_t>(params.m_arity);
    }
    return 0;
}

} // namespace selgraph
