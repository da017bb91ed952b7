#pragma once

#include <string>

#include "selgraph/errors.hpp"

namespace selgraph {

enum class ModelKind {
    Port,           // generalized plane-oriented recursive tree, weight deg + beta
    Indep,          // independent edges, inclusion probability lambda*deg/T
    Multitree,      // M-multicherry hypergraph evolution
    DegreeOneFrozen // independent edges, but degree<=1 vertices never attach
};

struct ModelParams {
    ModelKind kind = ModelKind::Port;
    double beta = 0.0;   // Port: beta > -1
    double lambda = 1.0; // Indep / DegreeOneFrozen: 0 < lambda < 2
    int m_arity = 2;     // Multitree: M >= 2

    /// Minimal initial degree of a new vertex in this model.
    int minimal_degree() const {
        switch (kind) {
        case ModelKind::Port: return 1;
        case ModelKind::Multitree: return m_arity;
        default: return 0;
        }
    }

    void validate() const {
        switch (kind) {
        case ModelKind::Port:
            if (!(beta > -1.0))
                throw ConfigError("port: beta must be > -1, got " + std::to_string(beta));
            break;
        case ModelKind::Indep:
        case ModelKind::DegreeOneFrozen:
            if (!(lambda > 0.0 && lambda < 2.0))
                throw ConfigError("indep: lambda must lie in (0, 2), got " +
                                  std::to_string(lambda));
            break;
        case ModelKind::Multitree:
            if (m_arity < 2)
                throw ConfigError("multitree: M must be an integer >= 2, got " +
                                  std::to_string(m_arity));
            break;
        }
    }

    std::string name() const {
        switch (kind) {
        case ModelKind::Port: return "port";
        case ModelKind::Indep: return "indep";
        case ModelKind::Multitree: return "multitree";
        case ModelKind::DegreeOneFrozen: return "frozen";
        }
        return "?";
    }
};

} // namespace selgraph
