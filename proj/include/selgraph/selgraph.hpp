#pragma once

// Umbrella header: evolving scale-free graph models, selected-vertex
// accounting, the limit recursions for the restricted degree distribution,
// estimators, and the experiment harness.

#include "selgraph/errors.hpp"
#include "selgraph/estimators.hpp"
#include "selgraph/experiment/conditions.hpp"
#include "selgraph/experiment/config.hpp"
#include "selgraph/experiment/report.hpp"
#include "selgraph/experiment/runner.hpp"
#include "selgraph/experiment/theory_file.hpp"
#include "selgraph/graph_state.hpp"
#include "selgraph/histogram.hpp"
#include "selgraph/models/models.hpp"
#include "selgraph/rng.hpp"
#include "selgraph/selection.hpp"
#include "selgraph/theory.hpp"
