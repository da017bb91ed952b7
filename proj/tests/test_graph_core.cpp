#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "selgraph/selgraph.hpp"

using namespace selgraph;

namespace {

ModelParams port_params(double beta = 0.0) {
    ModelParams p;
    p.kind = ModelKind::Port;
    p.beta = beta;
    return p;
}

ModelParams indep_params(double lambda = 1.0) {
    ModelParams p;
    p.kind = ModelKind::Indep;
    p.lambda = lambda;
    return p;
}

ModelParams multitree_params(int m) {
    ModelParams p;
    p.kind = ModelKind::Multitree;
    p.m_arity = m;
    return p;
}

ModelParams frozen_params(double lambda = 1.0) {
    ModelParams p;
    p.kind = ModelKind::DegreeOneFrozen;
    p.lambda = lambda;
    return p;
}

/// Brute-force recount of the histogram from the stored degree sequence.
std::vector<std::int64_t> recount(const GraphState& state) {
    std::vector<std::int64_t> counts;
    for (const auto d : state.degrees) {
        if (d >= counts.size()) counts.resize(d + 1, 0);
        ++counts[d];
    }
    return counts;
}

void require_matches_recount(const GraphState& state) {
    const auto fresh = recount(state);
    for (std::size_t d = 0; d < std::max(fresh.size(), state.histogram.counts().size()); ++d) {
        const std::int64_t expect = d < fresh.size() ? fresh[d] : 0;
        REQUIRE(state.histogram.at(static_cast<std::uint32_t>(d)) == expect);
    }
}

} // namespace

TEST_CASE("initial configurations") {
    SECTION("port starts from one edge") {
        PortModel model(port_params(0.0));
        REQUIRE(model.state().vertex_count() == 2);
        REQUIRE(model.state().degrees == std::vector<std::uint32_t>{1, 1});
        REQUIRE(model.state().edge_count == 1);
        REQUIRE(model.level_of(0) == 0);
        REQUIRE(model.level_of(1) == 1);
    }
    SECTION("multitree starts from the complete graph on M vertices") {
        MultitreeModel model(multitree_params(3));
        REQUIRE(model.state().vertex_count() == 3);
        REQUIRE(model.state().degrees == std::vector<std::uint32_t>{2, 2, 2});
        REQUIRE(model.base_count() == 1);
        REQUIRE(model.state().edge_count == 3);
    }
    SECTION("indep starts from one edge with degree sum 2") {
        IndepModel model(indep_params(1.0));
        REQUIRE(model.state().degrees == std::vector<std::uint32_t>{1, 1});
        REQUIRE(model.normalizer() == 2.0);
    }
    SECTION("frozen starts from a path so the normalizer is positive") {
        IndepModel model(frozen_params(1.0));
        REQUIRE(model.state().degrees == std::vector<std::uint32_t>{1, 2, 2, 1});
        REQUIRE(model.normalizer() == 4.0);
    }
    SECTION("parameters outside their legal ranges are rejected") {
        REQUIRE_THROWS_AS(PortModel(port_params(-1.0)), ConfigError);
        REQUIRE_THROWS_AS(IndepModel(indep_params(0.0)), ConfigError);
        REQUIRE_THROWS_AS(IndepModel(indep_params(2.0)), ConfigError);
        REQUIRE_THROWS_AS(MultitreeModel(multitree_params(1)), ConfigError);
        REQUIRE_THROWS_WITH(PortModel(port_params(-1.5)),
                            Catch::Matchers::ContainsSubstring("-1"));
    }
}

TEST_CASE("apply_outcome updates degrees, histogram and edge count") {
    SECTION("single deterministic update on the initial tree") {
        GraphState state;
        state.add_initial_vertex(1);
        state.add_initial_vertex(1);
        state.edge_count = 1;
        StepOutcome out;
        out.new_vertex = 2;
        out.endpoints = {0};
        apply_outcome(state, out);
        REQUIRE(state.degrees == std::vector<std::uint32_t>{2, 1, 1});
        REQUIRE(state.histogram.at(1) == 2);
        REQUIRE(state.histogram.at(2) == 1);
        REQUIRE(state.edge_count == 2);
        REQUIRE(state.n == 1);
    }
    SECTION("empty endpoint list adds an isolated vertex") {
        GraphState state;
        state.add_initial_vertex(1);
        state.add_initial_vertex(1);
        state.edge_count = 1;
        StepOutcome out;
        out.new_vertex = 2;
        apply_outcome(state, out);
        REQUIRE(state.degrees[2] == 0);
        REQUIRE(state.histogram.at(0) == 1);
        REQUIRE(state.edge_count == 1);
    }
    SECTION("multitree M=2 base update") {
        GraphState state;
        state.add_initial_vertex(1);
        state.add_initial_vertex(1);
        state.edge_count = 1;
        StepOutcome out;
        out.new_vertex = 2;
        out.endpoints = {0, 1};
        apply_outcome(state, out);
        REQUIRE(state.degrees == std::vector<std::uint32_t>{2, 2, 2});
        REQUIRE(state.histogram.at(2) == 3);
    }
    SECTION("duplicate and dangling endpoints abort") {
        GraphState state;
        state.add_initial_vertex(1);
        state.add_initial_vertex(1);
        state.edge_count = 1;
        StepOutcome dup;
        dup.new_vertex = 2;
        dup.endpoints = {1, 1};
        REQUIRE_THROWS_AS(apply_outcome(state, dup), InvariantError);
        StepOutcome dangling;
        dangling.new_vertex = 2;
        dangling.endpoints = {5};
        REQUIRE_THROWS_AS(apply_outcome(state, dangling), InvariantError);
    }
}

TEST_CASE("snapshot copies both histograms") {
    ModelVariant model = make_model(port_params(0.0));
    SelectionRule all;
    all.kind = RuleKind::All;
    SelectionState sel = init_selection(all, model);
    const Checkpoint cp = snapshot(model_state(model), sel);
    REQUIRE(cp.n == 0);
    REQUIRE(cp.x == std::vector<std::int64_t>{0, 2});
    REQUIRE(cp.x_star == std::vector<std::int64_t>{0, 2});
    REQUIRE(cp.s_size == 2);

    std::int64_t total = 0;
    for (const auto v : cp.x_star) total += v;
    REQUIRE(total == static_cast<std::int64_t>(cp.s_size));
}

TEST_CASE("histogram equals a brute-force recount along full runs") {
    struct Case {
        ModelParams params;
        RuleKind rule;
    };
    const Case cases[] = {
        {port_params(0.0), RuleKind::All},
        {port_params(1.5), RuleKind::All},
        {indep_params(1.0), RuleKind::NeighborsOf},
        {multitree_params(3), RuleKind::All},
        {frozen_params(1.2), RuleKind::DegreeOneAtBirth},
    };
    for (const auto& c : cases) {
        ModelVariant model = make_model(c.params);
        SelectionRule rule;
        rule.kind = c.rule;
        SelectionState sel = init_selection(rule, model);
        Rng rng(0xABCDEF ^ static_cast<std::uint64_t>(c.params.kind));
        std::vector<std::uint32_t> previous_degrees = model_state(model).degrees;
        for (int step = 1; step <= 10000; ++step) {
            advance(model, sel, rng);
            if ((step & (step - 1)) == 0 || step == 10000) { // powers of two
                const GraphState& state = model_state(model);
                verify_counts(state);
                require_matches_recount(state);
                REQUIRE(state.histogram.total() ==
                        static_cast<std::int64_t>(state.initial_vertices + state.n));
                // degrees never decrease
                for (std::size_t v = 0; v < previous_degrees.size(); ++v)
                    REQUIRE(state.degrees[v] >= previous_degrees[v]);
                previous_degrees = state.degrees;
            }
        }
    }
}
