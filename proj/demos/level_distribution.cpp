// Minimal end-to-end example without the CLI: evolve the Albert-Barabasi
// tree, restrict the degree distribution to the first level, and print the
// empirical frequencies next to the limit values x_d = 1/(d(d+1)).

#include <cstdio>

#include "selgraph/selgraph.hpp"

int main() {
    using namespace selgraph;

    ModelParams params;
    params.kind = ModelKind::Port;
    params.beta = 0.0;

    SelectionRule rule;
    rule.kind = RuleKind::LevelJ;
    rule.j = 1;

    Rng rng(20240801);
    ModelVariant model = make_model(params);
    SelectionState selection = init_selection(rule, model);
    for (int step = 0; step < 200000; ++step) advance(model, selection, rng);

    const Checkpoint cp = snapshot(model_state(model), selection);
    const DegreeSequence x_hat = empirical_x(cp);

    TheoryInputs inputs;
    inputs.m = 1;
    inputs.alpha = 0.5; // level sets grow like sqrt(n) in this tree
    inputs.c = port_cd(params.beta, 1000);
    inputs.p = delta_sequence(1, 1);
    inputs.q = inputs.p;
    const LimitResult limit = solve_limit(inputs, 3.0);

    std::printf("|S_n| = %llu after %llu steps\n",
                static_cast<unsigned long long>(cp.s_size),
                static_cast<unsigned long long>(cp.n));
    std::printf("%4s %12s %12s\n", "d", "empirical", "limit");
    for (int d = 1; d <= 10; ++d)
        std::printf("%4d %12.5f %12.5f\n", d, x_hat.at(d),
                    limit.x[static_cast<std::size_t>(d - 1)]);
    std::printf("gamma* = %.3f\n", limit.gamma_star);
    return 0;
}
