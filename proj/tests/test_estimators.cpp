#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "selgraph/estimators.hpp"
#include "selgraph/rng.hpp"

using namespace selgraph;

namespace {

DegreeSequence power_law(double scale, double exponent, int d_max) {
    DegreeSequence seq;
    seq.m = 1;
    for (int d = 1; d <= d_max; ++d)
        seq.values.push_back(scale * std::pow(static_cast<double>(d), -exponent));
    return seq;
}

} // namespace

TEST_CASE("log-log fit recovers an exact power law") {
    const auto seq = power_law(1.0, 2.5, 1000);
    const auto fit = tail_exponent_fit(seq, 10, 1000);
    REQUIRE_THAT(fit.exponent, Catch::Matchers::WithinAbs(2.5, 1e-9));
    REQUIRE_THAT(fit.r_squared, Catch::Matchers::WithinAbs(1.0, 1e-12));
    REQUIRE(fit.stderr_ < 1e-9);
}

TEST_CASE("fit is scale invariant") {
    for (const double k : {1e-6, 1.0, 17.0}) {
        const auto fit = tail_exponent_fit(power_law(k, 2.5, 1000), 10, 1000);
        REQUIRE_THAT(fit.exponent, Catch::Matchers::WithinAbs(2.5, 1e-9));
    }
}

TEST_CASE("limit-shape sequences fit their asymptotic exponents") {
    DegreeSequence x;
    x.m = 1;
    for (int d = 1; d <= 10000; ++d) x.values.push_back(1.0 / (d * (d + 1.0)));
    REQUIRE_THAT(tail_exponent_fit(x, 100, 10000).exponent,
                 Catch::Matchers::WithinAbs(2.0, 0.05));

    DegreeSequence c;
    c.m = 1;
    for (int d = 1; d <= 10000; ++d) c.values.push_back(4.0 / (d * (d + 1.0) * (d + 2.0)));
    REQUIRE_THAT(tail_exponent_fit(c, 100, 10000).exponent,
                 Catch::Matchers::WithinAbs(3.0, 0.05));
}

TEST_CASE("zero bins are skipped, sparse windows rejected") {
    auto seq = power_law(1.0, 2.0, 200);
    for (int d = 2; d <= 200; d += 2) seq.values[static_cast<std::size_t>(d - 1)] = 0.0;
    const auto fit = tail_exponent_fit(seq, 10, 200);
    REQUIRE_THAT(fit.exponent, Catch::Matchers::WithinAbs(2.0, 1e-9));

    DegreeSequence sparse;
    sparse.m = 1;
    sparse.values = {1.0, 0.5, 0.2, 0.1}; // only 4 nonzero entries
    REQUIRE_THROWS_AS(tail_exponent_fit(sparse, 1, 4), EstimationError);
}

TEST_CASE("hill estimator on sampled discrete power-law data") {
    // sample D = floor(d_min * U^{-1/(gamma-1)}) so that
    // P(D >= d) ~ (d_min/d)^{gamma-1}
    const double gamma = 2.5;
    const int d_min = 10;
    Rng rng(101);
    std::vector<std::int64_t> counts;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.u01() + 1e-300;
        const auto d = static_cast<std::size_t>(
            d_min * std::pow(u, -1.0 / (gamma - 1.0)));
        if (d >= counts.size()) counts.resize(d + 1, 0);
        ++counts[d];
    }
    const auto fit = tail_exponent_fit(counts, d_min, 0, FitMethod::Hill);
    REQUIRE_THAT(fit.exponent, Catch::Matchers::WithinAbs(gamma, 0.15));
    REQUIRE(fit.stderr_ < 0.01);
}

TEST_CASE("hill estimator rejects degenerate samples") {
    std::vector<std::int64_t> only_dmin(6, 0);
    only_dmin[5] = 100;
    REQUIRE_THROWS_AS(tail_exponent_fit(only_dmin, 5, 0, FitMethod::Hill), EstimationError);
    std::vector<std::int64_t> tiny(20, 0);
    tiny[7] = 2;
    REQUIRE_THROWS_AS(tail_exponent_fit(tiny, 5, 0, FitMethod::Hill), EstimationError);
}

TEST_CASE("growth exponent fits") {
    SECTION("pure square root is exact") {
        std::vector<std::pair<double, double>> points;
        for (int k = 10; k <= 20; ++k) {
            const double n = std::pow(2.0, k);
            points.emplace_back(n, std::sqrt(n));
        }
        const auto fit = growth_exponent_fit(points);
        REQUIRE_THAT(fit.alpha_hat, Catch::Matchers::WithinAbs(0.5, 1e-9));
        REQUIRE(fit.checkpoint_count == 11);
    }
    SECTION("slowly varying factor biases mildly") {
        std::vector<std::pair<double, double>> points;
        for (int k = 10; k <= 20; ++k) {
            const double n = std::pow(2.0, k);
            points.emplace_back(n, std::sqrt(n) * std::log(n));
        }
        REQUIRE_THAT(growth_exponent_fit(points).alpha_hat,
                     Catch::Matchers::WithinAbs(0.5, 0.1));
    }
    SECTION("constant size has zero exponent") {
        std::vector<std::pair<double, double>> points;
        for (int k = 10; k <= 20; ++k) points.emplace_back(std::pow(2.0, k), 42.0);
        REQUIRE_THAT(growth_exponent_fit(points).alpha_hat,
                     Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
    SECTION("scale invariance") {
        std::vector<std::pair<double, double>> a, b;
        for (int k = 10; k <= 20; ++k) {
            const double n = std::pow(2.0, k);
            a.emplace_back(n, std::pow(n, 0.7));
            b.emplace_back(n, 13.0 * std::pow(n, 0.7));
        }
        REQUIRE_THAT(growth_exponent_fit(a).alpha_hat,
                     Catch::Matchers::WithinAbs(growth_exponent_fit(b).alpha_hat, 1e-12));
    }
    SECTION("preconditions") {
        std::vector<std::pair<double, double>> two = {{8, 2}, {16, 3}};
        REQUIRE_THROWS_AS(growth_exponent_fit(two), EstimationError);
        std::vector<std::pair<double, double>> zero = {{8, 2}, {16, 0}, {32, 3}};
        REQUIRE_THROWS_AS(growth_exponent_fit(zero), EstimationError);
    }
}

TEST_CASE("total variation distance") {
    DegreeSequence a, b;
    a.m = 0;
    a.values = {0.5, 0.5};
    b.m = 0;
    b.values = {1.0, 0.0};
    REQUIRE(tv_distance(a, a) == 0.0);
    REQUIRE_THAT(tv_distance(a, b), Catch::Matchers::WithinAbs(0.5, 1e-15));

    DegreeSequence d1 = delta_sequence(1, 0), d2 = delta_sequence(4, 0);
    REQUIRE_THAT(tv_distance(d1, d2), Catch::Matchers::WithinAbs(1.0, 1e-15));

    // symmetry and triangle inequality on random distributions
    Rng rng(333);
    auto random_dist = [&]() {
        DegreeSequence s;
        s.m = 0;
        double total = 0;
        for (int i = 0; i < 10; ++i) {
            s.values.push_back(rng.u01());
            total += s.values.back();
        }
        for (auto& v : s.values) v /= total;
        return s;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_dist(), q = random_dist(), r = random_dist();
        const double pq = tv_distance(p, q);
        REQUIRE_THAT(pq, Catch::Matchers::WithinAbs(tv_distance(q, p), 1e-15));
        REQUIRE(pq >= 0.0);
        REQUIRE(pq <= 1.0 + 1e-15);
        REQUIRE(pq <= tv_distance(p, r) + tv_distance(r, q) + 1e-12);
    }
}

TEST_CASE("empirical distributions from checkpoints") {
    Checkpoint cp;
    cp.n = 4;
    cp.x = {0, 4, 2};
    cp.x_star = {0, 3, 1};
    cp.s_size = 4;
    cp.vertex_count = 6;
    const auto x_hat = empirical_x(cp);
    REQUIRE_THAT(x_hat.at(1), Catch::Matchers::WithinAbs(0.75, 1e-15));
    REQUIRE_THAT(x_hat.at(2), Catch::Matchers::WithinAbs(0.25, 1e-15));
    REQUIRE_THAT(x_hat.sum(), Catch::Matchers::WithinAbs(1.0, 1e-12));

    const auto c_hat = empirical_c(cp);
    REQUIRE_THAT(c_hat.at(1), Catch::Matchers::WithinAbs(4.0 / 6.0, 1e-15));
    REQUIRE_THAT(c_hat.sum(), Catch::Matchers::WithinAbs(1.0, 1e-12));

    Checkpoint empty;
    empty.s_size = 0;
    empty.vertex_count = 1;
    empty.x_star = {0};
    REQUIRE_THROWS_AS(empirical_x(empty), EstimationError);
}

TEST_CASE("default fit windows") {
    std::vector<std::int64_t> counts(100, 0);
    for (int d = 0; d < 60; ++d) counts[static_cast<std::size_t>(d)] = 30;
    counts[70] = 10;
    const auto [lo, hi] = default_empirical_window(counts);
    REQUIRE(lo == 5);
    REQUIRE(hi == 59);
    const auto [tlo, thi] = default_theory_window(10000);
    REQUIRE(tlo == 100);
    REQUIRE(thi == 1000);
}
