#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "selgraph/rng.hpp"

using namespace selgraph;

TEST_CASE("same seed reproduces the stream bit for bit") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("replica seeds are stable and pairwise distinct") {
    const std::uint64_t master = 0xDEADBEEFCAFEULL;
    std::vector<std::uint64_t> seeds;
    for (std::uint32_t r = 0; r < 64; ++r) seeds.push_back(replica_seed(master, r));
    for (std::uint32_t r = 0; r < 64; ++r) REQUIRE(replica_seed(master, r) == seeds[r]);
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.size(); ++j) REQUIRE(seeds[i] != seeds[j]);
}

TEST_CASE("u01 lies in [0,1) and below() respects the bound") {
    Rng rng(7);
    double mean = 0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.u01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        mean += u;
    }
    mean /= 100000;
    REQUIRE(std::fabs(mean - 0.5) < 0.005);

    std::vector<int> hits(7, 0);
    for (int i = 0; i < 70000; ++i) ++hits[rng.below(7)];
    for (const int h : hits)
        REQUIRE(std::fabs(h - 10000.0) < 4.0 * std::sqrt(10000.0 * 6.0 / 7.0));
}

TEST_CASE("binomial edge cases") {
    Rng rng(3);
    REQUIRE(rng.binomial(0, 0.5) == 0);
    REQUIRE(rng.binomial(10, 0.0) == 0);
    REQUIRE(rng.binomial(10, 1.0) == 10);
    REQUIRE(rng.binomial(10, -0.5) == 0);
    REQUIRE(rng.binomial(10, 1.5) == 10);
}

TEST_CASE("binomial draws match the exact pmf") {
    // oracle: exact Binomial(5, 0.3) probabilities
    const std::uint64_t n = 5;
    const double p = 0.3;
    std::vector<double> pmf(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        double binom = 1.0;
        for (std::uint64_t i = 0; i < k; ++i)
            binom *= static_cast<double>(n - i) / static_cast<double>(i + 1);
        pmf[k] = binom * std::pow(p, static_cast<double>(k)) *
                 std::pow(1 - p, static_cast<double>(n - k));
    }
    Rng rng(99);
    const int trials = 200000;
    std::vector<int> hits(n + 1, 0);
    for (int i = 0; i < trials; ++i) ++hits[rng.binomial(n, p)];
    for (std::uint64_t k = 0; k <= n; ++k) {
        const double expect = pmf[k] * trials;
        const double sigma = std::sqrt(pmf[k] * (1 - pmf[k]) * trials);
        REQUIRE(std::fabs(hits[k] - expect) < 4.0 * sigma);
    }
}

TEST_CASE("binomial mean for large counts and tiny probability") {
    Rng rng(2024);
    const std::uint64_t n = 1000000;
    const double p = 2.5e-6; // np = 2.5, exercises the zero fast path heavily
    double total = 0;
    const int trials = 40000;
    for (int i = 0; i < trials; ++i) total += static_cast<double>(rng.binomial(n, p));
    const double mean = total / trials;
    const double sigma = std::sqrt(static_cast<double>(n) * p / trials);
    REQUIRE(std::fabs(mean - static_cast<double>(n) * p) < 4.0 * sigma);
}
