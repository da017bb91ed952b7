#pragma once

#include <cmath>
#include <cstdint>

namespace selgraph {

// Deterministic, portable random number generation. All sampling in the
// library goes through this header so that a (master_seed, replica_index)
// pair reproduces a run bit for bit, independent of the standard library's
// distribution implementations.

/// SplitMix64 stream (Steele, Lea, Flocchini). Used for seeding and for
/// deriving independent per-replica seeds from a master seed.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// Seed for replica r: the r-th output of a SplitMix64 stream seeded with
/// the master seed. Replicas can be launched in any order.
inline std::uint64_t replica_seed(std::uint64_t master_seed, std::uint32_t replica_index) {
    SplitMix64 sm(master_seed);
    std::uint64_t s = sm.next();
    for (std::uint32_t i = 0; i < replica_index; ++i) s = sm.next();
    return s;
}

/// xoshiro256** (Blackman, Vigna). 64-bit output, 2^256-1 period.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection;
    /// unbiased and identical on every platform. bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t x = next_u64();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<unsigned __int128>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return u01() < p; }

    /// Exact Binomial(n, p) draw by inverse CDF, with an O(1) fast path
    /// when n*p is small: u >= n*p implies 1-u <= 1-n*p <= (1-p)^n, i.e.
    /// the draw lands in the zero bucket. In the evolution loops the sum of
    /// n*p over all degree classes is O(lambda) per step, so the expected
    /// cost of the slow path is O(1) per step as well.
    std::uint64_t binomial(std::uint64_t n, double p) {
        if (n == 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        const double np = static_cast<double>(n) * p;
        const double u = u01();
        if (u >= np) return 0;
        const double v = 1.0 - u; // inverse CDF on v, uniform in (0, 1]
        double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
        double cdf = pmf;
        const double ratio = p / (1.0 - p);
        std::uint64_t k = 0;
        while (v >= cdf && k < n) {
            ++k;
            pmf *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
            cdf += pmf;
            if (pmf < 1e-320) break; // residual mass below double resolution
        }
        return k;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace selgraph
