#pragma once

#include <cstdint>
#include <vector>

#include "selgraph/errors.hpp"

namespace selgraph {

/// Degree histogram backed by a growable array indexed by degree.
/// Missing entries are zero; all shifts are O(1).
class DegreeHistogram {
public:
    void add(std::uint32_t degree, std::int64_t count = 1) {
        ensure(degree);
        counts_[degree] += count;
    }

    /// Move one vertex from bucket d to bucket d+1.
    void shift_up(std::uint32_t degree) {
        ensure(degree + 1);
        if (counts_[degree] <= 0)
            throw InvariantError("histogram underflow at degree " + std::to_string(degree));
        --counts_[degree];
        ++counts_[degree + 1];
    }

    std::int64_t at(std::uint32_t degree) const {
        return degree < counts_.size() ? counts_[degree] : 0;
    }

    std::uint32_t max_degree() const {
        for (std::size_t d = counts_.size(); d-- > 0;)
            if (counts_[d] != 0) return static_cast<std::uint32_t>(d);
        return 0;
    }

    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto c : counts_) s += c;
        return s;
    }

    /// Sum of d * count(d); equals twice the edge count for a full histogram.
    std::int64_t weighted_total() const {
        std::int64_t s = 0;
        for (std::size_t d = 0; d < counts_.size(); ++d)
            s += static_cast<std::int64_t>(d) * counts_[d];
        return s;
    }

    const std::vector<std::int64_t>& counts() const { return counts_; }

private:
    void ensure(std::uint32_t degree) {
        if (degree >= counts_.size()) counts_.resize(degree + 1, 0);
    }

    std::vector<std::int64_t> counts_;
};

} // namespace selgraph
