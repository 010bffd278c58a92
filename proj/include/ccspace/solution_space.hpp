#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ccspace/partition.hpp"

namespace ccspace {

struct SearchStats {
    std::size_t nodes_optimum = 0;
    std::size_t nodes_enumeration = 0;
    double seconds = 0.0;
};

/// Optimal imbalance plus the optimal partitions found, canonical and sorted ascending.
struct SolutionSpace {
    double optimum = 0.0;
    std::vector<Partition> solutions;
    /// True only when the search proved there is no further optimum.
    bool complete = false;
    /// Set when the enumeration limit cut the listing short.
    bool overflow = false;
    /// Non-empty when the search ended abnormally (time limit, optimum below the true value).
    std::string diagnostic;
    SearchStats stats;

    std::size_t vertex_count() const { return solutions.empty() ? 0 : solutions.front().size(); }
};

}  // namespace ccspace
