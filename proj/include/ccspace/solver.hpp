#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "ccspace/partition.hpp"
#include "ccspace/signed_graph.hpp"
#include "ccspace/solution_space.hpp"

namespace ccspace {

struct SolverConfig {
    /// Maximum number of optimal partitions to store.
    std::size_t enumeration_limit = 100000;
    /// Wall-clock budget in seconds for each search phase.
    std::optional<double> time_limit;
    std::size_t thread_count = 1;
    /// Enumeration subtrees are rooted at this many branching levels below the root.
    std::size_t split_depth = 2;
};

struct OptimumResult {
    double optimum = 0.0;
    Partition witness;
    SearchStats stats;
};

/// Largest graph accepted by brute_force_optima (Bell(13) is about 2.8e7 partitions).
inline constexpr std::size_t kBruteForceMaxVertices = 13;

/// Minimum imbalance over all partitions and one partition attaining it.
/// Throws IncompleteSearchError when the time limit stops the search.
OptimumResult solve_optimum(const SignedGraph& g, const SolverConfig& config = {});

/// Every partition whose imbalance equals `optimum`, which must be the true minimum.
SolutionSpace enumerate_optima(const SignedGraph& g, double optimum, const SolverConfig& config = {});

/// solve_optimum followed by enumerate_optima.
SolutionSpace solve_all(const SignedGraph& g, const SolverConfig& config = {});

/// Exhaustive scan of all restricted-growth strings. Throws GuardError above kBruteForceMaxVertices.
SolutionSpace brute_force_optima(const SignedGraph& g);

/// Pruning bound used by the search, for vertices 0..t-1 assigned per `prefix` (a
/// restricted-growth prefix) and t..n-1 free. Never exceeds the imbalance of any completion.
double lower_bound(const SignedGraph& g, std::span<const Label> prefix);

}  // namespace ccspace
