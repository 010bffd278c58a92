#pragma once

#include <cstddef>
#include <cstdint>

#include "ccspace/partition.hpp"
#include "ccspace/signed_graph.hpp"

namespace ccspace {

struct GeneratorConfig {
    std::size_t n = 0;
    std::size_t l0 = 1;
    double qm = 0.0;
    std::uint64_t seed = 0;
};

struct GeneratedInstance {
    SignedGraph graph{1};
    Partition planted;
    /// Frustrated pairs of `planted` in `graph`; always even.
    std::size_t misplaced_count = 0;
};

/// l0 near-equal contiguous modules (the first n mod l0 get one extra vertex), positive pairs
/// inside modules and negative pairs between them.
GeneratedInstance generate_balanced(std::size_t n, std::size_t l0);

/// Largest misplaced-edge proportion reachable by sign-pair swaps on the balanced
/// construction: 2 min(|E+|, |E-|) / m.
double max_qm(std::size_t n, std::size_t l0);

/// Number of sign flips used for proportion qm on m pairs: 2 * round(qm * m / 2).
std::size_t misplaced_target(std::size_t m, double qm);

/// Swaps k/2 (positive internal, negative external) pairs, each drawn uniformly among the
/// still well-placed pairs of its kind. The positive:negative ratio is unchanged.
GeneratedInstance introduce_imbalance(const GeneratedInstance& instance, double qm, std::uint64_t seed);

/// generate_balanced followed by introduce_imbalance.
GeneratedInstance generate(const GeneratorConfig& config);

}  // namespace ccspace
