#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccspace/partition.hpp"
#include "ccspace/solution_clustering.hpp"
#include "ccspace/solution_space.hpp"

namespace ccspace {

/// Pairwise co-assignment counts over a list of solutions.
class ConsensusMatrix {
public:
    ConsensusMatrix(std::size_t n, std::size_t solution_count)
        : n_(n), solution_count_(solution_count), counts_(n * n, 0) {}

    std::size_t n() const noexcept { return n_; }
    std::size_t solution_count() const noexcept { return solution_count_; }

    std::uint32_t count(std::size_t i, std::size_t j) const noexcept { return counts_[i * n_ + j]; }
    /// Fraction of solutions placing i and j in the same module.
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return static_cast<double>(count(i, j)) / static_cast<double>(solution_count_);
    }
    bool always_together(std::size_t i, std::size_t j) const noexcept { return count(i, j) == solution_count_; }
    bool always_apart(std::size_t i, std::size_t j) const noexcept { return count(i, j) == 0; }

    void increment(std::size_t i, std::size_t j) noexcept { ++counts_[i * n_ + j]; }

private:
    std::size_t n_;
    std::size_t solution_count_;
    std::vector<std::uint32_t> counts_;
};

ConsensusMatrix consensus(std::span<const Partition> solutions);

struct CorePart {
    /// Core vertices, ascending.
    std::vector<std::size_t> vertices;
    /// Groups of core vertices that are always together, ordered by first vertex.
    std::vector<std::vector<std::size_t>> together_classes;
    /// Another core of the same size existed; the lexicographically smallest was kept.
    bool tie = false;

    double fraction(std::size_t n) const noexcept {
        return n == 0 ? 0.0 : static_cast<double>(vertices.size()) / static_cast<double>(n);
    }
};

/// Largest vertex set whose pairs are either together in every solution or apart in every
/// solution: always-together groups are contracted, then a maximum-weight clique of the
/// always-apart relation is taken.
CorePart core_part(std::span<const Partition> solutions);

struct CoreReport {
    std::size_t n = 0;
    std::vector<CorePart> classes;
    CorePart overall;
    std::vector<double> class_fractions;
    double overall_fraction = 0.0;
};

/// Core part of each class of `clustering` plus the core of the whole space.
CoreReport class_core_report(const SolutionSpace& space, const ClusteringResult& clustering);

/// Same, from a plain class assignment (one entry per solution, classes 0..k-1).
CoreReport class_core_report(std::span<const Partition> solutions, std::span<const std::size_t> assignment);

}  // namespace ccspace
