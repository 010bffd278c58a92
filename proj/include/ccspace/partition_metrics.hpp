#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "ccspace/partition.hpp"
#include "ccspace/solution_space.hpp"

namespace ccspace {

/// Symmetric p x p matrix of distances between solutions, zero diagonal, row-major storage.
class DissimilarityMatrix {
public:
    DissimilarityMatrix() = default;
    /// `element_count` records the vertex count of the compared partitions (0 when unknown).
    explicit DissimilarityMatrix(std::size_t p, std::size_t element_count = 0)
        : p_(p), element_count_(element_count), d_(p * p, 0.0) {}

    std::size_t size() const noexcept { return p_; }
    std::size_t element_count() const noexcept { return element_count_; }
    void set_element_count(std::size_t n) noexcept { element_count_ = n; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * p_ + j]; }
    /// Sets both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double v) noexcept {
        d_[i * p_ + j] = v;
        d_[j * p_ + i] = v;
    }
    std::span<const double> row(std::size_t i) const noexcept { return {d_.data() + i * p_, p_}; }

    /// Largest entry.
    double diameter() const noexcept;

private:
    std::size_t p_ = 0;
    std::size_t element_count_ = 0;
    std::vector<double> d_;
};

/// Largest number of solutions for which a full matrix is built.
inline constexpr std::size_t kMaxDissimilaritySize = 20000;

/// Shannon entropy of the module-size distribution, in nats.
double entropy(const Partition& p);

/// Mutual information of the module-overlap contingency table, in nats.
double mutual_information(const Partition& p, const Partition& q);

/// VI(p, q) = H(p) + H(q) - 2 I(p, q), in nats. Zero exactly when p == q.
double variation_of_information(const Partition& p, const Partition& q);

DissimilarityMatrix dissimilarity_matrix(std::span<const Partition> solutions, std::size_t threads = 1);
DissimilarityMatrix dissimilarity_matrix(const SolutionSpace& space, std::size_t threads = 1);

/// p rows of p comma-separated values, 12 significant digits.
void write_dissimilarity_csv(std::ostream& out, const DissimilarityMatrix& d);
DissimilarityMatrix read_dissimilarity_csv(std::istream& in);

}  // namespace ccspace
