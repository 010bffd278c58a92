#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ccspace {

using Label = std::uint32_t;

/// Set partition of {0, ..., n-1} stored as a restricted-growth string: membership[0] == 0 and
/// every module index is at most one more than the largest index seen before it. Two
/// Partition values are equal exactly when they describe the same set partition.
class Partition {
public:
    Partition() = default;

    /// Relabels arbitrary labels by order of first appearance.
    static Partition canonicalize(std::span<const Label> raw);
    static Partition canonicalize(std::span<const int> raw);
    /// Validates that `membership` is already restricted-growth; throws ParameterError otherwise.
    static Partition from_canonical(std::vector<Label> membership);

    static Partition single_module(std::size_t n);
    static Partition singletons(std::size_t n);

    std::size_t size() const noexcept { return membership_.size(); }
    std::size_t module_count() const noexcept { return modules_; }
    Label operator[](std::size_t i) const noexcept { return membership_[i]; }
    const std::vector<Label>& membership() const noexcept { return membership_; }

    std::vector<std::size_t> module_sizes() const;
    /// Vertex lists of each module, in module-index order.
    std::vector<std::vector<std::size_t>> modules() const;

    bool same_module(std::size_t i, std::size_t j) const noexcept { return membership_[i] == membership_[j]; }

    friend bool operator==(const Partition& a, const Partition& b) noexcept {
        return a.membership_ == b.membership_;
    }
    /// Lexicographic order of the restricted-growth strings.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) noexcept {
        return a.membership_ <=> b.membership_;
    }

private:
    Partition(std::vector<Label> membership, std::size_t modules)
        : membership_(std::move(membership)), modules_(modules) {}

    std::vector<Label> membership_;
    std::size_t modules_ = 0;
};

/// x_ij for every pair i < j, stored by pair_index: 1 iff i and j share a module.
struct ComembershipVector {
    std::size_t n = 0;
    std::vector<std::uint8_t> x;

    std::uint8_t at(std::size_t i, std::size_t j) const;
    bool operator==(const ComembershipVector&) const = default;
};

ComembershipVector to_comembership(const Partition& p);

/// Inverse of to_comembership. Throws InvalidComembershipError naming the first triple
/// (lexicographic i < j < r) that violates one of the three triangle inequalities.
Partition from_comembership(const ComembershipVector& x);

/// True when all triangle inequalities hold.
bool satisfies_triangle_inequalities(const ComembershipVector& x);

}  // namespace ccspace
