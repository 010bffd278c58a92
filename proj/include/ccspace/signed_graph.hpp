#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ccspace {

/// Rank of the unordered pair {i, j} (i != j) in the row-major upper triangle of an n x n matrix.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
    if (i > j) {
        std::size_t t = i;
        i = j;
        j = t;
    }
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

/// Complete undirected signed graph. Every vertex pair carries a sign (+1 or -1) and a
/// strictly positive weight; both are stored flat by pair rank.
class SignedGraph {
public:
    /// All-positive unit-weight graph on n vertices.
    explicit SignedGraph(std::size_t n);

    /// Unit weights. `signs` is indexed by pair_index and must hold only +1 / -1.
    SignedGraph(std::size_t n, std::vector<std::int8_t> signs);

    SignedGraph(std::size_t n, std::vector<std::int8_t> signs, std::vector<double> weights);

    std::size_t n() const noexcept { return n_; }
    /// m: number of edges, always n(n-1)/2.
    std::size_t edge_count() const noexcept { return signs_.size(); }

    int sign(std::size_t i, std::size_t j) const noexcept { return signs_[pair_index(n_, i, j)]; }
    double weight(std::size_t i, std::size_t j) const noexcept { return weights_[pair_index(n_, i, j)]; }
    /// sign * weight.
    double signed_weight(std::size_t i, std::size_t j) const noexcept {
        const std::size_t k = pair_index(n_, i, j);
        return signs_[k] * weights_[k];
    }

    void set_sign(std::size_t i, std::size_t j, int s);
    void set_weight(std::size_t i, std::size_t j, double w);

    const std::vector<std::int8_t>& signs() const noexcept { return signs_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    bool unweighted() const noexcept;
    std::size_t positive_edge_count() const noexcept;
    std::size_t negative_edge_count() const noexcept { return edge_count() - positive_edge_count(); }
    double total_positive_weight() const noexcept;
    double total_negative_weight() const noexcept;
    double total_weight() const noexcept { return total_positive_weight() + total_negative_weight(); }

    bool operator==(const SignedGraph&) const = default;

private:
    std::size_t n_;
    std::vector<std::int8_t> signs_;
    std::vector<double> weights_;
};

}  // namespace ccspace
