#include "ccspace/objective.hpp"

#include <string>

#include "ccspace/errors.hpp"

namespace ccspace {

namespace {

void check_sizes(const SignedGraph& g, std::size_t n) {
    if (g.n() != n)
        throw DimensionError("graph has " + std::to_string(g.n()) + " vertices, partition or vector has " +
                             std::to_string(n));
}

}  // namespace

double imbalance(const SignedGraph& g, const Partition& p) {
    check_sizes(g, p.size());
    const std::size_t n = g.n();
    const auto& signs = g.signs();
    const auto& weights = g.weights();
    double total = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            const bool internal = p.same_module(i, j);
            if (internal == (signs[k] < 0)) total += weights[k];
        }
    return total;
}

std::vector<FrustratedEdge> frustrated_edges(const SignedGraph& g, const Partition& p) {
    check_sizes(g, p.size());
    std::vector<FrustratedEdge> out;
    const std::size_t n = g.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const int s = g.sign(i, j);
            if (p.same_module(i, j) == (s < 0)) out.push_back({i, j, s});
        }
    return out;
}

double ilp_objective(const SignedGraph& g, const ComembershipVector& x) {
    check_sizes(g, x.n);
    if (x.x.size() != g.edge_count()) throw DimensionError("co-membership vector has wrong length");
    const auto& signs = g.signs();
    const auto& weights = g.weights();
    double total = 0.0;
    for (std::size_t k = 0; k < signs.size(); ++k)
        total += signs[k] < 0 ? weights[k] * x.x[k] : weights[k] * (1 - x.x[k]);
    return total;
}

}  // namespace ccspace
