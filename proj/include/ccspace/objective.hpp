#pragma once

#include <vector>

#include "ccspace/partition.hpp"
#include "ccspace/signed_graph.hpp"

namespace ccspace {

struct FrustratedEdge {
    std::size_t i;
    std::size_t j;
    int sign;

    bool operator==(const FrustratedEdge&) const = default;
};

/// Total weight of negative internal and positive external pairs.
double imbalance(const SignedGraph& g, const Partition& p);

/// Frustrated pairs in lexicographic (i, j) order.
std::vector<FrustratedEdge> frustrated_edges(const SignedGraph& g, const Partition& p);

/// Linear objective over co-membership variables:
/// sum over negative pairs of w * x + sum over positive pairs of w * (1 - x).
double ilp_objective(const SignedGraph& g, const ComembershipVector& x);

}  // namespace ccspace
