#include "ccspace/signed_graph.hpp"

#include <string>

#include "ccspace/errors.hpp"

namespace ccspace {

namespace {

void check_vertex_count(std::size_t n) {
    if (n == 0) throw DimensionError("signed graph needs at least one vertex");
}

}  // namespace

SignedGraph::SignedGraph(std::size_t n) : n_(n), signs_(pair_count(n), 1), weights_(pair_count(n), 1.0) {
    check_vertex_count(n);
}

SignedGraph::SignedGraph(std::size_t n, std::vector<std::int8_t> signs)
    : SignedGraph(n, std::move(signs), std::vector<double>(pair_count(n), 1.0)) {}

SignedGraph::SignedGraph(std::size_t n, std::vector<std::int8_t> signs, std::vector<double> weights)
    : n_(n), signs_(std::move(signs)), weights_(std::move(weights)) {
    check_vertex_count(n);
    if (signs_.size() != pair_count(n) || weights_.size() != pair_count(n))
        throw DimensionError("expected " + std::to_string(pair_count(n)) + " pairs for n = " + std::to_string(n));
    for (auto s : signs_)
        if (s != 1 && s != -1) throw ParameterError("signs must be +1 or -1");
    for (double w : weights_)
        if (!(w > 0.0)) throw ParameterError("weights must be strictly positive");
}

void SignedGraph::set_sign(std::size_t i, std::size_t j, int s) {
    if (i == j || i >= n_ || j >= n_) throw DimensionError("invalid vertex pair");
    if (s != 1 && s != -1) throw ParameterError("signs must be +1 or -1");
    signs_[pair_index(n_, i, j)] = static_cast<std::int8_t>(s);
}

void SignedGraph::set_weight(std::size_t i, std::size_t j, double w) {
    if (i == j || i >= n_ || j >= n_) throw DimensionError("invalid vertex pair");
    if (!(w > 0.0)) throw ParameterError("weights must be strictly positive");
    weights_[pair_index(n_, i, j)] = w;
}

bool SignedGraph::unweighted() const noexcept {
    for (double w : weights_)
        if (w != 1.0) return false;
    return true;
}

std::size_t SignedGraph::positive_edge_count() const noexcept {
    std::size_t count = 0;
    for (auto s : signs_) count += (s > 0);
    return count;
}

double SignedGraph::total_positive_weight() const noexcept {
    double total = 0.0;
    for (std::size_t k = 0; k < signs_.size(); ++k)
        if (signs_[k] > 0) total += weights_[k];
    return total;
}

double SignedGraph::total_negative_weight() const noexcept {
    double total = 0.0;
    for (std::size_t k = 0; k < signs_.size(); ++k)
        if (signs_[k] < 0) total += weights_[k];
    return total;
}

}  // namespace ccspace
