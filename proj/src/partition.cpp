#include "ccspace/partition.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>

#include "ccspace/errors.hpp"
#include "ccspace/signed_graph.hpp"

namespace ccspace {

namespace {

template <class T>
std::vector<Label> relabel_by_first_appearance(std::span<const T> raw) {
    if (raw.empty()) throw DimensionError("cannot canonicalize an empty membership vector");
    std::unordered_map<T, Label> seen;
    std::vector<Label> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = seen.try_emplace(raw[i], static_cast<Label>(seen.size()));
        out[i] = it->second;
    }
    return out;
}

}  // namespace

Partition Partition::canonicalize(std::span<const Label> raw) {
    auto m = relabel_by_first_appearance(raw);
    Label top = 0;
    for (Label l : m) top = std::max(top, l);
    return Partition(std::move(m), top + 1);
}

Partition Partition::canonicalize(std::span<const int> raw) {
    auto m = relabel_by_first_appearance(raw);
    Label top = 0;
    for (Label l : m) top = std::max(top, l);
    return Partition(std::move(m), top + 1);
}

Partition Partition::from_canonical(std::vector<Label> membership) {
    if (membership.empty()) throw DimensionError("empty membership vector");
    if (membership[0] != 0) throw ParameterError("restricted-growth string must start with 0");
    Label top = 0;
    for (std::size_t i = 1; i < membership.size(); ++i) {
        if (membership[i] > top + 1)
            throw ParameterError("membership is not restricted-growth at position " + std::to_string(i));
        top = std::max(top, membership[i]);
    }
    return Partition(std::move(membership), top + 1);
}

Partition Partition::single_module(std::size_t n) {
    if (n == 0) throw DimensionError("empty partition");
    return Partition(std::vector<Label>(n, 0), 1);
}

Partition Partition::singletons(std::size_t n) {
    if (n == 0) throw DimensionError("empty partition");
    std::vector<Label> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<Label>(i);
    return Partition(std::move(m), n);
}

std::vector<std::size_t> Partition::module_sizes() const {
    std::vector<std::size_t> sizes(modules_, 0);
    for (Label l : membership_) ++sizes[l];
    return sizes;
}

std::vector<std::vector<std::size_t>> Partition::modules() const {
    std::vector<std::vector<std::size_t>> out(modules_);
    for (std::size_t i = 0; i < membership_.size(); ++i) out[membership_[i]].push_back(i);
    return out;
}

std::uint8_t ComembershipVector::at(std::size_t i, std::size_t j) const {
    if (i == j || i >= n || j >= n) throw DimensionError("invalid vertex pair");
    return x[pair_index(n, i, j)];
}

ComembershipVector to_comembership(const Partition& p) {
    const std::size_t n = p.size();
    ComembershipVector out{n, std::vector<std::uint8_t>(pair_count(n), 0)};
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.x[k++] = p.same_module(i, j) ? 1 : 0;
    return out;
}

namespace {

// Returns true and fills `triple` when some i < j < r violates
//   x_ij + x_jr - x_ir <= 1,  x_ij - x_jr + x_ir <= 1,  -x_ij + x_jr + x_ir <= 1.
bool find_violation(const ComembershipVector& x, std::array<std::size_t, 3>& triple) {
    const std::size_t n = x.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const int ij = x.x[pair_index(n, i, j)];
            for (std::size_t r = j + 1; r < n; ++r) {
                const int jr = x.x[pair_index(n, j, r)];
                const int ir = x.x[pair_index(n, i, r)];
                if (ij + jr - ir > 1 || ij - jr + ir > 1 || -ij + jr + ir > 1) {
                    triple = {i, j, r};
                    return true;
                }
            }
        }
    return false;
}

}  // namespace

bool satisfies_triangle_inequalities(const ComembershipVector& x) {
    std::array<std::size_t, 3> triple{};
    return !find_violation(x, triple);
}

Partition from_comembership(const ComembershipVector& x) {
    if (x.n == 0 || x.x.size() != pair_count(x.n)) throw DimensionError("co-membership vector has wrong length");
    for (auto v : x.x)
        if (v > 1) throw ParameterError("co-membership entries must be 0 or 1");
    std::array<std::size_t, 3> triple{};
    if (find_violation(x, triple))
        throw InvalidComembershipError("triangle inequality violated on (" + std::to_string(triple[0]) + ", " +
                                           std::to_string(triple[1]) + ", " + std::to_string(triple[2]) + ")",
                                       triple);
    // With transitivity guaranteed, each vertex joins the module of its first earlier partner.
    std::vector<Label> m(x.n);
    Label next = 0;
    for (std::size_t i = 0; i < x.n; ++i) {
        std::size_t j = 0;
        while (j < i && !x.x[pair_index(x.n, j, i)]) ++j;
        m[i] = j < i ? m[j] : next++;
    }
    return Partition::from_canonical(std::move(m));
}

}  // namespace ccspace
