#include "ccspace/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccspace/errors.hpp"
#include "ccspace/objective.hpp"
#include "ccspace/rng.hpp"

namespace ccspace {

namespace {

void check_shape(std::size_t n, std::size_t l0) {
    if (n == 0) throw ParameterError("n must be at least 1");
    if (l0 == 0 || l0 > n)
        throw ParameterError("l0 must lie in [1, n]; got l0 = " + std::to_string(l0) + ", n = " + std::to_string(n));
}

std::vector<std::size_t> module_sizes(std::size_t n, std::size_t l0) {
    std::vector<std::size_t> sizes(l0, n / l0);
    for (std::size_t c = 0; c < n % l0; ++c) ++sizes[c];
    return sizes;
}

constexpr double kQmTolerance = 1e-9;

}  // namespace

GeneratedInstance generate_balanced(std::size_t n, std::size_t l0) {
    check_shape(n, l0);
    std::vector<Label> membership;
    membership.reserve(n);
    const auto sizes = module_sizes(n, l0);
    for (std::size_t c = 0; c < l0; ++c) membership.insert(membership.end(), sizes[c], static_cast<Label>(c));

    std::vector<std::int8_t> signs(pair_count(n));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) signs[k++] = membership[i] == membership[j] ? 1 : -1;

    return {SignedGraph(n, std::move(signs)), Partition::from_canonical(std::move(membership)), 0};
}

double max_qm(std::size_t n, std::size_t l0) {
    check_shape(n, l0);
    const std::size_t m = pair_count(n);
    if (m == 0) return 0.0;
    std::size_t positive = 0;
    for (std::size_t s : module_sizes(n, l0)) positive += pair_count(s);
    const std::size_t negative = m - positive;
    return 2.0 * static_cast<double>(std::min(positive, negative)) / static_cast<double>(m);
}

std::size_t misplaced_target(std::size_t m, double qm) {
    return 2 * static_cast<std::size_t>(std::llround(qm * static_cast<double>(m) / 2.0));
}

GeneratedInstance introduce_imbalance(const GeneratedInstance& instance, double qm, std::uint64_t seed) {
    const std::size_t n = instance.graph.n();
    const std::size_t l0 = instance.planted.module_count();
    const double upper = max_qm(n, l0);
    if (!(qm >= 0.0) || qm > upper + kQmTolerance)
        throw ParameterError("qm = " + std::to_string(qm) + " outside [0, " + std::to_string(upper) + "]");

    const std::size_t swaps = misplaced_target(instance.graph.edge_count(), qm) / 2;
    GeneratedInstance out = instance;
    if (swaps == 0) return out;

    // Well-placed pairs by kind, as pair ranks in ascending order.
    std::vector<std::size_t> internal_positive;
    std::vector<std::size_t> external_negative;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            const bool internal = instance.planted.same_module(i, j);
            const int s = instance.graph.signs()[k];
            if (internal && s > 0) internal_positive.push_back(k);
            if (!internal && s < 0) external_negative.push_back(k);
        }
    if (swaps > internal_positive.size() || swaps > external_negative.size())
        throw ParameterError("not enough well-placed pairs left for qm = " + std::to_string(qm));

    // Each step draws one pair of each kind uniformly among those not yet swapped
    // (a partial Fisher-Yates shuffle of both pools, interleaved).
    Rng rng(seed);
    auto signs = instance.graph.signs();
    for (std::size_t t = 0; t < swaps; ++t) {
        const std::size_t a = t + rng.below(internal_positive.size() - t);
        std::swap(internal_positive[t], internal_positive[a]);
        const std::size_t b = t + rng.below(external_negative.size() - t);
        std::swap(external_negative[t], external_negative[b]);
        signs[internal_positive[t]] = -1;
        signs[external_negative[t]] = 1;
    }
    out.graph = SignedGraph(n, std::move(signs), instance.graph.weights());
    out.misplaced_count = instance.misplaced_count + 2 * swaps;
    return out;
}

GeneratedInstance generate(const GeneratorConfig& config) {
    return introduce_imbalance(generate_balanced(config.n, config.l0), config.qm, config.seed);
}

}  // namespace ccspace
