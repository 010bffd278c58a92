#include "ccspace/solution_clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ccspace/errors.hpp"
#include "ccspace/parallel.hpp"

namespace ccspace {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::UniqueSolution: return "UNIQUE_SOLUTION";
        case Verdict::SingleClass: return "SINGLE_CLASS";
        case Verdict::MultiClass: return "MULTI_CLASS";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

Verdict verdict_from_string(std::string_view name) {
    for (Verdict v : {Verdict::UniqueSolution, Verdict::SingleClass, Verdict::MultiClass, Verdict::Inconclusive})
        if (to_string(v) == name) return v;
    throw ParseError("unknown verdict '" + std::string(name) + "'");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t one_medoid(const DissimilarityMatrix& d) {
    std::size_t best = 0;
    double best_sum = kInf;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double sum = 0.0;
        for (double v : d.row(i)) sum += v;
        if (sum < best_sum) {
            best_sum = sum;
            best = i;
        }
    }
    return best;
}

// Greedy BUILD. The medoids chosen for k are a prefix of those chosen for any larger k.
std::vector<std::size_t> build_sequence(const DissimilarityMatrix& d, std::size_t k) {
    const std::size_t p = d.size();
    std::vector<std::size_t> medoids{one_medoid(d)};
    std::vector<bool> chosen(p, false);
    chosen[medoids[0]] = true;
    std::vector<double> nearest(d.row(medoids[0]).begin(), d.row(medoids[0]).end());
    while (medoids.size() < k) {
        std::size_t pick = p;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < p; ++i) {
            if (chosen[i]) continue;
            const auto row = d.row(i);
            double gain = 0.0;
            for (std::size_t j = 0; j < p; ++j) gain += std::max(0.0, nearest[j] - row[j]);
            if (gain > best_gain) {
                best_gain = gain;
                pick = i;
            }
        }
        chosen[pick] = true;
        medoids.push_back(pick);
        const auto row = d.row(pick);
        for (std::size_t j = 0; j < p; ++j) nearest[j] = std::min(nearest[j], row[j]);
    }
    return medoids;
}

struct NearestTable {
    std::vector<std::size_t> nearest;  // position in the medoid list
    std::vector<double> first;
    std::vector<double> second;
};

NearestTable nearest_table(const DissimilarityMatrix& d, const std::vector<std::size_t>& medoids) {
    const std::size_t p = d.size();
    NearestTable t{std::vector<std::size_t>(p, 0), std::vector<double>(p, kInf), std::vector<double>(p, kInf)};
    for (std::size_t o = 0; o < p; ++o) {
        const auto row = d.row(o);
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            const double v = row[medoids[m]];
            if (v < t.first[o]) {
                t.second[o] = t.first[o];
                t.first[o] = v;
                t.nearest[o] = m;
            } else if (v < t.second[o]) {
                t.second[o] = v;
            }
        }
    }
    return t;
}

// Swap phase. For each candidate x in index order, the cost change of replacing every
// medoid at once is accumulated in one pass over the points; the best such swap is applied
// when it lowers the cost. Stops after a full pass without an improving swap.
void swap_phase(const DissimilarityMatrix& d, std::vector<std::size_t>& medoids) {
    const std::size_t p = d.size();
    const std::size_t k = medoids.size();
    if (k == p) return;
    std::vector<bool> is_medoid(p, false);
    for (auto m : medoids) is_medoid[m] = true;
    NearestTable t = nearest_table(d, medoids);
    double cost = 0.0;
    for (double v : t.first) cost += v;

    std::vector<double> delta(k);
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t x = 0; x < p; ++x) {
            if (is_medoid[x]) continue;
            const auto row = d.row(x);
            std::fill(delta.begin(), delta.end(), 0.0);
            double shared = 0.0;
            for (std::size_t o = 0; o < p; ++o) {
                const double dxo = row[o];
                if (dxo < t.first[o])
                    shared += dxo - t.first[o];
                else
                    delta[t.nearest[o]] += std::min(dxo, t.second[o]) - t.first[o];
            }
            std::size_t best = 0;
            for (std::size_t m = 1; m < k; ++m)
                if (delta[m] < delta[best]) best = m;
            const double change = delta[best] + shared;
            if (change < -1e-12 * (1.0 + cost)) {
                is_medoid[medoids[best]] = false;
                is_medoid[x] = true;
                medoids[best] = x;
                t = nearest_table(d, medoids);
                cost += change;
                improved = true;
            }
        }
    }
}

MedoidsResult finalize(const DissimilarityMatrix& d, std::vector<std::size_t> medoids) {
    std::sort(medoids.begin(), medoids.end());
    MedoidsResult r;
    r.assignment.assign(d.size(), 0);
    for (std::size_t o = 0; o < d.size(); ++o) {
        const auto row = d.row(o);
        std::size_t best = 0;
        for (std::size_t c = 1; c < medoids.size(); ++c)
            if (row[medoids[c]] < row[medoids[best]]) best = c;
        r.assignment[o] = best;
    }
    for (std::size_t c = 0; c < medoids.size(); ++c) r.assignment[medoids[c]] = c;
    for (std::size_t o = 0; o < d.size(); ++o) r.cost += d(o, medoids[r.assignment[o]]);
    r.medoids = std::move(medoids);
    return r;
}

}  // namespace

MedoidsResult k_medoids(const DissimilarityMatrix& d, std::size_t k) {
    if (k == 0 || k > d.size())
        throw ParameterError("k must lie in [1, " + std::to_string(d.size()) + "]; got " + std::to_string(k));
    auto medoids = build_sequence(d, k);
    swap_phase(d, medoids);
    return finalize(d, std::move(medoids));
}

double silhouette(const DissimilarityMatrix& d, std::span<const std::size_t> assignment) {
    const std::size_t p = d.size();
    if (assignment.size() != p) throw DimensionError("assignment length differs from the matrix size");
    std::size_t classes = 0;
    for (auto c : assignment) classes = std::max(classes, c + 1);
    std::vector<std::size_t> sizes(classes, 0);
    for (auto c : assignment) ++sizes[c];
    if (classes < 2) throw ParameterError("silhouette is undefined for a single class");
    for (auto s : sizes)
        if (s == 0) throw ParameterError("class labels must be contiguous with no empty class");

    std::vector<double> sums(classes);
    double total = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t own = assignment[i];
        if (sizes[own] == 1) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        const auto row = d.row(i);
        for (std::size_t j = 0; j < p; ++j) sums[assignment[j]] += row[j];
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = kInf;
        for (std::size_t c = 0; c < classes; ++c)
            if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        const double scale = std::max(a, b);
        if (scale > 0.0) total += (b - a) / scale;
    }
    return total / static_cast<double>(p);
}

ClusteringResult select_k(const DissimilarityMatrix& d, const ClassifyOptions& options) {
    const std::size_t p = d.size();
    if (p == 0) throw ParameterError("cannot classify an empty solution space");
    ClusteringResult result;
    if (p == 1) {
        result.medoids = {0};
        result.assignment = {0};
        return result;
    }
    if (options.kmax < 2) throw ParameterError("kmax must be at least 2");

    const std::size_t kmax = std::min(p, options.kmax);
    result.kmax_used = kmax;
    const auto sequence = build_sequence(d, kmax);
    std::vector<MedoidsResult> runs(kmax + 1);
    std::vector<double> widths(kmax + 1, 0.0);
    parallel_for(kmax - 1, options.threads, [&](std::size_t i) {
        const std::size_t k = i + 2;
        std::vector<std::size_t> medoids(sequence.begin(), sequence.begin() + static_cast<std::ptrdiff_t>(k));
        swap_phase(d, medoids);
        runs[k] = finalize(d, std::move(medoids));
        widths[k] = silhouette(d, runs[k].assignment);
    });

    std::size_t best_k = 2;
    for (std::size_t k = 2; k <= kmax; ++k) {
        result.silhouette_by_k.emplace_back(k, widths[k]);
        if (widths[k] > widths[best_k]) best_k = k;
    }
    result.silhouette = widths[best_k];
    result.diameter = d.diameter();
    const std::size_t n = options.vertex_count ? options.vertex_count : d.element_count();

    if (widths[best_k] >= options.threshold) {
        result.verdict = Verdict::MultiClass;
        result.k = best_k;
        result.medoids = runs[best_k].medoids;
        result.assignment = runs[best_k].assignment;
        if (n > 0) result.tight_diameter = options.tight_fraction * std::log(static_cast<double>(n));
        return result;
    }
    if (n == 0) throw ParameterError("vertex count is required to judge a sub-threshold space");
    result.tight_diameter = options.tight_fraction * std::log(static_cast<double>(n));
    result.verdict = result.diameter <= result.tight_diameter ? Verdict::SingleClass : Verdict::Inconclusive;
    result.k = 1;
    result.medoids = {one_medoid(d)};
    result.assignment.assign(p, 0);
    return result;
}

}  // namespace ccspace
