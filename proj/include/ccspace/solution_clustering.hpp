#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ccspace/partition_metrics.hpp"

namespace ccspace {

enum class Verdict { UniqueSolution, SingleClass, MultiClass, Inconclusive };

std::string_view to_string(Verdict v) noexcept;
/// Inverse of to_string; throws ParseError on unknown names.
Verdict verdict_from_string(std::string_view name);

/// Silhouette levels for a reasonable and a strong cluster structure.
inline constexpr double kReasonableSilhouette = 0.51;
inline constexpr double kStrongSilhouette = 0.71;

struct MedoidsResult {
    /// Medoid point indices, ascending. Class c is the class of medoids[c].
    std::vector<std::size_t> medoids;
    std::vector<std::size_t> assignment;
    /// Sum of distances from every point to its medoid.
    double cost = 0.0;
};

/// PAM: greedy BUILD initialization, then medoid/non-medoid swaps until no swap lowers the
/// cost. Ties resolve to the lowest index.
MedoidsResult k_medoids(const DissimilarityMatrix& d, std::size_t k);

/// Mean silhouette width over all points; singleton classes contribute 0.
/// Throws ParameterError unless at least two classes are present.
double silhouette(const DissimilarityMatrix& d, std::span<const std::size_t> assignment);

struct ClassifyOptions {
    double threshold = kReasonableSilhouette;
    /// Upper end of the k sweep (the sweep is 2..min(p, kmax)).
    std::size_t kmax = 50;
    /// A sub-threshold space is one tight class when its diameter is at most
    /// tight_fraction * ln(n).
    double tight_fraction = 0.25;
    /// n of the clustered partitions; 0 means take it from the matrix.
    std::size_t vertex_count = 0;
    std::size_t threads = 1;
};

struct ClusteringResult {
    Verdict verdict = Verdict::UniqueSolution;
    /// Number of classes reported (1 unless the verdict is MultiClass).
    std::size_t k = 1;
    std::vector<std::size_t> medoids;
    std::vector<std::size_t> assignment;
    /// Best silhouette over the sweep; empty when p == 1.
    std::optional<double> silhouette;
    /// The sweep the decision was taken from.
    std::vector<std::pair<std::size_t, double>> silhouette_by_k;
    std::size_t kmax_used = 0;
    double diameter = 0.0;
    double tight_diameter = 0.0;
};

/// Sweeps k over 2..min(p, kmax), keeps the k of highest silhouette (smallest k on ties) and
/// decides the verdict from the threshold and, below it, from the diameter test.
ClusteringResult select_k(const DissimilarityMatrix& d, const ClassifyOptions& options = {});

}  // namespace ccspace
