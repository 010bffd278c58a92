#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ccspace/core_parts.hpp"
#include "ccspace/generator.hpp"
#include "ccspace/signed_graph.hpp"
#include "ccspace/solution_clustering.hpp"
#include "ccspace/solver.hpp"

namespace ccspace {

using Json = nlohmann::ordered_json;

/// Pipeline runs cap the enumeration lower than a bare solve.
inline constexpr std::size_t kPipelineEnumerationLimit = 5000;

inline SolverConfig pipeline_solver_defaults() {
    SolverConfig c;
    c.enumeration_limit = kPipelineEnumerationLimit;
    return c;
}

struct PipelineConfig {
    SolverConfig solver = pipeline_solver_defaults();
    ClassifyOptions classify;
};

/// Where an instance came from; echoed in its report.
struct InstanceMeta {
    std::string name;
    std::optional<GeneratorConfig> generator;
    std::optional<std::size_t> misplaced_count;
    std::optional<Partition> planted;
    std::size_t replication = 0;
};

struct StageTimings {
    double solve = 0.0;
    double enumerate = 0.0;
    double distances = 0.0;
    double classify = 0.0;
    double coreparts = 0.0;
};

struct InstanceReport {
    InstanceMeta meta;
    std::size_t n = 0;
    std::size_t m = 0;
    double optimum = 0.0;
    /// optimum / m.
    double optimum_ratio = 0.0;

    std::size_t solution_count = 0;
    bool complete = false;
    /// The listing was truncated; counts and everything derived from them are lower bounds.
    bool lower_bound = false;
    /// Module count -> number of optimal solutions with that many modules.
    std::map<std::size_t, std::size_t> module_counts;
    double mean_module_count = 0.0;

    Verdict verdict = Verdict::UniqueSolution;
    int space_type = 1;
    std::size_t k = 1;
    std::optional<double> silhouette;
    std::vector<std::pair<std::size_t, double>> silhouette_by_k;
    std::size_t kmax_used = 0;
    double diameter = 0.0;
    double tight_diameter = 0.0;
    double threshold = kReasonableSilhouette;
    std::vector<std::size_t> class_sizes;

    std::vector<double> class_core_fractions;
    double mean_class_core_fraction = 1.0;
    double overall_core_fraction = 1.0;
    bool core_tie = false;

    StageTimings timings;
};

/// Solution-space type: 1 unique solution, 2 single class of similar solutions, 3 several
/// classes, 4 several solutions without a clear clustering.
int space_type(Verdict v) noexcept;
std::vector<int> summarize_space(std::span<const InstanceReport> reports);

/// solve -> enumerate -> distances -> classify -> core parts. When `artifact_dir` is given,
/// every intermediate file plus report.json (no timings) and timings.json are written there.
/// Stage failures are rethrown with the stage name prefixed; a failed recomputation of a
/// stored result raises CrossCheckError.
InstanceReport run_instance(const SignedGraph& g, const PipelineConfig& config, const InstanceMeta& meta = {},
                            const std::optional<std::filesystem::path>& artifact_dir = std::nullopt);

Json report_to_json(const InstanceReport& report);
Json timings_to_json(const StageTimings& timings);
InstanceReport report_from_json(const Json& j);

Json clustering_to_json(const ClusteringResult& result, const ClassifyOptions& options);
/// Reads the `assignment` array of a classification document.
std::vector<std::size_t> assignment_from_json(const Json& j);
Json core_report_to_json(const CoreReport& report, std::span<const std::size_t> assignment);

struct ExperimentGrid {
    std::vector<std::size_t> n_values{8, 12, 16};
    std::vector<std::size_t> l0_values{2, 3};
    std::vector<double> qm_values{0.05, 0.15, 0.25, 0.45, 0.65, 0.85};
    std::size_t replications = 30;
    std::uint64_t base_seed = 1;
    PipelineConfig pipeline;
    /// Workers over instances; each instance then runs single-threaded.
    std::size_t threads = 1;
    /// Keep per-instance artifact directories.
    bool keep_artifacts = false;
};

struct CellSummary {
    std::size_t n = 0;
    std::size_t l0 = 0;
    double qm = 0.0;
    /// False when qm exceeds max_qm(n, l0); such cells have no instances.
    bool defined = true;
    std::size_t replications = 0;
    std::size_t failures = 0;
    double mean_solutions = 0.0;
    std::size_t max_solutions = 0;
    std::size_t truncated = 0;
    double mean_imbalance_ratio = 0.0;
    double mean_module_count = 0.0;
    std::size_t multi_solution = 0;
    /// Share of SINGLE_CLASS among instances with more than one solution.
    std::optional<double> single_class_proportion;
    std::optional<double> mean_class_core_fraction;
    std::optional<double> mean_overall_core_fraction;
    std::array<std::size_t, 4> type_counts{};
};

struct GridResult {
    std::vector<CellSummary> cells;
    /// Successful instance reports, cell by cell in grid order, replications ascending.
    std::vector<InstanceReport> reports;
};

/// Seed of one replication: combine_seeds({base, n, l0, round(qm * 1e6), replication}).
std::uint64_t instance_seed(std::uint64_t base, std::size_t n, std::size_t l0, double qm, std::size_t replication);

/// Runs every defined cell. Cells whose `done` marker exists under out_dir are loaded instead
/// of recomputed. Writes manifest.csv, summary.csv and imbalance_bins.csv; per-cell timings
/// live next to each cell's reports.jsonl.
GridResult run_grid(const ExperimentGrid& grid, const std::filesystem::path& out_dir);

CellSummary summarize_cell(std::size_t n, std::size_t l0, double qm, std::span<const InstanceReport> reports,
                           std::size_t failures);

/// Column order: n,l0,qm,defined,replications,failures,mean_solutions,max_solutions,
/// truncated,mean_imbalance_ratio,mean_module_count,multi_solution_instances,
/// single_class_proportion,mean_class_core_fraction,mean_overall_core_fraction,
/// type1,type2,type3,type4
std::string summary_csv(std::span<const CellSummary> cells);

/// Detected-imbalance bin of a report: floor(20 * I* / m), i.e. [0.05 b, 0.05 (b + 1)[.
std::size_t imbalance_bin(const InstanceReport& report);

/// Column order: l0,n,bin_lo,bin_hi,instances,mean_solutions,max_solutions,
/// multi_solution_instances,single_class_proportion,mean_class_core_fraction,
/// type1,type2,type3,type4
std::string imbalance_bins_csv(std::span<const InstanceReport> reports);

}  // namespace ccspace
