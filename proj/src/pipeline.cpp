#include "ccspace/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include "ccspace/errors.hpp"
#include "ccspace/io.hpp"
#include "ccspace/objective.hpp"
#include "ccspace/parallel.hpp"
#include "ccspace/partition_metrics.hpp"
#include "ccspace/rng.hpp"

namespace ccspace {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs one pipeline stage, re-raising failures with the stage name while keeping their type.
template <class Fn>
auto stage(const char* name, double& seconds, Fn&& fn) -> decltype(fn()) {
    const auto start = Clock::now();
    const auto tag = [name](const std::exception& e) { return std::string(name) + ": " + e.what(); };
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            seconds = seconds_since(start);
        } else {
            auto result = fn();
            seconds = seconds_since(start);
            return result;
        }
    } catch (const IncompleteSearchError& e) {
        throw IncompleteSearchError(tag(e), e.best_upper(), e.best_lower());
    } catch (const InvalidComembershipError& e) {
        throw InvalidComembershipError(tag(e), e.triple());
    } catch (const DimensionError& e) {
        throw DimensionError(tag(e));
    } catch (const ParameterError& e) {
        throw ParameterError(tag(e));
    } catch (const ParseError& e) {
        throw ParseError(tag(e));
    } catch (const GuardError& e) {
        throw GuardError(tag(e));
    } catch (const CrossCheckError& e) {
        throw CrossCheckError(tag(e));
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_number(double v) { return io::format_significant(v, 12); }

std::string csv_optional(const std::optional<double>& v) { return v ? csv_number(*v) : "NA"; }

Json core_to_json(const CorePart& core, std::size_t n) {
    return Json{{"vertices", core.vertices},
                {"together_classes", core.together_classes},
                {"fraction", core.fraction(n)},
                {"tie", core.tie}};
}

}  // namespace

int space_type(Verdict v) noexcept {
    switch (v) {
        case Verdict::UniqueSolution: return 1;
        case Verdict::SingleClass: return 2;
        case Verdict::MultiClass: return 3;
        case Verdict::Inconclusive: return 4;
    }
    return 4;
}

std::vector<int> summarize_space(std::span<const InstanceReport> reports) {
    std::vector<int> out;
    out.reserve(reports.size());
    for (const auto& r : reports) out.push_back(space_type(r.verdict));
    return out;
}

InstanceReport run_instance(const SignedGraph& g, const PipelineConfig& config, const InstanceMeta& meta,
                            const std::optional<fs::path>& artifact_dir) {
    InstanceReport report;
    report.meta = meta;
    report.n = g.n();
    report.m = g.edge_count();
    report.threshold = config.classify.threshold;

    const auto optimum = stage("solve", report.timings.solve, [&] { return solve_optimum(g, config.solver); });

    SolverConfig enumeration = config.solver;
    if (enumeration.time_limit)
        enumeration.time_limit = std::max(0.0, *enumeration.time_limit - report.timings.solve);
    SolutionSpace space = stage("enumerate", report.timings.enumerate,
                                [&] { return enumerate_optima(g, optimum.optimum, enumeration); });
    space.stats.nodes_optimum = optimum.stats.nodes_optimum;

    const double eps = 1e-9 * std::max(1.0, g.total_weight());
    if (space.solutions.empty()) throw CrossCheckError("enumerate: no solution attains the proven optimum");
    for (const auto& p : space.solutions)
        if (std::fabs(imbalance(g, p) - space.optimum) > eps)
            throw CrossCheckError("enumerate: a listed solution does not attain the optimum");

    const std::size_t threads = config.solver.thread_count;
    const auto distances = stage("distances", report.timings.distances,
                                 [&] { return dissimilarity_matrix(space, threads); });

    ClassifyOptions classify = config.classify;
    classify.vertex_count = g.n();
    classify.threads = threads;
    const auto clustering = stage("classify", report.timings.classify, [&] { return select_k(distances, classify); });

    const auto cores = stage("coreparts", report.timings.coreparts, [&] { return class_core_report(space, clustering); });

    report.optimum = space.optimum;
    report.optimum_ratio = report.m ? space.optimum / static_cast<double>(report.m) : 0.0;
    report.solution_count = space.solutions.size();
    report.complete = space.complete;
    report.lower_bound = !space.complete;
    double module_total = 0.0;
    for (const auto& p : space.solutions) {
        ++report.module_counts[p.module_count()];
        module_total += static_cast<double>(p.module_count());
    }
    report.mean_module_count = module_total / static_cast<double>(space.solutions.size());

    report.verdict = clustering.verdict;
    report.space_type = space_type(clustering.verdict);
    report.k = clustering.k;
    report.silhouette = clustering.silhouette;
    report.silhouette_by_k = clustering.silhouette_by_k;
    report.kmax_used = clustering.kmax_used;
    report.diameter = clustering.diameter;
    report.tight_diameter = clustering.tight_diameter;
    report.class_sizes.assign(clustering.k, 0);
    for (auto c : clustering.assignment) ++report.class_sizes[c];

    report.class_core_fractions = cores.class_fractions;
    double fraction_total = 0.0;
    for (double f : cores.class_fractions) fraction_total += f;
    report.mean_class_core_fraction = fraction_total / static_cast<double>(cores.class_fractions.size());
    report.overall_core_fraction = cores.overall_fraction;
    report.core_tie = cores.overall.tie;
    for (const auto& c : cores.classes) report.core_tie = report.core_tie || c.tie;

    if (artifact_dir) {
        fs::create_directories(*artifact_dir);
        io::write_graph(*artifact_dir / "graph.txt", g);
        if (meta.planted) io::write_partition(*artifact_dir / "planted.txt", *meta.planted);
        io::write_solutions(*artifact_dir / "solutions.txt", space);
        {
            std::ofstream out(*artifact_dir / "distances.csv");
            write_dissimilarity_csv(out, distances);
        }
        io::write_file_atomic(*artifact_dir / "classification.json", dump(clustering_to_json(clustering, classify)));
        io::write_file_atomic(*artifact_dir / "coreparts.json", dump(core_report_to_json(cores, clustering.assignment)));
        io::write_file_atomic(*artifact_dir / "report.json", dump(report_to_json(report)));
        io::write_file_atomic(*artifact_dir / "timings.json", dump(timings_to_json(report.timings)));

        const auto persisted = io::read_solutions(*artifact_dir / "solutions.txt");
        if (persisted.solutions.size() != report.solution_count)
            throw CrossCheckError("persisted solutions file disagrees with the report count");
        if (std::fabs(imbalance(g, persisted.solutions.front()) - report.optimum) > eps)
            throw CrossCheckError("persisted first solution does not attain the reported optimum");
    }
    return report;
}

Json report_to_json(const InstanceReport& r) {
    Json instance{{"name", r.meta.name}, {"n", r.n}, {"m", r.m}, {"replication", r.meta.replication}};
    if (r.meta.generator) {
        const auto& gc = *r.meta.generator;
        instance["generator"] = Json{{"n", gc.n}, {"l0", gc.l0}, {"qm", gc.qm}, {"seed", gc.seed}};
    } else {
        instance["generator"] = nullptr;
    }
    instance["misplaced_count"] = r.meta.misplaced_count ? Json(*r.meta.misplaced_count) : Json(nullptr);

    Json module_counts = Json::object();
    for (const auto& [modules, count] : r.module_counts) module_counts[std::to_string(modules)] = count;

    Json by_k = Json::array();
    for (const auto& [k, s] : r.silhouette_by_k) by_k.push_back(Json{{"k", k}, {"silhouette", s}});

    return Json{
        {"instance", instance},
        {"optimum", {{"imbalance_count", r.optimum}, {"imbalance_ratio", r.optimum_ratio}}},
        {"solutions",
         {{"count", r.solution_count},
          {"complete", r.complete},
          {"bound", r.lower_bound ? "LOWER_BOUND" : "EXACT"},
          {"module_counts", module_counts},
          {"mean_module_count", r.mean_module_count}}},
        {"classification",
         {{"verdict", std::string(to_string(r.verdict))},
          {"space_type", r.space_type},
          {"k", r.k},
          {"silhouette", r.silhouette ? Json(*r.silhouette) : Json(nullptr)},
          {"silhouette_by_k", by_k},
          {"kmax", r.kmax_used},
          {"threshold", r.threshold},
          {"diameter", r.diameter},
          {"tight_diameter", r.tight_diameter},
          {"class_sizes", r.class_sizes}}},
        {"core_parts",
         {{"class_fractions", r.class_core_fractions},
          {"mean_class_fraction", r.mean_class_core_fraction},
          {"overall_fraction", r.overall_core_fraction},
          {"tie", r.core_tie}}},
    };
}

Json timings_to_json(const StageTimings& t) {
    return Json{{"solve", t.solve},
                {"enumerate", t.enumerate},
                {"distances", t.distances},
                {"classify", t.classify},
                {"coreparts", t.coreparts}};
}

InstanceReport report_from_json(const Json& j) {
    InstanceReport r;
    try {
        const auto& instance = j.at("instance");
        r.meta.name = instance.at("name").get<std::string>();
        r.meta.replication = instance.at("replication").get<std::size_t>();
        r.n = instance.at("n").get<std::size_t>();
        r.m = instance.at("m").get<std::size_t>();
        if (!instance.at("generator").is_null()) {
            const auto& g = instance.at("generator");
            r.meta.generator = GeneratorConfig{g.at("n").get<std::size_t>(), g.at("l0").get<std::size_t>(),
                                               g.at("qm").get<double>(), g.at("seed").get<std::uint64_t>()};
        }
        if (!instance.at("misplaced_count").is_null())
            r.meta.misplaced_count = instance.at("misplaced_count").get<std::size_t>();

        r.optimum = j.at("optimum").at("imbalance_count").get<double>();
        r.optimum_ratio = j.at("optimum").at("imbalance_ratio").get<double>();

        const auto& sol = j.at("solutions");
        r.solution_count = sol.at("count").get<std::size_t>();
        r.complete = sol.at("complete").get<bool>();
        r.lower_bound = sol.at("bound").get<std::string>() == "LOWER_BOUND";
        for (const auto& [key, value] : sol.at("module_counts").items())
            r.module_counts[std::stoul(key)] = value.get<std::size_t>();
        r.mean_module_count = sol.at("mean_module_count").get<double>();

        const auto& cl = j.at("classification");
        r.verdict = verdict_from_string(cl.at("verdict").get<std::string>());
        r.space_type = cl.at("space_type").get<int>();
        r.k = cl.at("k").get<std::size_t>();
        if (!cl.at("silhouette").is_null()) r.silhouette = cl.at("silhouette").get<double>();
        for (const auto& e : cl.at("silhouette_by_k"))
            r.silhouette_by_k.emplace_back(e.at("k").get<std::size_t>(), e.at("silhouette").get<double>());
        r.kmax_used = cl.at("kmax").get<std::size_t>();
        r.threshold = cl.at("threshold").get<double>();
        r.diameter = cl.at("diameter").get<double>();
        r.tight_diameter = cl.at("tight_diameter").get<double>();
        r.class_sizes = cl.at("class_sizes").get<std::vector<std::size_t>>();

        const auto& cp = j.at("core_parts");
        r.class_core_fractions = cp.at("class_fractions").get<std::vector<double>>();
        r.mean_class_core_fraction = cp.at("mean_class_fraction").get<double>();
        r.overall_core_fraction = cp.at("overall_fraction").get<double>();
        r.core_tie = cp.at("tie").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance report: ") + e.what());
    }
    return r;
}

Json clustering_to_json(const ClusteringResult& result, const ClassifyOptions& options) {
    Json by_k = Json::array();
    for (const auto& [k, s] : result.silhouette_by_k) by_k.push_back(Json{{"k", k}, {"silhouette", s}});
    return Json{{"verdict", std::string(to_string(result.verdict))},
                {"k", result.k},
                {"silhouette", result.silhouette ? Json(*result.silhouette) : Json(nullptr)},
                {"silhouette_by_k", by_k},
                {"threshold", options.threshold},
                {"kmax", result.kmax_used},
                {"diameter", result.diameter},
                {"tight_diameter", result.tight_diameter},
                {"medoids", result.medoids},
                {"assignment", result.assignment}};
}

std::vector<std::size_t> assignment_from_json(const Json& j) {
    try {
        return j.at("assignment").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("classification document has no valid assignment: ") + e.what());
    }
}

Json core_report_to_json(const CoreReport& report, std::span<const std::size_t> assignment) {
    Json classes = Json::array();
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        std::size_t members = 0;
        for (auto a : assignment) members += (a == c);
        Json entry = core_to_json(report.classes[c], report.n);
        entry["class"] = c;
        entry["solutions"] = members;
        classes.push_back(std::move(entry));
    }
    return Json{{"n", report.n}, {"classes", classes}, {"overall", core_to_json(report.overall, report.n)}};
}

std::uint64_t instance_seed(std::uint64_t base, std::size_t n, std::size_t l0, double qm, std::size_t replication) {
    return combine_seeds({base, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(l0),
                          static_cast<std::uint64_t>(std::llround(qm * 1e6)), static_cast<std::uint64_t>(replication)});
}

CellSummary summarize_cell(std::size_t n, std::size_t l0, double qm, std::span<const InstanceReport> reports,
                           std::size_t failures) {
    CellSummary s;
    s.n = n;
    s.l0 = l0;
    s.qm = qm;
    s.replications = reports.size();
    s.failures = failures;
    if (reports.empty()) return s;
    double solutions = 0.0, ratio = 0.0, modules = 0.0, class_core = 0.0, overall_core = 0.0;
    std::size_t single = 0;
    for (const auto& r : reports) {
        solutions += static_cast<double>(r.solution_count);
        s.max_solutions = std::max(s.max_solutions, r.solution_count);
        s.truncated += r.lower_bound;
        ratio += r.optimum_ratio;
        modules += r.mean_module_count;
        ++s.type_counts[static_cast<std::size_t>(r.space_type - 1)];
        if (r.solution_count > 1) {
            ++s.multi_solution;
            single += r.verdict == Verdict::SingleClass;
            class_core += r.mean_class_core_fraction;
            overall_core += r.overall_core_fraction;
        }
    }
    const auto count = static_cast<double>(reports.size());
    s.mean_solutions = solutions / count;
    s.mean_imbalance_ratio = ratio / count;
    s.mean_module_count = modules / count;
    if (s.multi_solution) {
        const auto multi = static_cast<double>(s.multi_solution);
        s.single_class_proportion = static_cast<double>(single) / multi;
        s.mean_class_core_fraction = class_core / multi;
        s.mean_overall_core_fraction = overall_core / multi;
    }
    return s;
}

std::string summary_csv(std::span<const CellSummary> cells) {
    std::ostringstream out;
    out << "n,l0,qm,defined,replications,failures,mean_solutions,max_solutions,truncated,mean_imbalance_ratio,"
           "mean_module_count,multi_solution_instances,single_class_proportion,mean_class_core_fraction,"
           "mean_overall_core_fraction,type1,type2,type3,type4\n";
    for (const auto& c : cells) {
        out << c.n << ',' << c.l0 << ',' << csv_number(c.qm) << ',' << (c.defined ? 1 : 0) << ',';
        if (!c.defined) {
            out << "0,0,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA\n";
            continue;
        }
        out << c.replications << ',' << c.failures << ',' << csv_number(c.mean_solutions) << ',' << c.max_solutions
            << ',' << c.truncated << ',' << csv_number(c.mean_imbalance_ratio) << ','
            << csv_number(c.mean_module_count) << ',' << c.multi_solution << ','
            << csv_optional(c.single_class_proportion) << ',' << csv_optional(c.mean_class_core_fraction) << ','
            << csv_optional(c.mean_overall_core_fraction);
        for (auto t : c.type_counts) out << ',' << t;
        out << '\n';
    }
    return out.str();
}

std::size_t imbalance_bin(const InstanceReport& report) {
    if (report.m == 0) return 0;
    const double rounded = std::round(report.optimum);
    if (rounded == report.optimum)
        return static_cast<std::size_t>(rounded) * 20 / report.m;
    return static_cast<std::size_t>(std::floor(20.0 * report.optimum_ratio + 1e-12));
}

std::string imbalance_bins_csv(std::span<const InstanceReport> reports) {
    struct Bin {
        std::size_t instances = 0;
        double solutions = 0.0;
        std::size_t max_solutions = 0;
        std::size_t multi = 0;
        std::size_t single = 0;
        double class_core = 0.0;
        std::array<std::size_t, 4> types{};
    };
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Bin> bins;
    for (const auto& r : reports) {
        const std::size_t l0 = r.meta.generator ? r.meta.generator->l0 : 0;
        Bin& b = bins[{l0, r.n, imbalance_bin(r)}];
        ++b.instances;
        b.solutions += static_cast<double>(r.solution_count);
        b.max_solutions = std::max(b.max_solutions, r.solution_count);
        ++b.types[static_cast<std::size_t>(r.space_type - 1)];
        if (r.solution_count > 1) {
            ++b.multi;
            b.single += r.verdict == Verdict::SingleClass;
            b.class_core += r.mean_class_core_fraction;
        }
    }
    std::ostringstream out;
    out << "l0,n,bin_lo,bin_hi,instances,mean_solutions,max_solutions,multi_solution_instances,"
           "single_class_proportion,mean_class_core_fraction,type1,type2,type3,type4\n";
    for (const auto& [key, b] : bins) {
        const auto [l0, n, bin] = key;
        out << l0 << ',' << n << ',' << csv_number(0.05 * static_cast<double>(bin)) << ','
            << csv_number(0.05 * static_cast<double>(bin + 1)) << ',' << b.instances << ','
            << csv_number(b.solutions / static_cast<double>(b.instances)) << ',' << b.max_solutions << ',' << b.multi
            << ',';
        if (b.multi)
            out << csv_number(static_cast<double>(b.single) / static_cast<double>(b.multi)) << ','
                << csv_number(b.class_core / static_cast<double>(b.multi));
        else
            out << "NA,NA";
        for (auto t : b.types) out << ',' << t;
        out << '\n';
    }
    return out.str();
}

namespace {

struct CellWork {
    std::size_t n = 0;
    std::size_t l0 = 0;
    double qm = 0.0;
    bool defined = true;
    bool loaded = false;
    fs::path dir;
    std::vector<std::optional<InstanceReport>> reports;
    std::vector<std::string> errors;
    std::atomic<std::size_t> remaining{0};
};

std::string cell_name(std::size_t n, std::size_t l0, double qm) {
    return "n" + std::to_string(n) + "_l" + std::to_string(l0) + "_qm" + io::format_significant(qm, 6);
}

void load_cell(CellWork& cell) {
    std::ifstream in(cell.dir / "reports.jsonl");
    if (!in) throw ParseError("cell " + cell.dir.string() + " is marked done but has no reports.jsonl");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const Json j = Json::parse(line);
        const auto rep = j.at("replication").get<std::size_t>();
        if (rep >= cell.reports.size()) throw ParseError("replication index out of range in " + cell.dir.string());
        if (j.contains("error"))
            cell.errors[rep] = j.at("error").get<std::string>();
        else
            cell.reports[rep] = report_from_json(j.at("report"));
    }
}

void store_cell(const CellWork& cell, const std::vector<StageTimings>& timings) {
    std::string lines;
    std::string timing_lines = "replication,solve,enumerate,distances,classify,coreparts\n";
    for (std::size_t rep = 0; rep < cell.reports.size(); ++rep) {
        Json j{{"replication", rep}};
        if (cell.reports[rep])
            j["report"] = report_to_json(*cell.reports[rep]);
        else
            j["error"] = cell.errors[rep];
        lines += j.dump() + "\n";
        const auto& t = timings[rep];
        timing_lines += std::to_string(rep) + "," + csv_number(t.solve) + "," + csv_number(t.enumerate) + "," +
                        csv_number(t.distances) + "," + csv_number(t.classify) + "," + csv_number(t.coreparts) + "\n";
    }
    io::write_file_atomic(cell.dir / "reports.jsonl", lines);
    io::write_file_atomic(cell.dir / "timings.csv", timing_lines);
    io::write_file_atomic(cell.dir / "done", "done\n");
}

}  // namespace

GridResult run_grid(const ExperimentGrid& grid, const fs::path& out_dir) {
    if (grid.replications == 0) throw ParameterError("grid needs at least one replication");
    if (grid.n_values.empty() || grid.l0_values.empty() || grid.qm_values.empty())
        throw ParameterError("grid axes must not be empty");

    std::vector<std::unique_ptr<CellWork>> cells;
    for (std::size_t n : grid.n_values)
        for (std::size_t l0 : grid.l0_values)
            for (double qm : grid.qm_values) {
                auto cell = std::make_unique<CellWork>();
                cell->n = n;
                cell->l0 = l0;
                cell->qm = qm;
                cell->defined = l0 >= 1 && l0 <= n && qm >= 0.0 && qm <= max_qm(n, l0) + 1e-9;
                cell->dir = out_dir / "cells" / cell_name(n, l0, qm);
                cell->reports.resize(grid.replications);
                cell->errors.resize(grid.replications);
                if (cell->defined && fs::exists(cell->dir / "done")) {
                    load_cell(*cell);
                    cell->loaded = true;
                }
                cells.push_back(std::move(cell));
            }

    struct Task {
        CellWork* cell;
        std::size_t replication;
    };
    std::vector<Task> tasks;
    for (auto& cell : cells) {
        if (!cell->defined || cell->loaded) continue;
        cell->remaining = grid.replications;
        for (std::size_t rep = 0; rep < grid.replications; ++rep) tasks.push_back({cell.get(), rep});
    }

    std::map<CellWork*, std::vector<StageTimings>> timings;
    for (const auto& t : tasks) timings[t.cell].resize(grid.replications);
    std::mutex store_mutex;

    PipelineConfig pipeline = grid.pipeline;
    pipeline.solver.thread_count = 1;
    parallel_for(tasks.size(), grid.threads, [&](std::size_t i) {
        CellWork& cell = *tasks[i].cell;
        const std::size_t rep = tasks[i].replication;
        const GeneratorConfig gc{cell.n, cell.l0, cell.qm, instance_seed(grid.base_seed, cell.n, cell.l0, cell.qm, rep)};
        try {
            const auto instance = generate(gc);
            InstanceMeta meta;
            meta.name = cell_name(cell.n, cell.l0, cell.qm) + "_r" + std::to_string(rep);
            meta.generator = gc;
            meta.misplaced_count = instance.misplaced_count;
            meta.planted = instance.planted;
            meta.replication = rep;
            std::optional<fs::path> artifacts;
            if (grid.keep_artifacts) artifacts = cell.dir / ("rep_" + std::to_string(rep));
            auto report = run_instance(instance.graph, pipeline, meta, artifacts);
            timings[&cell][rep] = report.timings;
            cell.reports[rep] = std::move(report);
        } catch (const std::exception& e) {
            cell.errors[rep] = e.what();
        }
        if (--cell.remaining == 0) {
            std::lock_guard lock(store_mutex);
            store_cell(cell, timings[&cell]);
        }
    });

    GridResult result;
    std::string manifest = "n,l0,qm,status,replications,failures,path\n";
    for (const auto& cell : cells) {
        std::vector<InstanceReport> reports;
        std::size_t failures = 0;
        if (cell->defined)
            for (std::size_t rep = 0; rep < grid.replications; ++rep) {
                if (cell->reports[rep])
                    reports.push_back(*cell->reports[rep]);
                else
                    ++failures;
            }
        CellSummary summary = summarize_cell(cell->n, cell->l0, cell->qm, reports, failures);
        summary.defined = cell->defined;
        result.cells.push_back(summary);
        manifest += std::to_string(cell->n) + "," + std::to_string(cell->l0) + "," + csv_number(cell->qm) + "," +
                    (cell->defined ? "done" : "undefined") + "," + std::to_string(summary.replications) + "," +
                    std::to_string(failures) + "," +
                    (cell->defined ? fs::relative(cell->dir, out_dir).generic_string() : std::string()) + "\n";
        for (auto& r : reports) result.reports.push_back(std::move(r));
    }

    io::write_file_atomic(out_dir / "manifest.csv", manifest);
    io::write_file_atomic(out_dir / "summary.csv", summary_csv(result.cells));
    io::write_file_atomic(out_dir / "imbalance_bins.csv", imbalance_bins_csv(result.reports));
    return result;
}

}  // namespace ccspace
