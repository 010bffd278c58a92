// ccspace: exact correlation clustering and solution-space analysis from the command line.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ccspace/errors.hpp"
#include "ccspace/io.hpp"
#include "ccspace/objective.hpp"
#include "ccspace/partition_metrics.hpp"
#include "ccspace/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ccspace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitCrossCheck = 4;

struct Globals {
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::string out_dir;
};

fs::path output_root(const Globals& g) {
    if (!g.out_dir.empty()) return g.out_dir;
    if (const char* env = std::getenv("CCSPACE_OUT"); env && *env) return env;
    return "ccspace_out";
}

// Empty path or "-" means stdout.
void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    io::write_file_atomic(p, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void print_search_stats(const SolutionSpace& space) {
    std::fprintf(stderr, "optimum %s, %zu solution(s)%s, nodes %llu + %llu, %.3f s\n",
                 io::format_number(space.optimum).c_str(), space.solutions.size(),
                 space.complete ? "" : " (incomplete)",
                 static_cast<unsigned long long>(space.stats.nodes_optimum),
                 static_cast<unsigned long long>(space.stats.nodes_enumeration), space.stats.seconds);
    if (!space.diagnostic.empty()) std::fprintf(stderr, "%s\n", space.diagnostic.c_str());
}

struct GenerateArgs {
    std::size_t n = 16;
    std::size_t l0 = 2;
    double qm = 0.0;
    std::size_t count = 0;
    std::string output;
    std::string planted;
};

int cmd_generate(const Globals& globals, const GenerateArgs& a) {
    if (a.count == 0) {
        const auto inst = generate({a.n, a.l0, a.qm, globals.seed});
        std::ostringstream graph;
        io::write_graph(graph, inst.graph);
        emit(a.output, graph.str());
        if (!a.planted.empty()) {
            std::ostringstream planted;
            io::write_partition(planted, inst.planted);
            emit(a.planted, planted.str());
        }
        std::fprintf(stderr, "misplaced %zu of %zu pairs\n", inst.misplaced_count, inst.graph.edge_count());
        return kExitOk;
    }

    const fs::path dir = output_root(globals) / "instances";
    fs::create_directories(dir);
    std::string manifest = "name,n,l0,qm,replication,seed,misplaced,graph,planted\n";
    for (std::size_t rep = 0; rep < a.count; ++rep) {
        const auto seed = instance_seed(globals.seed, a.n, a.l0, a.qm, rep);
        const auto inst = generate({a.n, a.l0, a.qm, seed});
        char name[64];
        std::snprintf(name, sizeof name, "r%04zu", rep);
        const std::string graph_file = std::string(name) + ".graph.txt";
        const std::string planted_file = std::string(name) + ".planted.txt";
        io::write_graph(dir / graph_file, inst.graph);
        io::write_partition(dir / planted_file, inst.planted);
        manifest += std::string(name) + "," + std::to_string(a.n) + "," + std::to_string(a.l0) + "," +
                    io::format_significant(a.qm, 12) + "," + std::to_string(rep) + "," + std::to_string(seed) + "," +
                    std::to_string(inst.misplaced_count) + "," + graph_file + "," + planted_file + "\n";
    }
    io::write_file_atomic(dir / "manifest.csv", manifest);
    std::fprintf(stderr, "wrote %zu instances to %s\n", a.count, dir.string().c_str());
    return kExitOk;
}

struct SolveArgs {
    std::string graph;
    std::string output;
    std::size_t limit = SolverConfig{}.enumeration_limit;
    double time_limit = 0.0;
    bool enumerate = false;
};

SolverConfig solver_config(const Globals& globals, std::size_t limit, double time_limit) {
    SolverConfig c;
    c.enumeration_limit = limit;
    c.thread_count = globals.threads;
    if (time_limit > 0.0) c.time_limit = time_limit;
    return c;
}

int cmd_solve(const Globals& globals, const SolveArgs& a) {
    const auto g = io::read_graph(fs::path(a.graph));
    const auto config = solver_config(globals, a.limit, a.time_limit);
    if (!a.enumerate) {
        // One witness, not a proven-complete listing.
        const auto opt = solve_optimum(g, config);
        SolutionSpace space;
        space.optimum = opt.optimum;
        space.solutions.push_back(opt.witness);
        space.stats = opt.stats;
        std::ostringstream out;
        io::write_solutions(out, space);
        emit(a.output, out.str());
        print_search_stats(space);
        return kExitOk;
    }
    const auto space = solve_all(g, config);
    std::ostringstream out;
    io::write_solutions(out, space);
    emit(a.output, out.str());
    print_search_stats(space);
    return kExitOk;
}

int cmd_oracle(const SolveArgs& a) {
    const auto g = io::read_graph(fs::path(a.graph));
    const auto space = brute_force_optima(g);
    std::ostringstream out;
    io::write_solutions(out, space);
    emit(a.output, out.str());
    return kExitOk;
}

struct DistanceArgs {
    std::string solutions;
    std::string output;
};

int cmd_distances(const Globals& globals, const DistanceArgs& a) {
    const auto space = io::read_solutions(fs::path(a.solutions));
    const auto d = dissimilarity_matrix(space, globals.threads);
    std::ostringstream out;
    write_dissimilarity_csv(out, d);
    emit(a.output, out.str());
    return kExitOk;
}

struct ClassifyArgs {
    std::string distances;
    std::string output;
    std::size_t vertices = 0;
    double threshold = kReasonableSilhouette;
    std::size_t kmax = ClassifyOptions{}.kmax;
};

int cmd_classify(const Globals& globals, const ClassifyArgs& a) {
    std::ifstream in(a.distances);
    if (!in) throw ParseError("cannot open " + a.distances);
    const auto d = read_dissimilarity_csv(in);
    ClassifyOptions options;
    options.threshold = a.threshold;
    options.kmax = a.kmax;
    options.vertex_count = a.vertices;
    options.threads = globals.threads;
    const auto result = select_k(d, options);
    emit(a.output, dump(clustering_to_json(result, options)));
    return kExitOk;
}

struct CoreArgs {
    std::string solutions;
    std::string assignment;
    std::string output;
};

int cmd_coreparts(const CoreArgs& a) {
    const auto space = io::read_solutions(fs::path(a.solutions));
    std::vector<std::size_t> assignment(space.solutions.size(), 0);
    if (!a.assignment.empty()) {
        Json j;
        try {
            j = Json::parse(io::read_file(a.assignment));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("cannot parse ") + a.assignment + ": " + e.what());
        }
        assignment = assignment_from_json(j);
    }
    const auto report = class_core_report(space.solutions, assignment);
    emit(a.output, dump(core_report_to_json(report, assignment)));
    return kExitOk;
}

struct RunArgs {
    std::string graph;
    GenerateArgs gen;
    std::string name;
    std::size_t limit = kPipelineEnumerationLimit;
    double time_limit = 0.0;
    double threshold = kReasonableSilhouette;
    std::size_t kmax = ClassifyOptions{}.kmax;
};

int cmd_run(const Globals& globals, const RunArgs& a) {
    PipelineConfig config;
    config.solver = solver_config(globals, a.limit, a.time_limit);
    config.classify.threshold = a.threshold;
    config.classify.kmax = a.kmax;

    InstanceMeta meta;
    std::optional<SignedGraph> graph;
    if (!a.graph.empty()) {
        graph = io::read_graph(fs::path(a.graph));
        meta.name = a.name.empty() ? fs::path(a.graph).stem().string() : a.name;
    } else {
        const GeneratorConfig gc{a.gen.n, a.gen.l0, a.gen.qm, globals.seed};
        auto inst = generate(gc);
        graph = std::move(inst.graph);
        meta.generator = gc;
        meta.misplaced_count = inst.misplaced_count;
        meta.planted = std::move(inst.planted);
        meta.name = a.name.empty() ? "generated" : a.name;
    }
    const fs::path dir = output_root(globals) / "runs" / meta.name;
    const auto report = run_instance(*graph, config, meta, dir);
    std::cout << dump(report_to_json(report));
    std::fprintf(stderr, "artifacts in %s\n", dir.string().c_str());
    return kExitOk;
}

struct GridArgs {
    std::vector<std::size_t> n;
    std::vector<std::size_t> l0;
    std::vector<double> qm;
    std::size_t reps = ExperimentGrid{}.replications;
    std::size_t limit = kPipelineEnumerationLimit;
    double time_limit = 0.0;
    double threshold = kReasonableSilhouette;
    bool keep = false;
};

int cmd_grid(const Globals& globals, const GridArgs& a) {
    ExperimentGrid grid;
    if (!a.n.empty()) grid.n_values = a.n;
    if (!a.l0.empty()) grid.l0_values = a.l0;
    if (!a.qm.empty()) grid.qm_values = a.qm;
    grid.replications = a.reps;
    grid.base_seed = globals.seed;
    grid.threads = globals.threads;
    grid.keep_artifacts = a.keep;
    grid.pipeline.solver.enumeration_limit = a.limit;
    if (a.time_limit > 0.0) grid.pipeline.solver.time_limit = a.time_limit;
    grid.pipeline.classify.threshold = a.threshold;

    const fs::path dir = output_root(globals) / "grid";
    fs::create_directories(dir);
    const auto result = run_grid(grid, dir);
    std::size_t failures = 0;
    for (const auto& c : result.cells) failures += c.failures;
    std::cout << summary_csv(result.cells);
    std::fprintf(stderr, "%zu cells, %zu instances, %zu failures; results in %s\n", result.cells.size(),
                 result.reports.size(), failures, dir.string().c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact correlation clustering with full optimal-solution enumeration and solution-space analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--seed", globals.seed, "Base random seed")->capture_default_str();
    app.add_option("--threads", globals.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--out-dir", globals.out_dir, "Output root (default: $CCSPACE_OUT, else ./ccspace_out)");

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Generate a planted-partition signed graph");
    generate_cmd->add_option("-n,--n", gen.n, "Vertex count")->capture_default_str();
    generate_cmd->add_option("--l0", gen.l0, "Planted module count")->capture_default_str();
    generate_cmd->add_option("--qm", gen.qm, "Proportion of misplaced pairs")->capture_default_str();
    generate_cmd->add_option("--count", gen.count, "Write this many seeded replications under <out-dir>/instances");
    generate_cmd->add_option("-o,--out", gen.output, "Graph file (default stdout)");
    generate_cmd->add_option("--planted", gen.planted, "Write the planted partition here");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Find the optimum imbalance and list every optimal partition");
    solve_cmd->add_option("--graph", solve.graph, "Graph file")->required();
    solve_cmd->add_flag("--enumerate", solve.enumerate, "List every optimal partition, not just one");
    solve_cmd->add_option("-o,--out", solve.output, "Solutions file (default stdout)");
    solve_cmd->add_option("--limit", solve.limit, "Maximum number of solutions kept")->capture_default_str();
    solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds per search phase (0 = none)");

    SolveArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force every partition (small graphs only)");
    oracle_cmd->add_option("--graph", oracle.graph, "Graph file")->required();
    oracle_cmd->add_option("-o,--out", oracle.output, "Solutions file (default stdout)");

    DistanceArgs dist;
    auto* dist_cmd = app.add_subcommand("distances", "Pairwise variation of information between solutions");
    dist_cmd->add_option("--solutions", dist.solutions, "Solutions file")->required();
    dist_cmd->add_option("-o,--out", dist.output, "CSV matrix (default stdout)");

    ClassifyArgs cls;
    auto* classify_cmd = app.add_subcommand("classify", "Cluster solutions and classify the solution space");
    classify_cmd->add_option("--distances", cls.distances, "CSV distance matrix")->required();
    classify_cmd->add_option("--vertices", cls.vertices, "Vertex count of the graph; needed for the diameter rule");
    classify_cmd->add_option("--threshold", cls.threshold, "Silhouette threshold")->capture_default_str();
    classify_cmd->add_option("--kmax", cls.kmax, "Largest number of classes tried")->capture_default_str();
    classify_cmd->add_option("-o,--out", cls.output, "JSON output (default stdout)");

    CoreArgs core;
    auto* core_cmd = app.add_subcommand("coreparts", "Core parts of each solution class");
    core_cmd->add_option("--solutions", core.solutions, "Solutions file")->required();
    core_cmd->add_option("--assignment", core.assignment, "Classification JSON (default: one class)");
    core_cmd->add_option("-o,--out", core.output, "JSON output (default stdout)");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Full pipeline on one instance");
    run_cmd->add_option("--graph", run.graph, "Graph file; otherwise an instance is generated");
    run_cmd->add_option("-n,--n", run.gen.n, "Vertex count when generating")->capture_default_str();
    run_cmd->add_option("--l0", run.gen.l0, "Planted module count when generating")->capture_default_str();
    run_cmd->add_option("--qm", run.gen.qm, "Misplaced proportion when generating")->capture_default_str();
    run_cmd->add_option("--name", run.name, "Instance name (artifact directory)");
    run_cmd->add_option("--limit", run.limit, "Maximum number of solutions kept")->capture_default_str();
    run_cmd->add_option("--time-limit", run.time_limit, "Seconds per search phase (0 = none)");
    run_cmd->add_option("--threshold", run.threshold, "Silhouette threshold")->capture_default_str();
    run_cmd->add_option("--kmax", run.kmax, "Largest number of classes tried")->capture_default_str();

    GridArgs grid;
    auto* grid_cmd = app.add_subcommand("grid", "Batch experiment over n x l0 x qm cells");
    grid_cmd->add_option("--n", grid.n, "Vertex counts")->delimiter(',');
    grid_cmd->add_option("--l0", grid.l0, "Planted module counts")->delimiter(',');
    grid_cmd->add_option("--qm", grid.qm, "Misplaced proportions")->delimiter(',');
    grid_cmd->add_option("--reps", grid.reps, "Replications per cell")->capture_default_str();
    grid_cmd->add_option("--limit", grid.limit, "Maximum number of solutions kept")->capture_default_str();
    grid_cmd->add_option("--time-limit", grid.time_limit, "Seconds per search phase (0 = none)");
    grid_cmd->add_option("--threshold", grid.threshold, "Silhouette threshold")->capture_default_str();
    grid_cmd->add_flag("--keep-artifacts", grid.keep, "Keep per-instance artifact directories");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*generate_cmd) return cmd_generate(globals, gen);
        if (*solve_cmd) return cmd_solve(globals, solve);
        if (*oracle_cmd) return cmd_oracle(oracle);
        if (*dist_cmd) return cmd_distances(globals, dist);
        if (*classify_cmd) return cmd_classify(globals, cls);
        if (*core_cmd) return cmd_coreparts(core);
        if (*run_cmd) return cmd_run(globals, run);
        if (*grid_cmd) return cmd_grid(globals, grid);
    } catch (const IncompleteSearchError& e) {
        std::fprintf(stderr, "error: %s (best upper %s, best lower %s)\n", e.what(),
                     io::format_number(e.best_upper()).c_str(), io::format_number(e.best_lower()).c_str());
        return kExitResource;
    } catch (const GuardError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResource;
    } catch (const CrossCheckError& e) {
        std::fprintf(stderr, "cross-check failed: %s\n", e.what());
        return kExitCrossCheck;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
    return kExitBadInput;
}
