#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "ccspace/errors.hpp"
#include "ccspace/io.hpp"
#include "ccspace/objective.hpp"
#include "ccspace/pipeline.hpp"
#include "oracles.hpp"

using namespace ccspace;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ccspace_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) { return io::read_file(p); }

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t lines = 0;
    std::string s;
    while (std::getline(in, s)) ++lines;
    return lines;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CCSPACE_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentGrid small_grid() {
    ExperimentGrid g;
    g.n_values = {6, 9};
    g.l0_values = {2, 3};
    g.qm_values = {0.05, 0.45, 0.85};
    g.replications = 4;
    g.base_seed = 7;
    return g;
}

}  // namespace

TEST(SpaceType, MapsVerdicts) {
    EXPECT_EQ(space_type(Verdict::UniqueSolution), 1);
    EXPECT_EQ(space_type(Verdict::SingleClass), 2);
    EXPECT_EQ(space_type(Verdict::MultiClass), 3);
    EXPECT_EQ(space_type(Verdict::Inconclusive), 4);
    std::vector<InstanceReport> reports(2);
    reports[1].verdict = Verdict::MultiClass;
    EXPECT_EQ(summarize_space(reports), (std::vector<int>{1, 3}));
}

TEST(RunInstance, BalancedInstance) {
    const auto inst = generate_balanced(10, 3);
    const auto r = run_instance(inst.graph, PipelineConfig{});
    EXPECT_EQ(r.solution_count, 1u);
    EXPECT_EQ(r.verdict, Verdict::UniqueSolution);
    EXPECT_EQ(r.space_type, 1);
    EXPECT_DOUBLE_EQ(r.overall_core_fraction, 1.0);
    EXPECT_DOUBLE_EQ(r.mean_class_core_fraction, 1.0);
    EXPECT_DOUBLE_EQ(r.optimum, 0.0);
    EXPECT_TRUE(r.complete);
    EXPECT_FALSE(r.lower_bound);
    EXPECT_EQ(r.module_counts.at(3), 1u);
}

TEST(RunInstance, MultiOptimumInstanceAgreesWithOracle) {
    // First seed giving several optima on ten vertices.
    std::optional<GeneratedInstance> found;
    for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
        auto inst = generate({10, 2, 0.45, seed});
        if (oracle::exhaustive_optima(inst.graph).solutions.size() > 2) found = std::move(inst);
    }
    ASSERT_TRUE(found.has_value());
    const auto expected = oracle::exhaustive_optima(found->graph);
    const auto r = run_instance(found->graph, PipelineConfig{});
    EXPECT_EQ(r.solution_count, expected.solutions.size());
    EXPECT_DOUBLE_EQ(r.optimum, expected.optimum);
    EXPECT_NE(r.verdict, Verdict::UniqueSolution);
    std::size_t total = 0;
    for (auto s : r.class_sizes) total += s;
    EXPECT_EQ(total, r.solution_count);
    EXPECT_EQ(r.class_sizes.size(), r.k);
    EXPECT_DOUBLE_EQ(r.optimum_ratio, r.optimum / 45.0);
}

TEST(RunInstance, ArtifactsAreConsistentAndDeterministic) {
    const auto dir = scratch("artifacts");
    const auto inst = generate({12, 2, 0.65, 3});
    InstanceMeta meta;
    meta.name = "x";
    meta.generator = GeneratorConfig{12, 2, 0.65, 3};
    meta.misplaced_count = inst.misplaced_count;
    meta.planted = inst.planted;
    const auto a = run_instance(inst.graph, PipelineConfig{}, meta, dir / "a");
    const auto b = run_instance(inst.graph, PipelineConfig{}, meta, dir / "b");
    for (const char* f : {"graph.txt", "planted.txt", "solutions.txt", "distances.csv", "classification.json",
                          "coreparts.json", "report.json", "timings.json"}) {
        ASSERT_TRUE(fs::exists(dir / "a" / f)) << f;
        if (std::string(f) != "timings.json") EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
    }
    EXPECT_EQ(line_count(dir / "a" / "solutions.txt"), a.solution_count + 1);
    EXPECT_EQ(line_count(dir / "a" / "distances.csv"), a.solution_count);
    const auto persisted = io::read_solutions(dir / "a" / "solutions.txt");
    EXPECT_DOUBLE_EQ(imbalance(inst.graph, persisted.solutions.front()), a.optimum);
    EXPECT_EQ(io::read_graph(dir / "a" / "graph.txt"), inst.graph);
    const auto report = Json::parse(slurp(dir / "a" / "report.json"));
    EXPECT_FALSE(report.contains("timings"));
    EXPECT_EQ(report["solutions"]["count"].get<std::size_t>(), b.solution_count);
    fs::remove_all(dir);
}

TEST(RunInstance, TruncationMarksLowerBound) {
    const auto inst = generate({14, 2, 0.85, 1});
    PipelineConfig c;
    c.solver.enumeration_limit = 2;
    const auto r = run_instance(inst.graph, c);
    ASSERT_EQ(r.solution_count, 2u);
    EXPECT_TRUE(r.lower_bound);
    EXPECT_FALSE(r.complete);
    EXPECT_EQ(report_to_json(r)["solutions"]["bound"], "LOWER_BOUND");
}

TEST(RunInstance, StageErrorsAreTagged) {
    std::mt19937_64 rng(191);
    const auto g = oracle::random_graph(rng, 40);
    PipelineConfig c;
    c.solver.time_limit = 0.0;
    try {
        run_instance(g, c);
        FAIL() << "expected IncompleteSearchError";
    } catch (const IncompleteSearchError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("solve: ", 0), 0u) << e.what();
    }
}

TEST(Report, JsonRoundTrip) {
    const auto inst = generate({9, 2, 0.45, 11});
    InstanceMeta meta;
    meta.name = "rt";
    meta.generator = GeneratorConfig{9, 2, 0.45, 11};
    meta.misplaced_count = inst.misplaced_count;
    meta.replication = 3;
    const auto r = run_instance(inst.graph, PipelineConfig{}, meta);
    const auto j = report_to_json(r);
    const auto back = report_from_json(j);
    EXPECT_EQ(report_to_json(back).dump(), j.dump());
    EXPECT_EQ(j["instance"]["generator"]["qm"].get<double>(), 0.45);
    EXPECT_EQ(j["optimum"]["imbalance_count"].get<double>(), r.optimum);
    EXPECT_THROW(report_from_json(Json::object()), ParseError);
}

TEST(Grid, SeedsAreStableAndDistinct) {
    EXPECT_EQ(instance_seed(1, 16, 2, 0.05, 0), instance_seed(1, 16, 2, 0.05, 0));
    std::set<std::uint64_t> seen;
    for (std::size_t rep = 0; rep < 50; ++rep)
        for (double qm : {0.05, 0.15, 0.25}) seen.insert(instance_seed(1, 16, 2, qm, rep));
    EXPECT_EQ(seen.size(), 150u);
    EXPECT_NE(instance_seed(1, 16, 2, 0.05, 0), instance_seed(2, 16, 2, 0.05, 0));
}

TEST(Grid, ImbalanceBinsAreLeftClosed) {
    InstanceReport r;
    r.m = 120;
    r.optimum = 6;
    r.optimum_ratio = 0.05;
    EXPECT_EQ(imbalance_bin(r), 1u);
    r.optimum = 5;
    r.optimum_ratio = 5.0 / 120.0;
    EXPECT_EQ(imbalance_bin(r), 0u);
    r.optimum = 18;
    r.optimum_ratio = 0.15;
    EXPECT_EQ(imbalance_bin(r), 3u);
}

TEST(Grid, UndefinedCellsAndSummaryColumns) {
    const auto dir = scratch("grid_undefined");
    const auto result = run_grid(small_grid(), dir);
    ASSERT_EQ(result.cells.size(), 12u);
    for (const auto& c : result.cells) {
        const bool reachable = c.qm <= max_qm(c.n, c.l0) + 1e-9;
        EXPECT_EQ(c.defined, reachable) << c.n << " " << c.l0 << " " << c.qm;
        if (c.defined) {
            EXPECT_EQ(c.replications + c.failures, 4u);
            EXPECT_EQ(c.type_counts[0] + c.type_counts[1] + c.type_counts[2] + c.type_counts[3], c.replications);
        }
    }
    const auto summary = slurp(dir / "summary.csv");
    EXPECT_EQ(summary.substr(0, summary.find('\n')),
              "n,l0,qm,defined,replications,failures,mean_solutions,max_solutions,truncated,mean_imbalance_ratio,"
              "mean_module_count,multi_solution_instances,single_class_proportion,mean_class_core_fraction,"
              "mean_overall_core_fraction,type1,type2,type3,type4");
    EXPECT_NE(summary.find("6,3,0.85,0,"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "manifest.csv"));
    EXPECT_TRUE(fs::exists(dir / "imbalance_bins.csv"));
    fs::remove_all(dir);
}

TEST(Grid, ThreadCountDoesNotChangeOutputs) {
    const auto one = scratch("grid_t1");
    const auto many = scratch("grid_t3");
    auto g = small_grid();
    run_grid(g, one);
    g.threads = 3;
    run_grid(g, many);
    for (const char* f : {"summary.csv", "manifest.csv", "imbalance_bins.csv"})
        EXPECT_EQ(slurp(one / f), slurp(many / f)) << f;
    for (const auto& entry : fs::recursive_directory_iterator(one / "cells")) {
        if (entry.path().filename() != "reports.jsonl") continue;
        const auto rel = fs::relative(entry.path(), one);
        EXPECT_EQ(slurp(entry.path()), slurp(many / rel)) << rel;
    }
    fs::remove_all(one);
    fs::remove_all(many);
}

TEST(Grid, ResumeSkipsFinishedCells) {
    const auto dir = scratch("grid_resume");
    const auto g = small_grid();
    run_grid(g, dir);
    const auto summary = slurp(dir / "summary.csv");
    // A finished cell keeps its files untouched on the next run.
    const fs::path cell = dir / "cells" / "n9_l2_qm0.45";
    ASSERT_TRUE(fs::exists(cell / "done"));
    io::write_file_atomic(cell / "timings.csv", "sentinel\n");
    // A cell without its marker is recomputed.
    const fs::path redo = dir / "cells" / "n6_l2_qm0.05";
    fs::remove(redo / "done");
    io::write_file_atomic(redo / "timings.csv", "sentinel\n");
    run_grid(g, dir);
    EXPECT_EQ(slurp(cell / "timings.csv"), "sentinel\n");
    EXPECT_NE(slurp(redo / "timings.csv"), "sentinel\n");
    EXPECT_EQ(slurp(dir / "summary.csv"), summary);
    fs::remove_all(dir);
}

TEST(Grid, RejectsEmptyAxes) {
    auto g = small_grid();
    g.replications = 0;
    EXPECT_THROW(run_grid(g, scratch("grid_bad")), ParameterError);
}

TEST(Cli, EndToEndAndExitCodes) {
    const auto dir = scratch("cli");
    const std::string d = dir.string();
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_EQ(run_cli("generate --n 10 --l0 2 --qm 0.45 --seed 4 --out " + d + "/g.txt --planted " + d + "/p.txt"), 0);
    EXPECT_EQ(run_cli("solve --graph " + d + "/g.txt --enumerate --out " + d + "/s.txt"), 0);
    EXPECT_EQ(run_cli("oracle --graph " + d + "/g.txt --out " + d + "/o.txt"), 0);
    EXPECT_EQ(slurp(dir / "s.txt"), slurp(dir / "o.txt"));
    EXPECT_EQ(run_cli("distances --solutions " + d + "/s.txt --out " + d + "/d.csv"), 0);
    EXPECT_EQ(run_cli("classify --distances " + d + "/d.csv --vertices 10 --out " + d + "/c.json"), 0);
    EXPECT_EQ(run_cli("coreparts --solutions " + d + "/s.txt --assignment " + d + "/c.json --out " + d + "/k.json"), 0);
    const auto classification = Json::parse(slurp(dir / "c.json"));
    EXPECT_TRUE(classification.contains("verdict"));
    const auto cores = Json::parse(slurp(dir / "k.json"));
    EXPECT_EQ(cores["classes"].size(), classification["k"].get<std::size_t>());

    EXPECT_EQ(run_cli("--out-dir " + d + "/runs run --n 8 --l0 2 --qm 0.3 --name r1"), 0);
    EXPECT_TRUE(fs::exists(dir / "runs" / "runs" / "r1" / "report.json"));
    EXPECT_EQ(run_cli("generate --n 8 --l0 2 --qm 0.3 --count 3 --out-dir " + d + "/batch"), 0);
    EXPECT_EQ(line_count(dir / "batch" / "instances" / "manifest.csv"), 4u);
    EXPECT_EQ(run_cli("grid --n 6 --l0 2 --qm 0.05,0.45 --reps 2 --out-dir " + d + "/grid"), 0);
    EXPECT_TRUE(fs::exists(dir / "grid" / "grid" / "summary.csv"));

    EXPECT_EQ(run_cli("solve --graph " + d + "/missing.txt"), 2);
    EXPECT_EQ(run_cli("generate --n 4 --l0 2 --qm 0.9"), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    {
        std::ofstream big(dir / "big.txt");
        io::write_graph(big, SignedGraph(14));
    }
    EXPECT_EQ(run_cli("oracle --graph " + d + "/big.txt"), 3);
    {
        std::mt19937_64 rng(5);
        std::ofstream hard(dir / "hard.txt");
        io::write_graph(hard, oracle::random_graph(rng, 40));
    }
    EXPECT_EQ(run_cli("solve --graph " + d + "/hard.txt --time-limit 0.01"), 3);
    fs::remove_all(dir);
}

TEST(Cli, EnvironmentSetsOutputRoot) {
    const auto dir = scratch("cli_env");
    const std::string cmd = "CCSPACE_OUT=" + dir.string() + " " + CCSPACE_CLI +
                            " generate --n 6 --l0 2 --qm 0.2 --count 1 > /dev/null 2>&1";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_TRUE(fs::exists(dir / "instances" / "manifest.csv"));
    fs::remove_all(dir);
}
