#include <gtest/gtest.h>

#include "ccspace/errors.hpp"
#include "ccspace/generator.hpp"
#include "ccspace/objective.hpp"
#include "ccspace/rng.hpp"
#include "ccspace/solver.hpp"
#include "oracles.hpp"

using namespace ccspace;

TEST(Rng, SplitMixReferenceOutput) {
    std::uint64_t state = 0;
    EXPECT_EQ(splitmix64(state), 0xE220A8397B1DCDAFull);
    EXPECT_EQ(state, 0x9E3779B97F4A7C15ull);
}

TEST(Rng, EngineIsStandardMersenneTwister) {
    Rng rng(5489);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = rng.next();
    EXPECT_EQ(v, 9981545732273789042ull);
}

TEST(Rng, CombineSeedsIsOrderSensitive) {
    EXPECT_NE(combine_seeds({1, 2, 3}), combine_seeds({3, 2, 1}));
    EXPECT_EQ(combine_seeds({1, 2, 3}), combine_seeds({1, 2, 3}));
    EXPECT_NE(combine_seeds({1, 2}), combine_seeds({1, 2, 0}));
}

TEST(Rng, BelowAndUnitStayInRange) {
    Rng rng(7);
    std::vector<int> hist(5, 0);
    for (int i = 0; i < 50000; ++i) {
        const auto v = rng.below(5);
        ASSERT_LT(v, 5u);
        ++hist[v];
        const double u = rng.unit();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    for (int h : hist) EXPECT_NEAR(h, 10000, 500);
    EXPECT_EQ(rng.below(1), 0u);
}

TEST(GenerateBalanced, FourVerticesTwoModules) {
    const auto inst = generate_balanced(4, 2);
    EXPECT_EQ(inst.planted.membership(), (std::vector<Label>{0, 0, 1, 1}));
    EXPECT_EQ(inst.graph.sign(0, 1), 1);
    EXPECT_EQ(inst.graph.sign(2, 3), 1);
    for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}}) EXPECT_EQ(inst.graph.sign(i, j), -1);
    EXPECT_EQ(inst.misplaced_count, 0u);
    EXPECT_DOUBLE_EQ(imbalance(inst.graph, inst.planted), 0.0);
}

TEST(GenerateBalanced, NearEqualSizes) {
    EXPECT_EQ(generate_balanced(5, 2).planted.module_sizes(), (std::vector<std::size_t>{3, 2}));
    EXPECT_EQ(generate_balanced(16, 3).planted.module_sizes(), (std::vector<std::size_t>{6, 5, 5}));
    EXPECT_EQ(generate_balanced(3, 3).planted.module_count(), 3u);
    EXPECT_THROW(generate_balanced(3, 4), ParameterError);
    EXPECT_THROW(generate_balanced(3, 0), ParameterError);
}

TEST(GenerateBalanced, SolverRecoversPlantedPartition) {
    for (std::size_t n = 1; n <= 9; ++n)
        for (std::size_t l0 = 1; l0 <= n; ++l0) {
            const auto inst = generate_balanced(n, l0);
            const auto space = solve_all(inst.graph);
            EXPECT_DOUBLE_EQ(space.optimum, 0.0);
            ASSERT_EQ(space.solutions.size(), 1u);
            EXPECT_EQ(space.solutions[0], inst.planted);
        }
}

TEST(MaxQm, DirectCounts) {
    EXPECT_DOUBLE_EQ(max_qm(4, 2), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(max_qm(4, 1), 0.0);
    // 8+8: 56 positive, 64 negative of 120.
    EXPECT_DOUBLE_EQ(max_qm(16, 2), 112.0 / 120.0);
    EXPECT_GE(max_qm(16, 2), 0.90);
}

TEST(MisplacedTarget, RoundsToEvenCount) {
    EXPECT_EQ(misplaced_target(6, 1.0 / 3.0), 2u);
    EXPECT_EQ(misplaced_target(120, 0.05), 6u);
    EXPECT_EQ(misplaced_target(120, 0.85), 102u);
    EXPECT_EQ(misplaced_target(120, 0.0), 0u);
}

TEST(IntroduceImbalance, ZeroLeavesGraphUnchanged) {
    const auto base = generate_balanced(9, 3);
    const auto out = introduce_imbalance(base, 0.0, 4);
    EXPECT_EQ(out.graph, base.graph);
    EXPECT_EQ(out.misplaced_count, 0u);
}

TEST(IntroduceImbalance, SmallCaseSwapsOnePair) {
    const auto base = generate_balanced(4, 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto out = introduce_imbalance(base, 1.0 / 3.0, seed);
        std::size_t changed = 0;
        for (std::size_t k = 0; k < 6; ++k) changed += out.graph.signs()[k] != base.graph.signs()[k];
        EXPECT_EQ(changed, 2u);
        EXPECT_EQ(out.misplaced_count, 2u);
        EXPECT_DOUBLE_EQ(imbalance(out.graph, out.planted), 2.0);
    }
}

TEST(IntroduceImbalance, RejectsOutOfRange) {
    const auto base = generate_balanced(4, 2);
    EXPECT_THROW(introduce_imbalance(base, 0.7, 1), ParameterError);
    EXPECT_THROW(introduce_imbalance(base, -0.1, 1), ParameterError);
    EXPECT_NO_THROW(introduce_imbalance(base, 2.0 / 3.0, 1));
    EXPECT_THROW(generate({4, 1, 0.1, 1}), ParameterError);
}

TEST(IntroduceImbalance, PreservesCountsAndFlipsHalfOfEachKind) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 15;
        const std::size_t l0 = 1 + rng() % n;
        const double qm = max_qm(n, l0) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const auto base = generate_balanced(n, l0);
        const auto out = introduce_imbalance(base, qm, rng());
        EXPECT_EQ(out.graph.positive_edge_count(), base.graph.positive_edge_count());
        EXPECT_EQ(out.graph.edge_count(), base.graph.edge_count());
        EXPECT_EQ(out.misplaced_count, misplaced_target(base.graph.edge_count(), qm));
        EXPECT_EQ(out.misplaced_count % 2, 0u);
        EXPECT_DOUBLE_EQ(imbalance(out.graph, out.planted), static_cast<double>(out.misplaced_count));
        std::size_t lost_positive = 0, lost_negative = 0;
        for (std::size_t k = 0; k < base.graph.edge_count(); ++k)
            if (out.graph.signs()[k] != base.graph.signs()[k]) (base.graph.signs()[k] > 0 ? lost_positive : lost_negative)++;
        EXPECT_EQ(lost_positive, lost_negative);
        EXPECT_EQ(lost_positive * 2, out.misplaced_count);
    }
}

TEST(Generate, DeterministicPerSeed) {
    const GeneratorConfig c{16, 2, 0.45, 99};
    const auto a = generate(c);
    const auto b = generate(c);
    EXPECT_EQ(a.graph, b.graph);
    EXPECT_EQ(a.planted, b.planted);
    auto other = c;
    other.seed = 100;
    EXPECT_NE(generate(other).graph, a.graph);
}

TEST(Generate, DetectedOptimumNeverExceedsMisplacedCount) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = generate({10, 2, 0.3, seed});
        const auto opt = solve_optimum(inst.graph);
        EXPECT_LE(opt.optimum, static_cast<double>(inst.misplaced_count));
    }
}

TEST(Generate, TwelveVerticesThreeModulesBalanced) {
    const auto inst = generate({12, 3, 0.0, 5});
    const auto space = solve_all(inst.graph);
    EXPECT_DOUBLE_EQ(space.optimum, 0.0);
    ASSERT_EQ(space.solutions.size(), 1u);
    EXPECT_EQ(space.solutions[0], inst.planted);
}

TEST(Generate, LowImbalanceSixteenVerticesIsMostlyUnique) {
    std::size_t unique = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto inst = generate({16, 2, 0.05, seed});
        const auto space = solve_all(inst.graph);
        unique += space.solutions.size() == 1;
    }
    EXPECT_GE(unique, 98u);
}
