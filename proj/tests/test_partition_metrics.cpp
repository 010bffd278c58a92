#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ccspace/errors.hpp"
#include "ccspace/partition_metrics.hpp"
#include "oracles.hpp"

using namespace ccspace;

namespace {

Partition P(std::vector<int> m) { return Partition::canonicalize(std::span<const int>(m)); }

Partition random_partition(std::mt19937_64& rng, std::size_t n) {
    return P(oracle::random_membership(rng, n, static_cast<int>(rng() % n)));
}

}  // namespace

TEST(Entropy, ReferenceValues) {
    EXPECT_DOUBLE_EQ(entropy(Partition::single_module(5)), 0.0);
    EXPECT_DOUBLE_EQ(entropy(P({0, 0, 1, 1})), std::log(2.0));
    // Frozen from the direct formula: -(1/4 ln 1/4 + 3/4 ln 3/4).
    EXPECT_NEAR(entropy(P({0, 1, 1, 1})), 0.5623351446188083, 1e-15);
    EXPECT_NEAR(entropy(Partition::singletons(7)), std::log(7.0), 1e-15);
}

TEST(Entropy, MatchesDirectFormula) {
    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_partition(rng, 1 + rng() % 20);
        EXPECT_NEAR(entropy(p), oracle::entropy(oracle::to_membership(p)), 1e-12);
    }
}

TEST(VariationOfInformation, ReferenceValues) {
    // Frozen from the contingency-table evaluation.
    EXPECT_NEAR(variation_of_information(P({0, 0, 1, 1}), P({0, 1, 1, 1})), 0.8239592165010822, 1e-14);
    for (std::size_t n : {1u, 2u, 5u, 16u})
        EXPECT_NEAR(variation_of_information(Partition::single_module(n), Partition::singletons(n)),
                    std::log(static_cast<double>(n)), 1e-14);
}

TEST(VariationOfInformation, IdentityIsExactlyZero) {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_partition(rng, 1 + rng() % 20);
        EXPECT_EQ(variation_of_information(p, p), 0.0);
    }
}

TEST(VariationOfInformation, MatchesContingencyOracleAndBounds) {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const auto p = random_partition(rng, n);
        const auto q = random_partition(rng, n);
        const double v = variation_of_information(p, q);
        EXPECT_NEAR(v, oracle::variation_of_information(oracle::to_membership(p), oracle::to_membership(q)), 1e-12);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, std::log(static_cast<double>(n)) + 1e-12);
        EXPECT_EQ(v == 0.0, p == q);
        EXPECT_NEAR(v, entropy(p) + entropy(q) - 2.0 * mutual_information(p, q), 1e-12);
    }
}

TEST(VariationOfInformation, LabelPermutationInvariance) {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 15;
        const auto a = oracle::random_membership(rng, n, 4);
        const auto b = oracle::random_membership(rng, n, 4);
        std::vector<int> sigma{0, 1, 2, 3, 4}, tau{0, 1, 2, 3, 4};
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::shuffle(tau.begin(), tau.end(), rng);
        std::vector<int> a2, b2;
        for (std::size_t i = 0; i < n; ++i) {
            a2.push_back(sigma[static_cast<std::size_t>(a[i])]);
            b2.push_back(tau[static_cast<std::size_t>(b[i])]);
        }
        EXPECT_EQ(variation_of_information(P(a), P(b)), variation_of_information(P(a2), P(b2)));
    }
}

TEST(VariationOfInformation, LengthMismatchThrows) {
    EXPECT_THROW(variation_of_information(Partition::single_module(3), Partition::single_module(4)), DimensionError);
}

TEST(DissimilarityMatrix, SingleSolution) {
    const std::vector<Partition> one{P({0, 1, 0})};
    const auto d = dissimilarity_matrix(one);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d(0, 0), 0.0);
    EXPECT_EQ(d.element_count(), 3u);
}

TEST(DissimilarityMatrix, InvariantsOnRandomSpaces) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + rng() % 8;
        std::set<Partition> distinct;
        while (distinct.size() < 12) distinct.insert(random_partition(rng, n));
        const std::vector<Partition> sols(distinct.begin(), distinct.end());
        const auto d = dissimilarity_matrix(sols, 1 + trial % 3);
        for (std::size_t i = 0; i < sols.size(); ++i) {
            EXPECT_EQ(d(i, i), 0.0);
            for (std::size_t j = 0; j < sols.size(); ++j) {
                EXPECT_EQ(d(i, j), d(j, i));
                if (i != j) EXPECT_GT(d(i, j), 0.0);
                EXPECT_LE(d(i, j), std::log(static_cast<double>(n)) + 1e-12);
                EXPECT_DOUBLE_EQ(d(i, j), variation_of_information(sols[i], sols[j]));
                for (std::size_t r = 0; r < sols.size(); ++r) EXPECT_LE(d(i, r), d(i, j) + d(j, r) + 1e-12);
            }
        }
    }
}

TEST(DissimilarityMatrix, ThreadCountInvariant) {
    std::mt19937_64 rng(103);
    std::vector<Partition> sols;
    for (int i = 0; i < 40; ++i) sols.push_back(random_partition(rng, 12));
    const auto a = dissimilarity_matrix(sols, 1);
    const auto b = dissimilarity_matrix(sols, 4);
    for (std::size_t i = 0; i < sols.size(); ++i)
        for (std::size_t j = 0; j < sols.size(); ++j) EXPECT_EQ(a(i, j), b(i, j));
}

TEST(DissimilarityMatrix, Errors) {
    EXPECT_THROW(dissimilarity_matrix(std::vector<Partition>{}), ParameterError);
    const std::vector<Partition> mixed{Partition::single_module(3), Partition::single_module(4)};
    EXPECT_THROW(dissimilarity_matrix(mixed), DimensionError);
}

TEST(DissimilarityMatrix, CsvRoundTrip) {
    const std::vector<Partition> sols{P({0, 0, 1, 1}), P({0, 1, 1, 1}), P({0, 1, 2, 3})};
    const auto d = dissimilarity_matrix(sols);
    std::stringstream s;
    write_dissimilarity_csv(s, d);
    const auto back = read_dissimilarity_csv(s);
    ASSERT_EQ(back.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(back(i, j), d(i, j), 1e-11);
    // VI(pairs, singletons) = ln 2.
    EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "0,0.823959216501,0.69314718056");
}

TEST(DissimilarityMatrix, CsvRejectsMalformedInput) {
    std::istringstream ragged("0,1\n1\n");
    EXPECT_THROW(read_dissimilarity_csv(ragged), ParseError);
    std::istringstream asymmetric("0,1\n2,0\n");
    EXPECT_THROW(read_dissimilarity_csv(asymmetric), ParseError);
    std::istringstream diagonal("1,1\n1,0\n");
    EXPECT_THROW(read_dissimilarity_csv(diagonal), ParseError);
    std::istringstream negative("0,-1\n-1,0\n");
    EXPECT_THROW(read_dissimilarity_csv(negative), ParseError);
}
