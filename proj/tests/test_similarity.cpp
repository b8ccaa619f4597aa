#include <gtest/gtest.h>

#include "mtcompare/similarity.hpp"
#include "test_support.hpp"

using namespace mtcompare;
using namespace mtcompare::testing;

TEST(Overlap, CellsMatchOracleAndDiagonalIsHundred) {
    Rng rng(17);
    std::vector<SystemOutput> systems;
    for (int i = 0; i < 4; ++i) {
        systems.push_back({"s" + std::to_string(i), i < 2 ? Paradigm::NMT : Paradigm::PBMT,
                           random_corpus(rng, 8, 0, 7)});
    }
    const auto m = pairwise_overlap(systems);
    ASSERT_EQ(m.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(m(i, i), 100.0);
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_NEAR(m(i, j), oracle_chrf(systems[i].corpus, systems[j].corpus), 1e-9);
            EXPECT_NEAR(m(i, j), m(j, i), 1e-9);
        }
    }
}

TEST(Overlap, NeedsTwoSystems) {
    EXPECT_THROW(pairwise_overlap({}), std::invalid_argument);
    EXPECT_THROW(pairwise_overlap({{"a", Paradigm::NMT, {}}}), std::invalid_argument);
}

TEST(GroupAverages, MeansOverUnorderedPairs) {
    OverlapMatrix m(4);
    // Paradigms N N P P. Fill only the upper triangle so the lower one is
    // visibly ignored.
    m(0, 1) = 50;
    m(2, 3) = 70;
    m(0, 2) = 10;
    m(0, 3) = 20;
    m(1, 2) = 30;
    m(1, 3) = 40;
    const auto g = group_averages(m, {Paradigm::NMT, Paradigm::NMT, Paradigm::PBMT, Paradigm::PBMT});
    EXPECT_DOUBLE_EQ(*g.nmt_nmt.mean, 50.0);
    EXPECT_DOUBLE_EQ(*g.pbmt_pbmt.mean, 70.0);
    EXPECT_DOUBLE_EQ(*g.cross.mean, 25.0);
    EXPECT_EQ(g.cross.pairs, 4u);

    const auto one = group_averages(OverlapMatrix(2), {Paradigm::NMT, Paradigm::PBMT});
    EXPECT_FALSE(one.nmt_nmt.mean.has_value());
    EXPECT_FALSE(one.pbmt_pbmt.mean.has_value());
    EXPECT_EQ(one.cross.pairs, 1u);
}
