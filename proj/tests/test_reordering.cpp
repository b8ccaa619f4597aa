#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "mtcompare/error.hpp"
#include "mtcompare/reordering.hpp"
#include "test_support.hpp"

using namespace mtcompare;
using namespace mtcompare::testing;

namespace {

// Rank of each source word by counting the words that sort before it on
// (key, index), where key is the smallest aligned target index of the
// nearest aligned word at or left of it, or -1.
std::vector<std::size_t> oracle_permutation(const SegmentLinks &links, std::size_t n) {
    std::vector<long> key(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k-- > 0;) {
            long best = -1;
            for (const auto &l : links)
                if (l.src == k && (best < 0 || static_cast<long>(l.tgt) < best)) best = static_cast<long>(l.tgt);
            if (best >= 0) {
                key[i] = best;
                break;
            }
        }
    }
    std::vector<std::size_t> ranks(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (key[j] < key[i] || (key[j] == key[i] && j < i)) ++ranks[i];
    return ranks;
}

Permutation perm(std::vector<std::size_t> r) { return Permutation{std::move(r)}; }

} // namespace

TEST(Permutation, FromAlignmentExamples) {
    EXPECT_EQ(alignment_to_permutation({{0, 2}, {2, 0}}, 3).ranks, (std::vector<std::size_t>{1, 2, 0}));
    EXPECT_EQ(alignment_to_permutation({}, 4), Permutation::identity(4));
    // Unaligned leading word keeps key -1 and stays first.
    EXPECT_EQ(alignment_to_permutation({{1, 0}}, 2).ranks, (std::vector<std::size_t>{0, 1}));
    // Many-to-one: word 0 links to 3 and 1, keyed by 1.
    EXPECT_EQ(alignment_to_permutation({{0, 3}, {0, 1}, {1, 0}}, 2).ranks, (std::vector<std::size_t>{1, 0}));
    EXPECT_THROW(alignment_to_permutation({{5, 0}}, 2), std::invalid_argument);
}

TEST(Permutation, RandomAlignmentsMatchOracleAndAreBijections) {
    Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = uniform(rng, 0, 12);
        const auto m = uniform(rng, 1, 12);
        SegmentLinks links;
        for (std::size_t k = 0, count = uniform(rng, 0, 2 * n); n > 0 && k < count; ++k)
            links.push_back({uniform(rng, 0, n - 1), uniform(rng, 0, m - 1)});
        std::sort(links.begin(), links.end());
        links.erase(std::unique(links.begin(), links.end()), links.end());
        const auto p = alignment_to_permutation(links, n);
        ASSERT_TRUE(p.is_bijection());
        ASSERT_EQ(p.ranks, oracle_permutation(links, n));
    }
}

TEST(Kendall, HandExamples) {
    EXPECT_DOUBLE_EQ(kendall_similarity(perm({1, 0, 2, 3})), 1.0 - 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(kendall_similarity(perm({3, 2, 1, 0})), 0.0);
    EXPECT_DOUBLE_EQ(kendall_similarity(perm({})), 1.0);
    EXPECT_DOUBLE_EQ(kendall_similarity(perm({0})), 1.0);
    EXPECT_DOUBLE_EQ(relative_kendall(perm({1, 0, 2}), perm({0, 1, 2})), 1.0 - 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(relative_kendall(perm({2, 0, 1}), perm({2, 0, 1})), 1.0);
}

TEST(Kendall, ExhaustiveSmallPermutationsMatchPairCounter) {
    for (std::size_t n = 0; n <= 6; ++n) {
        auto a = iota_vec(n);
        do {
            ASSERT_EQ(discordant_pairs(perm(a), Permutation::identity(n)), oracle_discordant(a, iota_vec(n)));
            ASSERT_DOUBLE_EQ(kendall_similarity(perm(a)), oracle_kendall(a, iota_vec(n)));
        } while (std::next_permutation(a.begin(), a.end()));
    }
}

TEST(Kendall, RandomPairsMatchPairCounterAndAreSymmetric) {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = uniform(rng, 0, 64);
        const auto a = random_permutation(rng, n);
        const auto b = random_permutation(rng, n);
        ASSERT_EQ(discordant_pairs(perm(a), perm(b)), oracle_discordant(a, b));
        ASSERT_DOUBLE_EQ(relative_kendall(perm(a), perm(b)), relative_kendall(perm(b), perm(a)));
        const double s = relative_kendall(perm(a), perm(b));
        ASSERT_GE(s, 0.0);
        ASSERT_LE(s, 1.0);
    }
}

TEST(Kendall, LengthMismatchThrows) {
    EXPECT_THROW(relative_kendall(perm({0, 1}), perm({0})), std::invalid_argument);
}

TEST(ReorderingReport, MacroAveragesSentenceSimilarities) {
    EvalBundle b;
    b.source = parse_corpus("a b c\nd e\n", "source");
    b.reference = parse_corpus("x y z\nv w\n", "reference");
    b.systems.push_back({"n", Paradigm::NMT, b.reference});
    b.systems.push_back({"p", Paradigm::PBMT, b.reference});
    b.alignments["reference"] = parse_alignments("0-0 1-1 2-2\n0-1 1-0\n", b.source, b.reference);
    b.alignments["n"] = parse_alignments("0-0 1-1 2-2\n0-1 1-0\n", b.source, b.reference);
    b.alignments["p"] = parse_alignments("0-2 1-1 2-0\n0-0 1-1\n", b.source, b.reference);
    const auto r = reordering_report(b, "n", "p", {200, 0.05, 1});
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_EQ(r.rows[0].id, "reference");
    EXPECT_FALSE(r.rows[0].vs_reference.has_value());
    EXPECT_DOUBLE_EQ(r.rows[0].vs_monotone, (1.0 + 0.0) / 2);
    EXPECT_DOUBLE_EQ(*r.rows[1].vs_reference, 1.0);
    EXPECT_DOUBLE_EQ(r.rows[2].vs_monotone, (0.0 + 1.0) / 2);
    EXPECT_DOUBLE_EQ(*r.rows[2].vs_reference, (0.0 + 0.0) / 2);
    ASSERT_TRUE(r.significance.has_value());
    EXPECT_EQ(r.significance->wins_a, 200u);

    b.alignments.erase("p");
    EXPECT_THROW(reordering_report(b, "n", "p", {}), InputError);
}
