#include <algorithm>

#include <gtest/gtest.h>

#include "mtcompare/corpus.hpp"
#include "mtcompare/error.hpp"
#include "mtcompare/utf8.hpp"
#include "test_support.hpp"

using namespace mtcompare;
using namespace mtcompare::testing;

namespace {

bool mentions(const std::vector<Violation> &vs, std::string_view needle) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation &v) { return v.message.find(needle) != std::string::npos; });
}

EvalBundle small_bundle() {
    EvalBundle b;
    b.source = parse_corpus("s1 s2\ns3\n", "source");
    b.reference = parse_corpus("r1 r2\nr3\n", "reference");
    b.systems.push_back({"n1", Paradigm::NMT, parse_corpus("a b\nc\n", "n1")});
    b.systems.push_back({"p1", Paradigm::PBMT, parse_corpus("a\nc d\n", "p1")});
    return b;
}

} // namespace

TEST(Corpus, SplitsOnWhitespaceRuns) {
    EXPECT_EQ(split_tokens("  a\tb   c "), (Segment{"a", "b", "c"}));
    EXPECT_TRUE(split_tokens("   ").empty());
}

TEST(Corpus, FinalNewlineDoesNotAddASegmentButBlankLinesCount) {
    const auto c = parse_corpus("a b\n\nc\n", "x");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_TRUE(c.segments[1].empty());
    EXPECT_EQ(c.token_count(), 3u);
    EXPECT_EQ(parse_corpus("a\r\nb", "x").segments[0], (Segment{"a"}));
}

TEST(Corpus, RoundTripsThroughText) {
    Rng rng(1);
    const auto c = random_corpus(rng, 20, 0, 6);
    const auto again = parse_corpus(format_corpus(c), c.name);
    EXPECT_EQ(again.segments, c.segments);
}

TEST(Corpus, RejectsInvalidUtf8WithLocation) {
    try {
        parse_corpus("ok\nbad \xff here\n", "x", "file.txt");
        FAIL() << "expected InputError";
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("file.txt:2"), std::string::npos) << e.what();
    }
}

TEST(Utf8, DecodeAndValidate) {
    EXPECT_EQ(utf8::decode("aü€"), (std::u32string{U'a', U'ü', U'€'}));
    EXPECT_FALSE(utf8::find_invalid("aü€").has_value());
    EXPECT_EQ(utf8::find_invalid("ab\xc3"), std::optional<std::size_t>(2));
    EXPECT_EQ(utf8::decode("a\xff"), (std::u32string{U'a', U'�'}));
}

TEST(Paradigm, ParsesBothTags) {
    EXPECT_EQ(parse_paradigm("NMT"), Paradigm::NMT);
    EXPECT_EQ(parse_paradigm("PBMT"), Paradigm::PBMT);
    EXPECT_THROW(parse_paradigm("SMT"), InputError);
}

TEST(Alignments, ParseSortsAndDeduplicates) {
    const auto src = parse_corpus("a b c\nd\n", "source");
    const auto tgt = parse_corpus("x y\nz\n", "target");
    const auto set = parse_alignments("2-0 0-1 0-1\n\n", src, tgt);
    ASSERT_EQ(set.size(), 2u);
    EXPECT_EQ(set.segments[0], (SegmentLinks{{0, 1}, {2, 0}}));
    EXPECT_TRUE(set.segments[1].empty());
    EXPECT_EQ(parse_alignments(format_alignments(set), src, tgt).segments, set.segments);
}

TEST(Alignments, ErrorsNameTheProblem) {
    const auto src = parse_corpus("a b\n", "source");
    const auto tgt = parse_corpus("x\n", "target");
    auto message = [&](std::string_view text) {
        try {
            parse_alignments(text, src, tgt, "al");
        } catch (const InputError &e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message("0-0\n0-0\n").find("2 alignment lines"), std::string::npos);
    EXPECT_NE(message("0:0\n").find("malformed link '0:0'"), std::string::npos);
    EXPECT_NE(message("1-1\n").find("link '1-1' out of range"), std::string::npos);
    EXPECT_NE(message("-1-0\n").find("malformed"), std::string::npos);
}

TEST(Stems, BindChecksTokenParallelism) {
    auto b = small_bundle();
    EXPECT_NO_THROW(b = bind_stems(b, "n1", parse_corpus("A B\nC\n", "n1")));
    EXPECT_EQ(b.stems.at("n1").segments[0], (Segment{"A", "B"}));
    try {
        bind_stems(b, "p1", parse_corpus("A\nC\n", "p1"));
        FAIL();
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("segment 1: 2 tokens vs 1 stems"), std::string::npos) << e.what();
    }
    EXPECT_THROW(bind_stems(b, "nope", parse_corpus("x\n", "nope")), InputError);
}

TEST(Validation, CleanBundlePasses) {
    auto b = small_bundle();
    b.alignments["reference"] = {{{}, {}}};
    b.alignments["n1"] = {{{}, {}}};
    b.alignments["p1"] = {{{}, {}}};
    b.lm_training = parse_corpus("a b c\n", "lm");
    ValidationOptions opt;
    opt.analyses = {all_analyses().begin(), all_analyses().end()};
    EXPECT_TRUE(validate_bundle(b, opt).empty());
}

TEST(Validation, SegmentCountMismatchIsReported) {
    auto b = small_bundle();
    b.systems[1].corpus.segments.pop_back();
    const auto v = validate_bundle(b, {{Analysis::Overall}, "", "", false});
    EXPECT_TRUE(mentions(v, "system 'p1' has 1 segments, reference has 2"));
}

TEST(Validation, ReorderingWithoutAlignmentsIsReported) {
    auto b = small_bundle();
    const auto v = validate_bundle(b, {{Analysis::Reordering}, "", "", false});
    EXPECT_TRUE(mentions(v, "alignments required"));
    EXPECT_TRUE(mentions(v, "'reference'"));
    // Other analyses do not need alignments.
    EXPECT_TRUE(validate_bundle(b, {{Analysis::Similarity}, "", "", false}).empty());
}

TEST(Validation, PrimarySystemsMustExistWithTheRightParadigm) {
    auto b = small_bundle();
    EXPECT_TRUE(mentions(validate_bundle(b, {{Analysis::Length}, "p1", "", false}), "is tagged PBMT"));
    EXPECT_TRUE(mentions(validate_bundle(b, {{Analysis::Length}, "zz", "", false}), "'zz' not found"));
    b.systems.pop_back();
    EXPECT_TRUE(mentions(validate_bundle(b, {{Analysis::Length}, "", "", false}), "no PBMT system"));
}

TEST(Validation, MiscellaneousProblems) {
    auto b = small_bundle();
    b.reference.segments[1].clear();
    b.systems.push_back({"n1", Paradigm::NMT, b.systems[0].corpus});
    b.systems.push_back({"reference", Paradigm::NMT, b.systems[0].corpus});
    const auto v = validate_bundle(b, {{Analysis::Fluency}, "", "", false});
    EXPECT_TRUE(mentions(v, "reference segment 1 is empty"));
    EXPECT_TRUE(mentions(v, "duplicate system id 'n1'"));
    EXPECT_TRUE(mentions(v, "reserved"));
    EXPECT_TRUE(mentions(v, "fluency needs LM scores"));
    EXPECT_FALSE(mentions(validate_bundle(b, {{Analysis::Fluency}, "", "", true}), "fluency needs"));
}

TEST(Analyses, NamesRoundTrip) {
    for (const auto a : all_analyses()) EXPECT_EQ(parse_analysis(to_string(a)), a);
    EXPECT_EQ(parse_analysis("reorder"), Analysis::Reordering);
    EXPECT_FALSE(parse_analysis("bogus").has_value());
}
