#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mtcompare/corpus.hpp"

namespace mtcompare {

enum class ScoreScale { Percent, Fraction };
enum class ScoreLevel { Segment, Corpus };

struct MetricScore {
    double value = 0.0;
    ScoreScale scale = ScoreScale::Percent;
    ScoreLevel level = ScoreLevel::Corpus;
};

// ---------------------------------------------------------------------------
// chrF1

inline constexpr std::size_t kChrfMaxOrder = 6;

// Sufficient statistics for chrF over one or more segments: per order the
// number of hypothesis n-grams, reference n-grams, and clipped matches.
struct ChrfStats {
    std::array<double, kChrfMaxOrder> hyp{};
    std::array<double, kChrfMaxOrder> ref{};
    std::array<double, kChrfMaxOrder> match{};

    ChrfStats &operator+=(const ChrfStats &other);
};

// Character n-gram statistics of a segment pair. Tokens are concatenated
// without separators and n-grams are taken over Unicode code points.
ChrfStats chrf_stats(const Segment &hyp, const Segment &ref);

// Mean F1 over orders 1..6, x100. An order is skipped only when neither
// side has an n-gram of that order; if every order is skipped the pair is
// two empty strings and scores 100.
double chrf_from_stats(const ChrfStats &stats);

struct ChrfResult {
    MetricScore corpus;
    std::vector<double> segments;
};

ChrfResult chrf1(const Corpus &hypothesis, const Corpus &reference);
double chrf1_segment(const Segment &hyp, const Segment &ref);

// Corpus chrF restricted to a subset of segment indices (repeats allowed).
double chrf1_subset(std::span<const ChrfStats> per_segment, std::span<const std::size_t> indices);

// ---------------------------------------------------------------------------
// WER

enum class EditOp { Match, Substitution, Insertion, Deletion };

struct EditScript {
    std::vector<EditOp> hyp_labels; // Match | Substitution | Insertion
    std::vector<EditOp> ref_labels; // Match | Substitution | Deletion
    std::size_t distance = 0;

    double wer() const;
    std::size_t count_hyp(EditOp op) const;
    std::size_t count_ref(EditOp op) const;
};

// Unit-cost Levenshtein alignment. On backtrace ties the preference is
// match, substitution, deletion, insertion.
EditScript wer_align(const Segment &hyp, const Segment &ref);

// ---------------------------------------------------------------------------
// Position-independent errors

struct PerErrors {
    std::vector<bool> hyp; // hPER error flags
    std::vector<bool> ref; // rPER error flags

    std::size_t hyp_errors() const;
    std::size_t ref_errors() const;
};

// Bag-of-words matching: each hypothesis token, left to right, consumes the
// leftmost unconsumed identical reference token.
PerErrors per_errors(const Segment &hyp, const Segment &ref);

// ---------------------------------------------------------------------------
// BLEU

inline constexpr std::size_t kBleuMaxOrder = 4;

struct BleuStats {
    std::array<double, kBleuMaxOrder> match{};
    std::array<double, kBleuMaxOrder> total{};
    double hyp_len = 0;
    double ref_len = 0;

    BleuStats &operator+=(const BleuStats &other);
};

BleuStats bleu_stats(const Segment &hyp, const Segment &ref);

struct BleuResult {
    MetricScore score;
    std::array<double, kBleuMaxOrder> precisions{};
    double brevity_penalty = 0.0;
    // Some order had no matching n-gram, so the unsmoothed score is 0.
    bool zero_match = false;
};

BleuResult bleu_from_stats(const BleuStats &stats);
BleuResult bleu(const Corpus &hypothesis, const Corpus &reference);
double bleu_subset(std::span<const BleuStats> per_segment, std::span<const std::size_t> indices);

} // namespace mtcompare
