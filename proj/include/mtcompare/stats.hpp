#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mtcompare/corpus.hpp"

namespace mtcompare {

// ---------------------------------------------------------------------------
// Paired bootstrap resampling

struct BootstrapOptions {
    std::size_t iterations = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 42;
};

struct BootstrapResult {
    std::size_t wins_a = 0;
    std::size_t wins_b = 0;
    std::size_t ties = 0;
    std::size_t iterations = 0;
    double p_value = 1.0; // 1 - max(wins_a, wins_b) / iterations
    bool significant = false; // p_value < alpha
};

// Draws resamples of segment indices. mt19937_64 seeded directly with the
// seed; each index is the high 64 bits of (draw * n), which is portable
// across standard libraries unlike std::uniform_int_distribution.
class ResampleGenerator {
  public:
    ResampleGenerator(std::size_t n, std::uint64_t seed) : n_(n), engine_(seed) {}

    void next(std::vector<std::size_t> &indices);

  private:
    std::size_t n_;
    std::mt19937_64 engine_;
};

// Scores one system on a resample (indices may repeat). Higher is better.
using ResampleScorer = std::function<double(std::span<const std::size_t>)>;

BootstrapResult paired_bootstrap(std::size_t n_segments, const ResampleScorer &score_a,
                                 const ResampleScorer &score_b, const BootstrapOptions &options);

// Scores a hypothesis corpus against a reference corpus. Higher is better.
using CorpusScorer = std::function<double(const Corpus &hypothesis, const Corpus &reference)>;

// Materializes every resample as corpora; simple but slower than the
// statistics-based overloads used by the reports.
BootstrapResult paired_bootstrap(const CorpusScorer &score, const Corpus &sys_a, const Corpus &sys_b,
                                 const Corpus &reference, const BootstrapOptions &options);

// Resample scorer for a mean of per-segment values.
ResampleScorer mean_scorer(std::span<const double> per_segment);

// ---------------------------------------------------------------------------
// Correlation

// Sample Pearson correlation; nullopt if lengths differ, n < 2, or either
// sequence is constant.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

// ---------------------------------------------------------------------------
// Sentence-length buckets

struct LengthBucket {
    std::size_t lo = 0;
    std::optional<std::size_t> hi; // nullopt: unbounded
    std::vector<std::size_t> indices;
    double mean_length = 0.0; // 0 for an empty bucket

    bool empty() const { return indices.empty(); }
    std::string label() const; // "1-5", ..., ">50"
};

// [1,w], [w+1,2w], ..., up to cap, then (cap, inf). Zero-length segments go
// to the first bucket. Empty buckets are kept.
std::vector<LengthBucket> bucket_by_length(std::span<const std::size_t> lengths, std::size_t width = 5,
                                           std::size_t cap = 50);
std::vector<LengthBucket> bucket_by_length(const Corpus &source, std::size_t width = 5, std::size_t cap = 50);

struct LengthPoint {
    std::string label;
    std::size_t lo = 0;
    std::optional<std::size_t> hi;
    std::size_t segments = 0;
    double mean_length = 0.0;
    double chrf_nmt = 0.0;
    double chrf_pbmt = 0.0;
    std::optional<double> relative_improvement;
};

struct LengthCurve {
    std::string nmt_id;
    std::string pbmt_id;
    std::vector<LengthPoint> points; // every bucket, empty ones with segments == 0
    std::optional<double> correlation;
};

LengthCurve length_curve(const EvalBundle &bundle, const std::string &nmt_id, const std::string &pbmt_id,
                         std::size_t width = 5, std::size_t cap = 50);

// Per-bucket mean of relative improvement over the curves where the bucket
// is nonempty and defined; mean lengths averaged likewise. The chrF columns
// of the result are averages too.
LengthCurve macro_average(std::span<const LengthCurve> curves);

} // namespace mtcompare
