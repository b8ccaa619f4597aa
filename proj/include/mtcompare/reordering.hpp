#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtcompare/corpus.hpp"
#include "mtcompare/stats.hpp"

namespace mtcompare {

// For a source sentence of n words, the target-side rank (0..n-1) of each
// source word.
struct Permutation {
    std::vector<std::size_t> ranks;

    std::size_t size() const { return ranks.size(); }
    bool is_bijection() const;

    static Permutation identity(std::size_t n);

    friend bool operator==(const Permutation &, const Permutation &) = default;
};

// Source word i is keyed by its minimum aligned target index; unaligned
// words take the key of the nearest aligned word to their left (-1 if
// none). Ranks come from a stable sort on (key, source index).
Permutation alignment_to_permutation(const SegmentLinks &links, std::size_t src_len);

// Number of pairs i < j ordered differently by a and b. O(n log n).
std::uint64_t discordant_pairs(const Permutation &a, const Permutation &b);

// 1 - discordant/(n(n-1)/2) against the monotone order; 1 for n <= 1.
double kendall_similarity(const Permutation &p);

// Same measure between two permutations of equal length. Throws
// std::invalid_argument on a length mismatch.
double relative_kendall(const Permutation &a, const Permutation &b);

struct ReorderingRow {
    std::string id; // system id or "reference"
    std::optional<Paradigm> paradigm;
    double vs_monotone = 0.0;
    std::optional<double> vs_reference; // absent for the reference row
    std::vector<double> segment_vs_monotone;
    std::vector<double> segment_vs_reference;
};

struct ReorderingReport {
    std::vector<ReorderingRow> rows; // reference first, then systems in bundle order
    std::string nmt_id;
    std::string pbmt_id;
    // NMT (a) vs PBMT (b) on per-segment similarity to the reference.
    std::optional<BootstrapResult> significance;
};

// Macro-averaged sentence similarities. Throws InputError when alignments
// for the reference or a system are missing.
ReorderingReport reordering_report(const EvalBundle &bundle, const std::string &nmt_id, const std::string &pbmt_id,
                                   const BootstrapOptions &options);

} // namespace mtcompare
