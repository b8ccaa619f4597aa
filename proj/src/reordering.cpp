#include "mtcompare/reordering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mtcompare/error.hpp"

namespace mtcompare {

namespace {

std::uint64_t merge_count(std::vector<std::size_t> &v, std::vector<std::size_t> &tmp, std::size_t lo,
                          std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = merge_count(v, tmp, lo, mid) + merge_count(v, tmp, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += mid - i;
            tmp[k++] = v[j++];
        } else {
            tmp[k++] = v[i++];
        }
    }
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo), tmp.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

double similarity_from_discordant(std::uint64_t discordant, std::size_t n) {
    if (n <= 1) return 1.0;
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return 1.0 - static_cast<double>(discordant) / pairs;
}

} // namespace

bool Permutation::is_bijection() const {
    std::vector<bool> seen(ranks.size(), false);
    for (const auto r : ranks) {
        if (r >= ranks.size() || seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.ranks.resize(n);
    std::iota(p.ranks.begin(), p.ranks.end(), std::size_t{0});
    return p;
}

Permutation alignment_to_permutation(const SegmentLinks &links, std::size_t src_len) {
    constexpr std::size_t kUnaligned = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first_tgt(src_len, kUnaligned);
    for (const auto &link : links) {
        if (link.src >= src_len) {
            throw std::invalid_argument("link source index " + std::to_string(link.src) + " out of range for " +
                                        std::to_string(src_len) + " source words");
        }
        first_tgt[link.src] = std::min(first_tgt[link.src], link.tgt);
    }
    // Keys shifted by one so that "no aligned word to the left" (-1) is 0.
    std::vector<std::size_t> key(src_len, 0);
    std::size_t carried = 0;
    for (std::size_t i = 0; i < src_len; ++i) {
        if (first_tgt[i] != kUnaligned) carried = first_tgt[i] + 1;
        key[i] = carried;
    }
    std::vector<std::size_t> order(src_len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    Permutation p;
    p.ranks.resize(src_len);
    for (std::size_t r = 0; r < src_len; ++r) p.ranks[order[r]] = r;
    return p;
}

std::uint64_t discordant_pairs(const Permutation &a, const Permutation &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("permutations differ in length (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    if (!a.is_bijection() || !b.is_bijection()) throw std::invalid_argument("not a permutation");
    // a's ranks listed in b's order; inversions there are exactly the pairs
    // the two orders disagree on.
    std::vector<std::size_t> seq(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) seq[b.ranks[i]] = a.ranks[i];
    std::vector<std::size_t> tmp(seq.size());
    return merge_count(seq, tmp, 0, seq.size());
}

double kendall_similarity(const Permutation &p) {
    return similarity_from_discordant(discordant_pairs(p, Permutation::identity(p.size())), p.size());
}

double relative_kendall(const Permutation &a, const Permutation &b) {
    return similarity_from_discordant(discordant_pairs(a, b), a.size());
}

ReorderingReport reordering_report(const EvalBundle &bundle, const std::string &nmt_id, const std::string &pbmt_id,
                                   const BootstrapOptions &options) {
    const std::size_t n = bundle.source.size();
    if (n == 0) throw InputError("reordering: empty source corpus");

    auto permutations = [&](const std::string &key) {
        const auto it = bundle.alignments.find(key);
        if (it == bundle.alignments.end()) throw InputError("alignments required: none for '" + key + "'");
        if (it->second.size() != n) {
            throw InputError("alignments for '" + key + "' have " + std::to_string(it->second.size()) +
                             " segments, source has " + std::to_string(n));
        }
        std::vector<Permutation> perms;
        perms.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            perms.push_back(alignment_to_permutation(it->second.segments[i], bundle.source.segments[i].size()));
        }
        return perms;
    };
    auto mean = [](const std::vector<double> &v) {
        double s = 0.0;
        for (const double x : v) s += x;
        return s / static_cast<double>(v.size());
    };

    ReorderingReport report;
    report.nmt_id = nmt_id;
    report.pbmt_id = pbmt_id;
    const auto ref_perms = permutations(std::string(kReferenceKey));
    {
        ReorderingRow row;
        row.id = std::string(kReferenceKey);
        for (const auto &p : ref_perms) row.segment_vs_monotone.push_back(kendall_similarity(p));
        row.vs_monotone = mean(row.segment_vs_monotone);
        report.rows.push_back(std::move(row));
    }
    for (const auto &sys : bundle.systems) {
        const auto perms = permutations(sys.system_id);
        ReorderingRow row;
        row.id = sys.system_id;
        row.paradigm = sys.paradigm;
        for (std::size_t i = 0; i < n; ++i) {
            row.segment_vs_monotone.push_back(kendall_similarity(perms[i]));
            row.segment_vs_reference.push_back(relative_kendall(perms[i], ref_perms[i]));
        }
        row.vs_monotone = mean(row.segment_vs_monotone);
        row.vs_reference = mean(row.segment_vs_reference);
        report.rows.push_back(std::move(row));
    }

    const ReorderingRow *nmt = nullptr;
    const ReorderingRow *pbmt = nullptr;
    for (const auto &row : report.rows) {
        if (row.id == nmt_id && row.paradigm) nmt = &row;
        if (row.id == pbmt_id && row.paradigm) pbmt = &row;
    }
    if (nmt && pbmt) {
        report.significance = paired_bootstrap(n, mean_scorer(nmt->segment_vs_reference),
                                               mean_scorer(pbmt->segment_vs_reference), options);
    }
    return report;
}

} // namespace mtcompare
