#include <stdexcept>
#include <string>
#include <unordered_map>

#include "mtcompare/metrics.hpp"
#include "mtcompare/utf8.hpp"

namespace mtcompare {

namespace {

std::u32string joined_chars(const Segment &segment) {
    std::string text;
    for (const auto &token : segment) text += token;
    return utf8::decode(text);
}

using NGramCounts = std::unordered_map<std::u32string_view, double>;

NGramCounts count_ngrams(const std::u32string &chars, std::size_t n) {
    NGramCounts counts;
    if (chars.size() < n) return counts;
    const std::u32string_view view(chars);
    for (std::size_t i = 0; i + n <= chars.size(); ++i) counts[view.substr(i, n)] += 1.0;
    return counts;
}

} // namespace

ChrfStats &ChrfStats::operator+=(const ChrfStats &other) {
    for (std::size_t n = 0; n < kChrfMaxOrder; ++n) {
        hyp[n] += other.hyp[n];
        ref[n] += other.ref[n];
        match[n] += other.match[n];
    }
    return *this;
}

ChrfStats chrf_stats(const Segment &hyp, const Segment &ref) {
    const auto hyp_chars = joined_chars(hyp);
    const auto ref_chars = joined_chars(ref);
    ChrfStats stats;
    for (std::size_t n = 1; n <= kChrfMaxOrder; ++n) {
        const auto h = count_ngrams(hyp_chars, n);
        const auto r = count_ngrams(ref_chars, n);
        double matches = 0;
        for (const auto &[gram, count] : h) {
            if (const auto it = r.find(gram); it != r.end()) matches += std::min(count, it->second);
        }
        stats.hyp[n - 1] = hyp_chars.size() >= n ? static_cast<double>(hyp_chars.size() - n + 1) : 0.0;
        stats.ref[n - 1] = ref_chars.size() >= n ? static_cast<double>(ref_chars.size() - n + 1) : 0.0;
        stats.match[n - 1] = matches;
    }
    return stats;
}

double chrf_from_stats(const ChrfStats &stats) {
    double sum = 0.0;
    std::size_t orders = 0;
    for (std::size_t n = 0; n < kChrfMaxOrder; ++n) {
        if (stats.hyp[n] == 0 && stats.ref[n] == 0) continue;
        const double p = stats.hyp[n] > 0 ? stats.match[n] / stats.hyp[n] : 0.0;
        const double r = stats.ref[n] > 0 ? stats.match[n] / stats.ref[n] : 0.0;
        sum += (p + r) > 0 ? 2.0 * p * r / (p + r) : 0.0;
        ++orders;
    }
    if (orders == 0) return 100.0;
    return 100.0 * sum / static_cast<double>(orders);
}

double chrf1_segment(const Segment &hyp, const Segment &ref) { return chrf_from_stats(chrf_stats(hyp, ref)); }

ChrfResult chrf1(const Corpus &hypothesis, const Corpus &reference) {
    if (hypothesis.size() != reference.size()) {
        throw std::invalid_argument("chrF: " + hypothesis.name + " has " + std::to_string(hypothesis.size()) +
                                    " segments, " + reference.name + " has " + std::to_string(reference.size()));
    }
    ChrfResult result;
    result.segments.reserve(hypothesis.size());
    ChrfStats total;
    for (std::size_t i = 0; i < hypothesis.size(); ++i) {
        const auto stats = chrf_stats(hypothesis.segments[i], reference.segments[i]);
        result.segments.push_back(chrf_from_stats(stats));
        total += stats;
    }
    result.corpus = {chrf_from_stats(total), ScoreScale::Percent, ScoreLevel::Corpus};
    return result;
}

double chrf1_subset(std::span<const ChrfStats> per_segment, std::span<const std::size_t> indices) {
    ChrfStats total;
    for (const auto i : indices) total += per_segment[i];
    return chrf_from_stats(total);
}

} // namespace mtcompare
