#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "mtcompare/metrics.hpp"

namespace mtcompare {

namespace {

// Tokens never contain spaces, so a space-joined key is unambiguous.
std::unordered_map<std::string, double> count_ngrams(const Segment &tokens, std::size_t n) {
    std::unordered_map<std::string, double> counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (std::size_t k = 1; k < n; ++k) {
            key += ' ';
            key += tokens[i + k];
        }
        counts[key] += 1.0;
    }
    return counts;
}

} // namespace

BleuStats &BleuStats::operator+=(const BleuStats &other) {
    for (std::size_t n = 0; n < kBleuMaxOrder; ++n) {
        match[n] += other.match[n];
        total[n] += other.total[n];
    }
    hyp_len += other.hyp_len;
    ref_len += other.ref_len;
    return *this;
}

BleuStats bleu_stats(const Segment &hyp, const Segment &ref) {
    BleuStats stats;
    stats.hyp_len = static_cast<double>(hyp.size());
    stats.ref_len = static_cast<double>(ref.size());
    for (std::size_t n = 1; n <= kBleuMaxOrder; ++n) {
        const auto h = count_ngrams(hyp, n);
        const auto r = count_ngrams(ref, n);
        double matches = 0;
        for (const auto &[gram, count] : h) {
            if (const auto it = r.find(gram); it != r.end()) matches += std::min(count, it->second);
        }
        stats.match[n - 1] = matches;
        stats.total[n - 1] = hyp.size() >= n ? static_cast<double>(hyp.size() - n + 1) : 0.0;
    }
    return stats;
}

BleuResult bleu_from_stats(const BleuStats &stats) {
    BleuResult result;
    result.score = {0.0, ScoreScale::Percent, ScoreLevel::Corpus};
    double log_sum = 0.0;
    for (std::size_t n = 0; n < kBleuMaxOrder; ++n) {
        result.precisions[n] = stats.total[n] > 0 ? stats.match[n] / stats.total[n] : 0.0;
        if (result.precisions[n] == 0.0) {
            result.zero_match = true;
        } else {
            log_sum += std::log(result.precisions[n]);
        }
    }
    if (stats.hyp_len == 0) {
        result.brevity_penalty = 0.0;
    } else if (stats.hyp_len < stats.ref_len) {
        result.brevity_penalty = std::exp(1.0 - stats.ref_len / stats.hyp_len);
    } else {
        result.brevity_penalty = 1.0;
    }
    if (!result.zero_match) {
        result.score.value = 100.0 * result.brevity_penalty * std::exp(log_sum / kBleuMaxOrder);
    }
    return result;
}

BleuResult bleu(const Corpus &hypothesis, const Corpus &reference) {
    if (hypothesis.size() != reference.size()) {
        throw std::invalid_argument("BLEU: " + hypothesis.name + " has " + std::to_string(hypothesis.size()) +
                                    " segments, " + reference.name + " has " + std::to_string(reference.size()));
    }
    BleuStats total;
    for (std::size_t i = 0; i < hypothesis.size(); ++i) total += bleu_stats(hypothesis.segments[i], reference.segments[i]);
    return bleu_from_stats(total);
}

double bleu_subset(std::span<const BleuStats> per_segment, std::span<const std::size_t> indices) {
    BleuStats total;
    for (const auto i : indices) total += per_segment[i];
    return bleu_from_stats(total).score.value;
}

} // namespace mtcompare
