#include <algorithm>
#include <stdexcept>

#include "mtcompare/stats.hpp"

namespace mtcompare {

void ResampleGenerator::next(std::vector<std::size_t> &indices) {
    indices.resize(n_);
    for (auto &idx : indices) {
        const unsigned __int128 wide = static_cast<unsigned __int128>(engine_()) * n_;
        idx = static_cast<std::size_t>(wide >> 64);
    }
}

BootstrapResult paired_bootstrap(std::size_t n_segments, const ResampleScorer &score_a,
                                 const ResampleScorer &score_b, const BootstrapOptions &options) {
    if (options.iterations == 0) throw std::invalid_argument("bootstrap needs at least one iteration");
    if (n_segments == 0) throw std::invalid_argument("bootstrap needs at least one segment");
    BootstrapResult result;
    result.iterations = options.iterations;
    ResampleGenerator gen(n_segments, options.seed);
    std::vector<std::size_t> sample;
    for (std::size_t it = 0; it < options.iterations; ++it) {
        gen.next(sample);
        const double a = score_a(sample);
        const double b = score_b(sample);
        if (a > b) {
            ++result.wins_a;
        } else if (b > a) {
            ++result.wins_b;
        } else {
            ++result.ties;
        }
    }
    const auto best = std::max(result.wins_a, result.wins_b);
    result.p_value = 1.0 - static_cast<double>(best) / static_cast<double>(options.iterations);
    result.significant = result.p_value < options.alpha;
    return result;
}

BootstrapResult paired_bootstrap(const CorpusScorer &score, const Corpus &sys_a, const Corpus &sys_b,
                                 const Corpus &reference, const BootstrapOptions &options) {
    if (sys_a.size() != reference.size() || sys_b.size() != reference.size()) {
        throw std::invalid_argument("bootstrap: corpora differ in segment count (" + std::to_string(sys_a.size()) +
                                    ", " + std::to_string(sys_b.size()) + ", " + std::to_string(reference.size()) +
                                    ")");
    }
    auto pick = [](const Corpus &c, std::span<const std::size_t> idx) {
        Corpus out;
        out.name = c.name;
        out.segments.reserve(idx.size());
        for (const auto i : idx) out.segments.push_back(c.segments[i]);
        return out;
    };
    const ResampleScorer a = [&](std::span<const std::size_t> idx) {
        return score(pick(sys_a, idx), pick(reference, idx));
    };
    const ResampleScorer b = [&](std::span<const std::size_t> idx) {
        return score(pick(sys_b, idx), pick(reference, idx));
    };
    return paired_bootstrap(reference.size(), a, b, options);
}

ResampleScorer mean_scorer(std::span<const double> per_segment) {
    return [per_segment](std::span<const std::size_t> idx) {
        double sum = 0.0;
        for (const auto i : idx) sum += per_segment[i];
        return idx.empty() ? 0.0 : sum / static_cast<double>(idx.size());
    };
}

} // namespace mtcompare
