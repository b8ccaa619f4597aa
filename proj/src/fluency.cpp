#include "mtcompare/fluency.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mtcompare/error.hpp"

namespace mtcompare {

TokenLogProbs score_corpus(const NGramLM &lm, const Corpus &text) {
    TokenLogProbs out;
    out.segments.reserve(text.size());
    const std::size_t pad = lm.order() - 1;
    std::vector<NGramLM::WordId> ids;
    for (const auto &seg : text.segments) {
        ids.assign(pad, NGramLM::kBos);
        for (const auto &tok : seg) ids.push_back(lm.id(tok));
        ids.push_back(NGramLM::kEos);
        std::vector<double> scores;
        scores.reserve(seg.size() + 1);
        for (std::size_t t = pad; t < ids.size(); ++t) {
            const std::span<const NGramLM::WordId> context(ids.data() + (t - pad), pad);
            scores.push_back(lm.log_prob(ids[t], context));
        }
        out.segments.push_back(std::move(scores));
    }
    return out;
}

double perplexity(const TokenLogProbs &scores) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto &seg : scores.segments) {
        for (const double lp : seg) sum += lp;
        n += seg.size();
    }
    if (n == 0) throw std::invalid_argument("perplexity of zero scored tokens is undefined");
    return std::exp(-sum / static_cast<double>(n));
}

TokenLogProbs parse_external_scores(std::string_view text, const Corpus &corpus, std::string_view origin) {
    const Corpus lines = [&] {
        try {
            return parse_corpus(text, "scores", origin);
        } catch (const InputError &e) {
            throw InputError(std::string("LM scores ") + e.what());
        }
    }();
    if (lines.size() != corpus.size()) {
        throw InputError(std::string(origin) + ": " + std::to_string(lines.size()) + " score lines, " + corpus.name +
                         " has " + std::to_string(corpus.size()) + " segments");
    }
    TokenLogProbs out;
    out.segments.resize(lines.size());
    for (std::size_t seg = 0; seg < lines.size(); ++seg) {
        const auto &fields = lines.segments[seg];
        const std::size_t expected = corpus.segments[seg].size() + 1;
        if (fields.size() != expected) {
            throw InputError(std::string(origin) + ": segment " + std::to_string(seg) + ": " +
                             std::to_string(fields.size()) + " scores, expected " + std::to_string(expected) +
                             " (tokens + sentence end)");
        }
        for (std::size_t k = 0; k < fields.size(); ++k) {
            const auto &f = fields[k];
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            const std::string where = std::string(origin) + ": segment " + std::to_string(seg) + ", score " +
                                      std::to_string(k) + ": ";
            if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(value)) {
                throw InputError(where + "not a finite number '" + f + "'");
            }
            if (value > 0.0) throw InputError(where + "log-probability " + f + " is positive (probability > 1)");
            out.segments[seg].push_back(value);
        }
    }
    return out;
}

TokenLogProbs load_external_scores(const std::filesystem::path &path, const Corpus &corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_external_scores(buffer.str(), corpus, path.string());
}

std::optional<double> relative_difference(double candidate, double baseline) {
    if (baseline == 0.0) return std::nullopt;
    return (candidate - baseline) / baseline * 100.0;
}

FluencyReport fluency_report(const EvalBundle &bundle, const NGramLM *lm, const std::string &nmt_id,
                             const std::string &pbmt_id) {
    FluencyReport report;
    report.nmt_id = nmt_id;
    report.pbmt_id = pbmt_id;
    for (const auto &sys : bundle.systems) {
        TokenLogProbs scores;
        if (const auto it = bundle.lm_scores.find(sys.system_id); it != bundle.lm_scores.end()) {
            scores = it->second;
        } else if (lm) {
            scores = score_corpus(*lm, sys.corpus);
        } else {
            throw InputError("fluency: no LM scores for '" + sys.system_id + "' and no language model");
        }
        FluencyRow row;
        row.system_id = sys.system_id;
        row.paradigm = sys.paradigm;
        for (const auto &seg : scores.segments) row.scored_tokens += seg.size();
        row.perplexity = perplexity(scores);
        if (sys.system_id == nmt_id) report.nmt_perplexity = row.perplexity;
        if (sys.system_id == pbmt_id) report.pbmt_perplexity = row.perplexity;
        report.systems.push_back(std::move(row));
    }
    if (!bundle.find_system(nmt_id) || !bundle.find_system(pbmt_id)) {
        throw InputError("fluency: unknown primary system '" + (bundle.find_system(nmt_id) ? pbmt_id : nmt_id) + "'");
    }
    report.relative_difference = relative_difference(report.nmt_perplexity, report.pbmt_perplexity);
    return report;
}

FluencyAverage average_fluency(std::span<const FluencyReport> directions) {
    FluencyAverage avg;
    if (directions.empty()) return avg;
    double rel = 0.0;
    std::size_t rel_n = 0;
    for (const auto &d : directions) {
        avg.pbmt_perplexity += d.pbmt_perplexity;
        avg.nmt_perplexity += d.nmt_perplexity;
        if (d.relative_difference) {
            rel += *d.relative_difference;
            ++rel_n;
        }
    }
    avg.pbmt_perplexity /= static_cast<double>(directions.size());
    avg.nmt_perplexity /= static_cast<double>(directions.size());
    if (rel_n > 0) avg.relative_difference = rel / static_cast<double>(rel_n);
    return avg;
}

} // namespace mtcompare
