#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtcompare/corpus.hpp"

namespace mtcompare {

inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kBosToken = "<s>";
inline constexpr std::string_view kEosToken = "</s>";

struct NGramLMOptions {
    std::size_t order = 3;
    std::size_t vocab_cap = 50000;
    double discount = 0.75;
};

// Interpolated Kneser-Ney n-gram model with a single absolute discount.
//
// Training text is padded with order-1 sentence-start markers and one
// sentence-end marker. The highest order uses raw counts; lower orders use
// continuation counts (number of distinct left extensions). The unigram
// level interpolates with the uniform distribution over the predictable
// vocabulary (kept words, <unk>, </s>), so every probability is positive.
class NGramLM {
  public:
    using WordId = std::uint32_t;

    static NGramLM train(const Corpus &training, const NGramLMOptions &options = {});

    std::size_t order() const { return order_; }
    double discount() const { return discount_; }

    // Words in id order. Ids 0, 1, 2 are <unk>, <s>, </s>.
    const std::vector<std::string> &vocabulary() const { return words_; }
    // Number of words that can be predicted (everything except <s>).
    std::size_t predictable_size() const { return words_.size() - 1; }

    WordId id(std::string_view word) const;
    bool in_vocabulary(std::string_view word) const;

    // Natural-log probability of `word` after `context` (oldest first; only
    // the last order-1 ids are used).
    double log_prob(WordId word, std::span<const WordId> context) const;
    double prob(WordId word, std::span<const WordId> context) const;

    void save(std::ostream &os) const;
    static NGramLM load(std::istream &is);

    static constexpr WordId kUnk = 0;
    static constexpr WordId kBos = 1;
    static constexpr WordId kEos = 2;

  private:
    struct KeyHash {
        std::size_t operator()(const std::vector<WordId> &key) const noexcept;
    };
    struct ContextStats {
        double total = 0; // sum of counts of extensions
        double types = 0; // number of distinct extensions
    };
    using CountTable = std::unordered_map<std::vector<WordId>, double, KeyHash>;
    using ContextTable = std::unordered_map<std::vector<WordId>, ContextStats, KeyHash>;

    void rebuild_index();
    double prob_at(std::size_t level, WordId word, std::span<const WordId> context) const;

    std::size_t order_ = 3;
    double discount_ = 0.75;
    std::vector<std::string> words_;
    std::unordered_map<std::string, WordId> index_;
    // counts_[k] holds (k+1)-grams.
    std::vector<CountTable> counts_;
    std::vector<ContextTable> contexts_;
};

TokenLogProbs score_corpus(const NGramLM &lm, const Corpus &text);

// exp(-mean log-prob) over every scored token. Throws std::invalid_argument
// when nothing was scored.
double perplexity(const TokenLogProbs &scores);

// Validates counts (tokens + 1 per line) and values (<= 0, finite).
TokenLogProbs parse_external_scores(std::string_view text, const Corpus &corpus,
                                    std::string_view origin = "<memory>");
TokenLogProbs load_external_scores(const std::filesystem::path &path, const Corpus &corpus);

// (candidate - baseline) / baseline * 100; nullopt when baseline is 0.
std::optional<double> relative_difference(double candidate, double baseline);

struct FluencyRow {
    std::string system_id;
    Paradigm paradigm = Paradigm::NMT;
    double perplexity = 0.0;
    std::size_t scored_tokens = 0;
};

struct FluencyReport {
    std::vector<FluencyRow> systems;
    std::string nmt_id;
    std::string pbmt_id;
    double nmt_perplexity = 0.0;
    double pbmt_perplexity = 0.0;
    std::optional<double> relative_difference;
};

// Perplexity of every system from bundle.lm_scores, or from `lm` when a
// system has no precomputed scores. Throws InputError if neither exists.
FluencyReport fluency_report(const EvalBundle &bundle, const NGramLM *lm, const std::string &nmt_id,
                             const std::string &pbmt_id);

// Average row across directions: mean perplexities and the mean of the
// per-direction relative differences.
struct FluencyAverage {
    double pbmt_perplexity = 0.0;
    double nmt_perplexity = 0.0;
    std::optional<double> relative_difference;
};

FluencyAverage average_fluency(std::span<const FluencyReport> directions);

} // namespace mtcompare
