#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mtcompare/error.hpp"
#include "mtcompare/fluency.hpp"

namespace mtcompare {

namespace {

constexpr std::string_view kFormatTag = "mtcompare-ngram-lm";
constexpr int kFormatVersion = 1;

bool is_marker(std::string_view w) { return w == kUnkToken || w == kBosToken || w == kEosToken; }

} // namespace

std::size_t NGramLM::KeyHash::operator()(const std::vector<WordId> &key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto id : key) {
        h ^= id;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

NGramLM NGramLM::train(const Corpus &training, const NGramLMOptions &options) {
    if (training.token_count() == 0) {
        throw std::invalid_argument("cannot train a language model on an empty corpus");
    }
    if (options.order == 0) throw std::invalid_argument("LM order must be at least 1");
    if (!(options.discount > 0.0 && options.discount <= 1.0)) {
        throw std::invalid_argument("Kneser-Ney discount must lie in (0, 1]");
    }

    NGramLM lm;
    lm.order_ = options.order;
    lm.discount_ = options.discount;

    std::unordered_map<std::string_view, std::size_t> freq;
    for (const auto &seg : training.segments)
        for (const auto &tok : seg)
            if (!is_marker(tok)) ++freq[tok];
    std::vector<std::pair<std::string_view, std::size_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (ranked.size() > options.vocab_cap) ranked.resize(options.vocab_cap);

    lm.words_ = {std::string(kUnkToken), std::string(kBosToken), std::string(kEosToken)};
    for (const auto &[word, count] : ranked) lm.words_.emplace_back(word);
    lm.rebuild_index();

    const std::size_t n = lm.order_;
    lm.counts_.assign(n, {});
    std::vector<WordId> ids;
    for (const auto &seg : training.segments) {
        ids.assign(n - 1, kBos);
        for (const auto &tok : seg) ids.push_back(lm.id(tok));
        ids.push_back(kEos);
        for (std::size_t t = n - 1; t < ids.size(); ++t) {
            lm.counts_[n - 1][std::vector<WordId>(ids.begin() + (t + 1 - n), ids.begin() + t + 1)] += 1.0;
        }
    }
    for (std::size_t level = n - 1; level-- > 0;) {
        for (const auto &[key, count] : lm.counts_[level + 1]) {
            lm.counts_[level][std::vector<WordId>(key.begin() + 1, key.end())] += 1.0;
        }
    }
    lm.rebuild_index();
    return lm;
}

void NGramLM::rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], static_cast<WordId>(i));
    contexts_.assign(counts_.size(), {});
    for (std::size_t level = 0; level < counts_.size(); ++level) {
        for (const auto &[key, count] : counts_[level]) {
            auto &ctx = contexts_[level][std::vector<WordId>(key.begin(), key.end() - 1)];
            ctx.total += count;
            ctx.types += 1.0;
        }
    }
}

NGramLM::WordId NGramLM::id(std::string_view word) const {
    if (word == kBosToken || word == kEosToken) return kUnk;
    const auto it = index_.find(std::string(word));
    return it == index_.end() ? kUnk : it->second;
}

bool NGramLM::in_vocabulary(std::string_view word) const {
    return !is_marker(word) && index_.count(std::string(word)) > 0;
}

double NGramLM::prob_at(std::size_t level, WordId word, std::span<const WordId> context) const {
    if (level == 0) return 1.0 / static_cast<double>(predictable_size());
    const double lower = prob_at(level - 1, word, context);
    const std::size_t ctx_len = level - 1;
    std::vector<WordId> key(context.end() - static_cast<std::ptrdiff_t>(ctx_len), context.end());
    const auto ctx = contexts_[level - 1].find(key);
    if (ctx == contexts_[level - 1].end() || ctx->second.total <= 0) return lower;
    key.push_back(word);
    const auto hit = counts_[level - 1].find(key);
    const double count = hit == counts_[level - 1].end() ? 0.0 : hit->second;
    return (std::max(count - discount_, 0.0) + discount_ * ctx->second.types * lower) / ctx->second.total;
}

double NGramLM::prob(WordId word, std::span<const WordId> context) const {
    if (word == kBos || word >= words_.size()) throw std::out_of_range("word id cannot be predicted");
    std::vector<WordId> padded;
    if (context.size() < order_ - 1) {
        padded.assign(order_ - 1 - context.size(), kBos);
        padded.insert(padded.end(), context.begin(), context.end());
        context = padded;
    }
    return prob_at(order_, word, context);
}

double NGramLM::log_prob(WordId word, std::span<const WordId> context) const {
    return std::min(0.0, std::log(prob(word, context)));
}

void NGramLM::save(std::ostream &os) const {
    os << kFormatTag << ' ' << kFormatVersion << '\n';
    os << "order " << order_ << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", discount_);
    os << "discount " << buf << '\n';
    os << "vocab " << words_.size() << '\n';
    for (const auto &w : words_) os << w << '\n';
    for (std::size_t level = 0; level < counts_.size(); ++level) {
        std::map<std::vector<WordId>, double> sorted(counts_[level].begin(), counts_[level].end());
        os << "ngrams " << level + 1 << ' ' << sorted.size() << '\n';
        for (const auto &[key, count] : sorted) {
            for (const auto id : key) os << id << ' ';
            os << static_cast<std::uint64_t>(count) << '\n';
        }
    }
    if (!os) throw std::runtime_error("failed writing language model");
}

NGramLM NGramLM::load(std::istream &is) {
    auto fail = [](const std::string &what) -> NGramLM { throw InputError("language model file: " + what); };
    std::string tag, keyword;
    int version = 0;
    if (!(is >> tag >> version) || tag != kFormatTag) return fail("missing header");
    if (version != kFormatVersion) return fail("unsupported version " + std::to_string(version));
    NGramLM lm;
    std::size_t vocab = 0;
    if (!(is >> keyword >> lm.order_) || keyword != "order" || lm.order_ == 0) return fail("bad order line");
    if (!(is >> keyword >> lm.discount_) || keyword != "discount") return fail("bad discount line");
    if (!(is >> keyword >> vocab) || keyword != "vocab" || vocab < 3) return fail("bad vocab line");
    lm.words_.resize(vocab);
    for (auto &w : lm.words_)
        if (!(is >> w)) return fail("truncated vocabulary");
    lm.counts_.assign(lm.order_, {});
    for (std::size_t level = 0; level < lm.order_; ++level) {
        std::size_t declared = 0, entries = 0;
        if (!(is >> keyword >> declared >> entries) || keyword != "ngrams" || declared != level + 1) {
            return fail("bad n-gram section header");
        }
        for (std::size_t e = 0; e < entries; ++e) {
            std::vector<WordId> key(level + 1);
            std::uint64_t count = 0;
            for (auto &id : key)
                if (!(is >> id) || id >= vocab) return fail("bad n-gram entry");
            if (!(is >> count) || count == 0) return fail("bad n-gram count");
            lm.counts_[level][std::move(key)] = static_cast<double>(count);
        }
    }
    lm.rebuild_index();
    return lm;
}

} // namespace mtcompare
