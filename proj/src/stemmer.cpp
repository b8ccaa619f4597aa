#include <algorithm>
#include <iostream>
#include <mutex>
#include <set>
#include <utility>

#include "mtcompare/error_cats.hpp"

namespace mtcompare {

namespace {

struct SuffixRule {
    std::string_view suffix;
    std::string_view replacement;
};

// Longest suffixes first; the first rule that leaves a stem of at least
// kMinStem bytes wins.
constexpr SuffixRule kEnglishRules[] = {
    {"ingly", ""}, {"edly", ""}, {"ings", ""}, {"ing", ""}, {"ies", "y"}, {"ied", "y"},
    {"ed", ""},    {"ly", ""},   {"'s", ""},   {"s", ""},
};
constexpr std::size_t kMinStem = 3;

std::string lower_ascii(std::string_view token) {
    std::string out(token);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    });
    return out;
}

std::string strip_english(std::string word) {
    for (const auto &rule : kEnglishRules) {
        if (word.size() < rule.suffix.size() + kMinStem) continue;
        if (!std::string_view(word).ends_with(rule.suffix)) continue;
        const std::size_t cut = word.size() - rule.suffix.size();
        // "glass", "bus", "this" keep their final s.
        if (rule.suffix == "s" && (word[cut - 1] == 's' || word[cut - 1] == 'u' || word[cut - 1] == 'i')) continue;
        word.resize(cut);
        word += rule.replacement;
        break;
    }
    return word;
}

} // namespace

LightStemmer::LightStemmer(std::string language) : language_(lower_ascii(language)) {
    supported_ = language_ == "en" || language_ == "eng" || language_ == "english";
}

std::string LightStemmer::stem(std::string_view token) const {
    if (!supported_) return std::string(token);
    return strip_english(lower_ascii(token));
}

std::string light_stem(std::string_view token, std::string_view language) {
    const LightStemmer stemmer{std::string(language)};
    if (!stemmer.supported()) {
        static std::mutex mutex;
        static std::set<std::string, std::less<>> warned;
        const std::lock_guard lock(mutex);
        if (warned.insert(stemmer.language()).second) {
            std::cerr << "warning: no built-in stemmer for language '" << language
                      << "'; tokens are used as their own stems\n";
        }
    }
    return stemmer.stem(token);
}

Segment stem_segment(const Segment &tokens, const LightStemmer &stemmer) {
    Segment out;
    out.reserve(tokens.size());
    for (const auto &t : tokens) out.push_back(stemmer.stem(t));
    return out;
}

} // namespace mtcompare
