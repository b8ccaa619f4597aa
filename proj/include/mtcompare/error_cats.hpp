#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtcompare/corpus.hpp"

namespace mtcompare {

enum class HypClass { None, Inflection, Reordering, Extra, Lexical };
enum class RefClass { None, Missing, InflectionSupport };

std::string_view to_string(HypClass c); // "-", "hINFer", "hRer", "EXTer", "hLEXer"
std::string_view to_string(RefClass c); // "-", "MISer", "rINFer"

struct ErrorAnnotation {
    std::vector<HypClass> hyp;
    std::vector<RefClass> ref;
};

// Word-level error classes from WER and PER alignments plus base forms.
// Throws InputError when stems are not token-parallel.
ErrorAnnotation classify_errors(const Segment &hyp, const Segment &ref, const Segment &hyp_stems,
                                const Segment &ref_stems);

struct ErrorCounts {
    std::size_t inflection = 0;
    std::size_t reordering = 0;
    std::size_t missing = 0;
    std::size_t extra = 0;
    std::size_t lexical_choice = 0;
    std::size_t reference_tokens = 0;

    std::size_t lexical() const { return missing + extra + lexical_choice; }
    ErrorCounts &operator+=(const ErrorCounts &other);
};

ErrorCounts count_errors(const ErrorAnnotation &annotation, std::size_t reference_tokens);

enum class ErrorCategory { Inflection, Reordering, Lexical };

inline constexpr std::array<ErrorCategory, 3> kErrorCategories = {ErrorCategory::Inflection,
                                                                  ErrorCategory::Reordering, ErrorCategory::Lexical};

std::string_view to_string(ErrorCategory c);

// Counts normalized by the total number of reference tokens.
struct ErrorRates {
    ErrorCounts counts;
    double inflection = 0.0;
    double reordering = 0.0;
    double missing = 0.0;
    double extra = 0.0;
    double lexical_choice = 0.0;
    double lexical = 0.0;

    double rate(ErrorCategory c) const;
};

ErrorRates error_rates(const ErrorCounts &counts);
ErrorRates error_rates(std::span<const ErrorAnnotation> annotations, const Corpus &reference);

struct RelativeImprovement {
    std::optional<double> inflection;
    std::optional<double> reordering;
    std::optional<double> lexical;

    std::optional<double> get(ErrorCategory c) const;
};

// (NMT - PBMT) / PBMT * 100 per category; nullopt where the PBMT rate is 0.
RelativeImprovement relative_improvement(const ErrorRates &nmt, const ErrorRates &pbmt);

// Lowercasing suffix stripper used when no stem files are supplied.
class LightStemmer {
  public:
    explicit LightStemmer(std::string language);

    bool supported() const { return supported_; }
    const std::string &language() const { return language_; }
    std::string stem(std::string_view token) const;

  private:
    std::string language_;
    bool supported_ = false;
};

// Same as LightStemmer(language).stem(token); prints a warning to stderr
// the first time an unsupported language is seen.
std::string light_stem(std::string_view token, std::string_view language);

Segment stem_segment(const Segment &tokens, const LightStemmer &stemmer);

struct SystemErrors {
    std::string system_id;
    Paradigm paradigm = Paradigm::NMT;
    ErrorRates rates;
    std::vector<ErrorAnnotation> annotations;
};

struct ErrorCategoryReport {
    std::vector<SystemErrors> systems;
    std::string nmt_id;
    std::string pbmt_id;
    RelativeImprovement nmt_vs_pbmt;
    bool used_builtin_stemmer = false;
};

// Uses bundle stems where bound; otherwise stems with LightStemmer(language).
ErrorCategoryReport error_category_report(const EvalBundle &bundle, const std::string &nmt_id,
                                          const std::string &pbmt_id, const std::string &language);

// One line per segment, class tags aligned to hypothesis tokens.
std::string format_class_dump(std::span<const ErrorAnnotation> annotations);

} // namespace mtcompare
