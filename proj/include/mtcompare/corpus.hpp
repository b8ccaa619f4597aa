#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mtcompare {

using Token = std::string;

// One line of text, already tokenized. May be empty.
using Segment = std::vector<Token>;

struct Corpus {
    std::string name;
    std::vector<Segment> segments;

    std::size_t size() const { return segments.size(); }
    std::size_t token_count() const;
};

enum class Paradigm { NMT, PBMT };

std::string_view to_string(Paradigm p);
Paradigm parse_paradigm(std::string_view text);

struct SystemOutput {
    std::string system_id;
    Paradigm paradigm = Paradigm::NMT;
    Corpus corpus;
};

// A source-target word link, both indices 0-based.
struct Link {
    std::size_t src = 0;
    std::size_t tgt = 0;

    friend auto operator<=>(const Link &, const Link &) = default;
};

// Sorted, duplicate-free links for one sentence pair.
using SegmentLinks = std::vector<Link>;

struct AlignmentSet {
    std::vector<SegmentLinks> segments;

    std::size_t size() const { return segments.size(); }
};

// Natural-log probabilities, one per scored token: every token of the
// segment followed by the sentence end.
struct TokenLogProbs {
    std::vector<std::vector<double>> segments;
};

// Key used for the reference side in EvalBundle::alignments.
inline constexpr std::string_view kReferenceKey = "reference";

struct EvalBundle {
    Corpus source;
    Corpus reference;
    std::vector<SystemOutput> systems;
    // Keyed by system id, or kReferenceKey for source-reference links.
    std::map<std::string, AlignmentSet, std::less<>> alignments;
    // Keyed by corpus name ("reference" or a system id).
    std::map<std::string, Corpus, std::less<>> stems;
    std::map<std::string, TokenLogProbs, std::less<>> lm_scores;
    std::optional<Corpus> lm_training;

    const SystemOutput *find_system(std::string_view id) const;
    // Reference or a system output, by name; nullptr when unknown.
    const Corpus *find_corpus(std::string_view name) const;
};

Segment split_tokens(std::string_view line);

// Parse one-segment-per-line text. `origin` is used in error messages.
Corpus parse_corpus(std::string_view text, std::string name, std::string_view origin = "<memory>");
Corpus load_corpus(const std::filesystem::path &path, std::string name);

void write_corpus(std::ostream &os, const Corpus &corpus);
std::string format_corpus(const Corpus &corpus);

AlignmentSet parse_alignments(std::string_view text, const Corpus &source, const Corpus &target,
                              std::string_view origin = "<memory>");
AlignmentSet load_alignments(const std::filesystem::path &path, const Corpus &source, const Corpus &target);
std::string format_alignments(const AlignmentSet &alignments);

// Attach a stem corpus for `corpus_name`. Throws InputError when the
// stems are not token-parallel to that corpus.
EvalBundle bind_stems(EvalBundle bundle, const std::string &corpus_name, Corpus stems);

enum class Analysis { Similarity, Fluency, Reordering, Length, ErrorCategories, Overall };

std::string_view to_string(Analysis a);
std::optional<Analysis> parse_analysis(std::string_view text);
const std::vector<Analysis> &all_analyses();

struct Violation {
    std::string message;
};

struct ValidationOptions {
    std::set<Analysis> analyses;
    // Systems compared head to head; empty means "first of each paradigm".
    std::string primary_nmt;
    std::string primary_pbmt;
    // A trained or loaded language model can score any system for fluency.
    bool language_model_available = false;
};

std::vector<Violation> validate_bundle(const EvalBundle &bundle, const ValidationOptions &options);

} // namespace mtcompare
