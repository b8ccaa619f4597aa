#include "mtcompare/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mtcompare/error.hpp"
#include "mtcompare/utf8.hpp"

namespace mtcompare {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }

// Splits `text` into lines. A final line terminator does not start a new
// line; "\r\n" is accepted.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw InputError("read error on " + path.string());
    return std::move(buffer).str();
}

bool parse_index(std::string_view text, std::size_t &out) {
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

} // namespace

std::size_t Corpus::token_count() const {
    std::size_t n = 0;
    for (const auto &s : segments) n += s.size();
    return n;
}

std::string_view to_string(Paradigm p) { return p == Paradigm::NMT ? "NMT" : "PBMT"; }

Paradigm parse_paradigm(std::string_view text) {
    if (text == "NMT" || text == "nmt") return Paradigm::NMT;
    if (text == "PBMT" || text == "pbmt") return Paradigm::PBMT;
    throw InputError("unknown paradigm '" + std::string(text) + "' (expected NMT or PBMT)");
}

const SystemOutput *EvalBundle::find_system(std::string_view id) const {
    for (const auto &s : systems)
        if (s.system_id == id) return &s;
    return nullptr;
}

const Corpus *EvalBundle::find_corpus(std::string_view name) const {
    if (name == kReferenceKey) return &reference;
    if (const auto *s = find_system(name)) return &s->corpus;
    return nullptr;
}

Segment split_tokens(std::string_view line) {
    Segment tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    return tokens;
}

Corpus parse_corpus(std::string_view text, std::string name, std::string_view origin) {
    Corpus corpus;
    corpus.name = std::move(name);
    const auto lines = split_lines(text);
    corpus.segments.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (const auto bad = utf8::find_invalid(lines[i])) {
            throw InputError(std::string(origin) + ":" + std::to_string(i + 1) + ": invalid UTF-8 at byte " +
                             std::to_string(*bad + 1));
        }
        corpus.segments.push_back(split_tokens(lines[i]));
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path &path, std::string name) {
    return parse_corpus(read_file(path), std::move(name), path.string());
}

void write_corpus(std::ostream &os, const Corpus &corpus) {
    for (const auto &segment : corpus.segments) {
        for (std::size_t i = 0; i < segment.size(); ++i) {
            if (i) os << ' ';
            os << segment[i];
        }
        os << '\n';
    }
}

std::string format_corpus(const Corpus &corpus) {
    std::ostringstream os;
    write_corpus(os, corpus);
    return std::move(os).str();
}

AlignmentSet parse_alignments(std::string_view text, const Corpus &source, const Corpus &target,
                              std::string_view origin) {
    const auto lines = split_lines(text);
    if (lines.size() != source.size() || lines.size() != target.size()) {
        throw InputError(std::string(origin) + ": " + std::to_string(lines.size()) + " alignment lines, but " +
                         source.name + " has " + std::to_string(source.size()) + " segments and " + target.name +
                         " has " + std::to_string(target.size()));
    }
    AlignmentSet set;
    set.segments.resize(lines.size());
    for (std::size_t seg = 0; seg < lines.size(); ++seg) {
        const std::size_t src_len = source.segments[seg].size();
        const std::size_t tgt_len = target.segments[seg].size();
        auto &links = set.segments[seg];
        for (const auto &pair : split_tokens(lines[seg])) {
            const std::string_view view(pair);
            const auto dash = view.find('-');
            Link link;
            if (dash == std::string_view::npos || !parse_index(view.substr(0, dash), link.src) ||
                !parse_index(view.substr(dash + 1), link.tgt)) {
                throw InputError(std::string(origin) + ": segment " + std::to_string(seg) + ": malformed link '" +
                                 pair + "'");
            }
            if (link.src >= src_len || link.tgt >= tgt_len) {
                throw InputError(std::string(origin) + ": segment " + std::to_string(seg) + ": link '" + pair +
                                 "' out of range for " + std::to_string(src_len) + " source and " +
                                 std::to_string(tgt_len) + " target tokens");
            }
            links.push_back(link);
        }
        std::sort(links.begin(), links.end());
        links.erase(std::unique(links.begin(), links.end()), links.end());
    }
    return set;
}

AlignmentSet load_alignments(const std::filesystem::path &path, const Corpus &source, const Corpus &target) {
    return parse_alignments(read_file(path), source, target, path.string());
}

std::string format_alignments(const AlignmentSet &alignments) {
    std::string out;
    for (const auto &links : alignments.segments) {
        for (std::size_t i = 0; i < links.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(links[i].src);
            out += '-';
            out += std::to_string(links[i].tgt);
        }
        out += '\n';
    }
    return out;
}

EvalBundle bind_stems(EvalBundle bundle, const std::string &corpus_name, Corpus stems) {
    const Corpus *tokens = bundle.find_corpus(corpus_name);
    if (!tokens) throw InputError("stems given for unknown corpus '" + corpus_name + "'");
    if (tokens->size() != stems.size()) {
        throw InputError("stems for '" + corpus_name + "' have " + std::to_string(stems.size()) +
                         " segments, corpus has " + std::to_string(tokens->size()));
    }
    for (std::size_t i = 0; i < stems.size(); ++i) {
        if (stems.segments[i].size() != tokens->segments[i].size()) {
            throw InputError("stems for '" + corpus_name + "', segment " + std::to_string(i) + ": " +
                             std::to_string(tokens->segments[i].size()) + " tokens vs " +
                             std::to_string(stems.segments[i].size()) + " stems");
        }
    }
    bundle.stems.insert_or_assign(corpus_name, std::move(stems));
    return bundle;
}

std::string_view to_string(Analysis a) {
    switch (a) {
    case Analysis::Similarity: return "similarity";
    case Analysis::Fluency: return "fluency";
    case Analysis::Reordering: return "reordering";
    case Analysis::Length: return "length";
    case Analysis::ErrorCategories: return "errcats";
    case Analysis::Overall: return "overall";
    }
    return "?";
}

std::optional<Analysis> parse_analysis(std::string_view text) {
    for (const auto a : all_analyses())
        if (to_string(a) == text) return a;
    if (text == "reorder") return Analysis::Reordering;
    return std::nullopt;
}

const std::vector<Analysis> &all_analyses() {
    static const std::vector<Analysis> all = {Analysis::Overall,     Analysis::Similarity, Analysis::Fluency,
                                              Analysis::Reordering,  Analysis::Length,     Analysis::ErrorCategories};
    return all;
}

std::vector<Violation> validate_bundle(const EvalBundle &bundle, const ValidationOptions &options) {
    std::vector<Violation> out;
    auto add = [&out](std::string msg) { out.push_back({std::move(msg)}); };
    auto wants = [&options](Analysis a) { return options.analyses.count(a) > 0; };
    const std::size_t n_ref = bundle.reference.size();

    if (n_ref == 0) add("reference '" + bundle.reference.name + "' has no segments");
    if (bundle.source.size() != n_ref) {
        add("source '" + bundle.source.name + "' has " + std::to_string(bundle.source.size()) +
            " segments, reference has " + std::to_string(n_ref));
    }
    for (std::size_t i = 0; i < bundle.reference.size(); ++i) {
        if (bundle.reference.segments[i].empty()) add("reference segment " + std::to_string(i) + " is empty");
    }
    if (bundle.systems.empty()) add("no system outputs");
    for (std::size_t i = 0; i < bundle.systems.size(); ++i) {
        const auto &sys = bundle.systems[i];
        if (sys.corpus.size() != n_ref) {
            add("system '" + sys.system_id + "' has " + std::to_string(sys.corpus.size()) +
                " segments, reference has " + std::to_string(n_ref));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (bundle.systems[j].system_id == sys.system_id) add("duplicate system id '" + sys.system_id + "'");
        }
        if (sys.system_id == kReferenceKey) add("system id 'reference' is reserved");
    }
    for (const auto &[name, stems] : bundle.stems) {
        const Corpus *tokens = bundle.find_corpus(name);
        if (!tokens) {
            add("stems given for unknown corpus '" + name + "'");
            continue;
        }
        if (stems.size() != tokens->size()) {
            add("stems for '" + name + "' have " + std::to_string(stems.size()) + " segments, corpus has " +
                std::to_string(tokens->size()));
            continue;
        }
        for (std::size_t i = 0; i < stems.size(); ++i) {
            if (stems.segments[i].size() != tokens->segments[i].size()) {
                add("stems for '" + name + "', segment " + std::to_string(i) + ": " +
                    std::to_string(tokens->segments[i].size()) + " tokens vs " +
                    std::to_string(stems.segments[i].size()) + " stems");
            }
        }
    }

    const bool head_to_head = wants(Analysis::Fluency) || wants(Analysis::Reordering) ||
                              wants(Analysis::Length) || wants(Analysis::ErrorCategories);
    if (head_to_head) {
        auto check_primary = [&](const std::string &id, Paradigm expected) {
            if (id.empty()) {
                const bool any = std::any_of(bundle.systems.begin(), bundle.systems.end(),
                                             [&](const SystemOutput &s) { return s.paradigm == expected; });
                if (!any) add("no " + std::string(to_string(expected)) + " system for NMT-vs-PBMT comparison");
                return;
            }
            const auto *sys = bundle.find_system(id);
            if (!sys) {
                add("primary " + std::string(to_string(expected)) + " system '" + id + "' not found");
            } else if (sys->paradigm != expected) {
                add("primary " + std::string(to_string(expected)) + " system '" + id + "' is tagged " +
                    std::string(to_string(sys->paradigm)));
            }
        };
        check_primary(options.primary_nmt, Paradigm::NMT);
        check_primary(options.primary_pbmt, Paradigm::PBMT);
    }
    if (wants(Analysis::Similarity) && bundle.systems.size() < 2) {
        add("similarity needs at least 2 systems, got " + std::to_string(bundle.systems.size()));
    }
    if (wants(Analysis::Reordering)) {
        auto need = [&](const std::string &key) {
            const auto it = bundle.alignments.find(key);
            if (it == bundle.alignments.end()) {
                add("alignments required: reordering needs source alignments for '" + key + "'");
            } else if (it->second.size() != n_ref) {
                add("alignments for '" + key + "' have " + std::to_string(it->second.size()) +
                    " segments, reference has " + std::to_string(n_ref));
            }
        };
        need(std::string(kReferenceKey));
        for (const auto &sys : bundle.systems) need(sys.system_id);
    }
    if (wants(Analysis::Fluency) && !bundle.lm_training && !options.language_model_available) {
        for (const auto &sys : bundle.systems) {
            if (!bundle.lm_scores.count(sys.system_id)) {
                add("fluency needs LM scores for '" + sys.system_id + "' or an LM training corpus");
            }
        }
    }
    if (wants(Analysis::Fluency) && bundle.lm_training && bundle.lm_training->segments.empty()) {
        add("LM training corpus is empty");
    }
    return out;
}

} // namespace mtcompare
