#include "mtcompare/error_cats.hpp"

#include <algorithm>
#include <unordered_set>

#include "mtcompare/error.hpp"
#include "mtcompare/fluency.hpp"
#include "mtcompare/metrics.hpp"

namespace mtcompare {

std::string_view to_string(HypClass c) {
    switch (c) {
    case HypClass::None: return "-";
    case HypClass::Inflection: return "hINFer";
    case HypClass::Reordering: return "hRer";
    case HypClass::Extra: return "EXTer";
    case HypClass::Lexical: return "hLEXer";
    }
    return "?";
}

std::string_view to_string(RefClass c) {
    switch (c) {
    case RefClass::None: return "-";
    case RefClass::Missing: return "MISer";
    case RefClass::InflectionSupport: return "rINFer";
    }
    return "?";
}

std::string_view to_string(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::Inflection: return "Inflection";
    case ErrorCategory::Reordering: return "Reordering";
    case ErrorCategory::Lexical: return "Lexical";
    }
    return "?";
}

ErrorAnnotation classify_errors(const Segment &hyp, const Segment &ref, const Segment &hyp_stems,
                                const Segment &ref_stems) {
    if (hyp_stems.size() != hyp.size() || ref_stems.size() != ref.size()) {
        throw InputError("stems not token-parallel: hypothesis " + std::to_string(hyp.size()) + "/" +
                         std::to_string(hyp_stems.size()) + ", reference " + std::to_string(ref.size()) + "/" +
                         std::to_string(ref_stems.size()) + " tokens/stems");
    }
    const EditScript script = wer_align(hyp, ref);
    const PerErrors per = per_errors(hyp, ref);

    ErrorAnnotation out;
    out.hyp.assign(hyp.size(), HypClass::None);
    out.ref.assign(ref.size(), RefClass::None);

    // Inflection: an hPER word whose stem matches a still-unused rPER word.
    for (std::size_t j = 0; j < hyp.size(); ++j) {
        if (!per.hyp[j]) continue;
        for (std::size_t k = 0; k < ref.size(); ++k) {
            if (per.ref[k] && out.ref[k] == RefClass::None && ref_stems[k] == hyp_stems[j]) {
                out.hyp[j] = HypClass::Inflection;
                out.ref[k] = RefClass::InflectionSupport;
                break;
            }
        }
    }

    std::unordered_set<std::string_view> hyp_error_stems, ref_error_stems;
    for (std::size_t j = 0; j < hyp.size(); ++j)
        if (per.hyp[j]) hyp_error_stems.insert(hyp_stems[j]);
    for (std::size_t k = 0; k < ref.size(); ++k)
        if (per.ref[k]) ref_error_stems.insert(ref_stems[k]);

    for (std::size_t k = 0; k < ref.size(); ++k) {
        if (script.ref_labels[k] == EditOp::Deletion && per.ref[k] && !hyp_error_stems.count(ref_stems[k])) {
            out.ref[k] = RefClass::Missing;
        }
    }
    for (std::size_t j = 0; j < hyp.size(); ++j) {
        const EditOp op = script.hyp_labels[j];
        if (!per.hyp[j]) {
            if (op == EditOp::Substitution || op == EditOp::Insertion) out.hyp[j] = HypClass::Reordering;
            continue;
        }
        if (out.hyp[j] != HypClass::None) continue;
        if (op == EditOp::Insertion && !ref_error_stems.count(hyp_stems[j])) {
            out.hyp[j] = HypClass::Extra;
        } else {
            out.hyp[j] = HypClass::Lexical;
        }
    }
    return out;
}

ErrorCounts &ErrorCounts::operator+=(const ErrorCounts &other) {
    inflection += other.inflection;
    reordering += other.reordering;
    missing += other.missing;
    extra += other.extra;
    lexical_choice += other.lexical_choice;
    reference_tokens += other.reference_tokens;
    return *this;
}

ErrorCounts count_errors(const ErrorAnnotation &annotation, std::size_t reference_tokens) {
    ErrorCounts c;
    c.reference_tokens = reference_tokens;
    for (const auto h : annotation.hyp) {
        switch (h) {
        case HypClass::Inflection: ++c.inflection; break;
        case HypClass::Reordering: ++c.reordering; break;
        case HypClass::Extra: ++c.extra; break;
        case HypClass::Lexical: ++c.lexical_choice; break;
        case HypClass::None: break;
        }
    }
    c.missing = static_cast<std::size_t>(std::count(annotation.ref.begin(), annotation.ref.end(), RefClass::Missing));
    return c;
}

double ErrorRates::rate(ErrorCategory c) const {
    switch (c) {
    case ErrorCategory::Inflection: return inflection;
    case ErrorCategory::Reordering: return reordering;
    case ErrorCategory::Lexical: return lexical;
    }
    return 0.0;
}

ErrorRates error_rates(const ErrorCounts &counts) {
    ErrorRates r;
    r.counts = counts;
    if (counts.reference_tokens == 0) return r;
    const double n = static_cast<double>(counts.reference_tokens);
    r.inflection = static_cast<double>(counts.inflection) / n;
    r.reordering = static_cast<double>(counts.reordering) / n;
    r.missing = static_cast<double>(counts.missing) / n;
    r.extra = static_cast<double>(counts.extra) / n;
    r.lexical_choice = static_cast<double>(counts.lexical_choice) / n;
    r.lexical = static_cast<double>(counts.lexical()) / n;
    return r;
}

ErrorRates error_rates(std::span<const ErrorAnnotation> annotations, const Corpus &reference) {
    if (annotations.size() != reference.size()) {
        throw std::invalid_argument("error rates: " + std::to_string(annotations.size()) + " annotations for " +
                                    std::to_string(reference.size()) + " reference segments");
    }
    ErrorCounts total;
    for (std::size_t i = 0; i < annotations.size(); ++i) {
        total += count_errors(annotations[i], reference.segments[i].size());
    }
    return error_rates(total);
}

std::optional<double> RelativeImprovement::get(ErrorCategory c) const {
    switch (c) {
    case ErrorCategory::Inflection: return inflection;
    case ErrorCategory::Reordering: return reordering;
    case ErrorCategory::Lexical: return lexical;
    }
    return std::nullopt;
}

RelativeImprovement relative_improvement(const ErrorRates &nmt, const ErrorRates &pbmt) {
    return {relative_difference(nmt.inflection, pbmt.inflection),
            relative_difference(nmt.reordering, pbmt.reordering), relative_difference(nmt.lexical, pbmt.lexical)};
}

ErrorCategoryReport error_category_report(const EvalBundle &bundle, const std::string &nmt_id,
                                          const std::string &pbmt_id, const std::string &language) {
    const LightStemmer stemmer(language);
    ErrorCategoryReport report;
    report.nmt_id = nmt_id;
    report.pbmt_id = pbmt_id;

    auto stems_for = [&](const std::string &name, const Corpus &tokens) {
        if (const auto it = bundle.stems.find(name); it != bundle.stems.end()) return it->second;
        report.used_builtin_stemmer = true;
        Corpus stems;
        stems.name = name + ".stems";
        for (const auto &seg : tokens.segments) stems.segments.push_back(stem_segment(seg, stemmer));
        return stems;
    };
    const Corpus ref_stems = stems_for(std::string(kReferenceKey), bundle.reference);
    for (const auto &sys : bundle.systems) {
        if (sys.corpus.size() != bundle.reference.size()) {
            throw InputError("error categories: '" + sys.system_id + "' has " + std::to_string(sys.corpus.size()) +
                             " segments, reference has " + std::to_string(bundle.reference.size()));
        }
        const Corpus hyp_stems = stems_for(sys.system_id, sys.corpus);
        SystemErrors entry;
        entry.system_id = sys.system_id;
        entry.paradigm = sys.paradigm;
        for (std::size_t i = 0; i < sys.corpus.size(); ++i) {
            entry.annotations.push_back(classify_errors(sys.corpus.segments[i], bundle.reference.segments[i],
                                                        hyp_stems.segments[i], ref_stems.segments[i]));
        }
        entry.rates = error_rates(entry.annotations, bundle.reference);
        report.systems.push_back(std::move(entry));
    }
    const SystemErrors *nmt = nullptr;
    const SystemErrors *pbmt = nullptr;
    for (const auto &s : report.systems) {
        if (s.system_id == nmt_id) nmt = &s;
        if (s.system_id == pbmt_id) pbmt = &s;
    }
    if (!nmt || !pbmt) throw InputError("error categories: primary NMT/PBMT system not found");
    report.nmt_vs_pbmt = relative_improvement(nmt->rates, pbmt->rates);
    return report;
}

std::string format_class_dump(std::span<const ErrorAnnotation> annotations) {
    std::string out;
    for (const auto &a : annotations) {
        for (std::size_t j = 0; j < a.hyp.size(); ++j) {
            if (j) out += ' ';
            out += to_string(a.hyp[j]);
        }
        out += '\n';
    }
    return out;
}

} // namespace mtcompare
