#include "mtcompare/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mtcompare/error.hpp"
#include "mtcompare/error_cats.hpp"
#include "mtcompare/metrics.hpp"
#include "mtcompare/reordering.hpp"
#include "mtcompare/similarity.hpp"

namespace mtcompare {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kReportFormatVersion = 1;

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string fixed(const std::optional<double> &v, int decimals) { return v ? fixed(*v, decimals) : "N/A"; }

ordered_json to_json(const std::optional<double> &v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json to_json(const BootstrapResult &r) {
    return {{"wins_a", r.wins_a},     {"wins_b", r.wins_b},   {"ties", r.ties},
            {"iterations", r.iterations}, {"p_value", r.p_value}, {"significant", r.significant}};
}

// File-name-safe version of a direction or system name.
std::string safe_name(std::string_view name) {
    std::string out;
    for (const char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? "_" : out;
}

class Tsv {
  public:
    Tsv(const std::string &provenance, std::initializer_list<std::string> columns) {
        text_ << provenance << '\n';
        if (columns.size() > 0) row(std::vector<std::string>(columns));
    }

    void comment(const std::string &line) { text_ << "# " << line << '\n'; }

    void row(const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "\t" : "") << cells[i];
        text_ << '\n';
    }

    std::string str() const { return text_.str(); }

  private:
    std::ostringstream text_;
};

void write_file(const fs::path &path, const std::string &content, std::vector<fs::path> &written) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
}

struct Context {
    const RunConfig &config;
    std::vector<LoadedDirection> &directions;
    std::string provenance;
    std::vector<fs::path> &written;
    std::ostream &log;

    fs::path out(const std::string &name) const { return config.output / name; }
    void write(const std::string &name, const std::string &content) const { write_file(out(name), content, written); }
};

// ---------------------------------------------------------------------------

ordered_json run_overall(const Context &ctx) {
    ordered_json dirs = ordered_json::array();
    Tsv table(ctx.provenance, {"direction", "system", "paradigm", "BLEU", "chrF1"});
    Tsv sig(ctx.provenance, {"direction", "metric", "nmt", "pbmt", "nmt_score", "pbmt_score", "wins_nmt", "wins_pbmt",
                             "ties", "p_value", "better"});
    for (auto &ld : ctx.directions) {
        const auto &b = ld.bundle;
        ordered_json systems = ordered_json::array();
        std::map<std::string, std::vector<BleuStats>> bleu_seg;
        std::map<std::string, std::vector<ChrfStats>> chrf_seg;
        std::map<std::string, std::pair<double, double>> scores;
        for (const auto &sys : b.systems) {
            auto &bs = bleu_seg[sys.system_id];
            auto &cs = chrf_seg[sys.system_id];
            for (std::size_t i = 0; i < b.reference.size(); ++i) {
                bs.push_back(bleu_stats(sys.corpus.segments[i], b.reference.segments[i]));
                cs.push_back(chrf_stats(sys.corpus.segments[i], b.reference.segments[i]));
            }
            BleuStats total_b;
            for (const auto &s : bs) total_b += s;
            ChrfStats total_c;
            for (const auto &s : cs) total_c += s;
            const auto bl = bleu_from_stats(total_b);
            const double ch = chrf_from_stats(total_c);
            scores[sys.system_id] = {bl.score.value, ch};
            systems.push_back({{"id", sys.system_id},
                               {"paradigm", to_string(sys.paradigm)},
                               {"bleu", bl.score.value},
                               {"bleu_zero_match", bl.zero_match},
                               {"bleu_precisions", bl.precisions},
                               {"brevity_penalty", bl.brevity_penalty},
                               {"chrf1", ch}});
            table.row({ld.config->name, sys.system_id, std::string(to_string(sys.paradigm)), fixed(bl.score.value, 2),
                       fixed(ch, 2)});
            if (bl.zero_match) {
                ctx.log << "[" << ld.config->name << "] " << sys.system_id
                        << ": BLEU has an n-gram order with no matches; score is 0\n";
            }
        }
        ordered_json entry = {{"name", ld.config->name}, {"systems", systems}};
        if (!ld.nmt_id.empty() && !ld.pbmt_id.empty()) {
            const std::size_t n = b.reference.size();
            const auto &bn = bleu_seg[ld.nmt_id];
            const auto &bp = bleu_seg[ld.pbmt_id];
            const auto &cn = chrf_seg[ld.nmt_id];
            const auto &cp = chrf_seg[ld.pbmt_id];
            const auto r_bleu = paired_bootstrap(
                n, [&](std::span<const std::size_t> idx) { return bleu_subset(bn, idx); },
                [&](std::span<const std::size_t> idx) { return bleu_subset(bp, idx); }, ctx.config.bootstrap);
            const auto r_chrf = paired_bootstrap(
                n, [&](std::span<const std::size_t> idx) { return chrf1_subset(cn, idx); },
                [&](std::span<const std::size_t> idx) { return chrf1_subset(cp, idx); }, ctx.config.bootstrap);
            auto better = [&](const BootstrapResult &r) -> std::string {
                if (!r.significant) return "n.s.";
                return r.wins_a > r.wins_b ? "NMT" : "PBMT";
            };
            auto sig_row = [&](const char *metric, const BootstrapResult &r, double sn, double sp) {
                sig.row({ld.config->name, metric, ld.nmt_id, ld.pbmt_id, fixed(sn, 2), fixed(sp, 2),
                         std::to_string(r.wins_a), std::to_string(r.wins_b), std::to_string(r.ties),
                         fixed(r.p_value, 4), better(r)});
            };
            sig_row("BLEU", r_bleu, scores[ld.nmt_id].first, scores[ld.pbmt_id].first);
            sig_row("chrF1", r_chrf, scores[ld.nmt_id].second, scores[ld.pbmt_id].second);
            entry["significance"] = {{"a", ld.nmt_id},
                                     {"b", ld.pbmt_id},
                                     {"bleu", to_json(r_bleu)},
                                     {"chrf1", to_json(r_chrf)}};
        }
        dirs.push_back(std::move(entry));
    }
    ctx.write("overall.tsv", table.str());
    ctx.write("overall_significance.tsv", sig.str());
    return {{"directions", dirs}};
}

ordered_json run_similarity(const Context &ctx) {
    ordered_json dirs = ordered_json::array();
    Tsv summary(ctx.provenance, {"direction", "NMT-NMT", "PBMT-PBMT", "NMT-PBMT", "n_nmt", "n_pbmt"});
    for (auto &ld : ctx.directions) {
        const auto &systems = ld.bundle.systems;
        const auto m = pairwise_overlap(systems);
        std::vector<Paradigm> paradigms;
        for (const auto &s : systems) paradigms.push_back(s.paradigm);
        const auto avg = group_averages(m, paradigms);

        std::vector<std::string> header = {"system"};
        for (const auto &s : systems) header.push_back(s.system_id);
        Tsv matrix(ctx.provenance, {});
        matrix.row(header);
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::vector<std::string> cells = {systems[i].system_id};
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < m.size(); ++j) {
                cells.push_back(fixed(m(i, j), 2));
                row.push_back(m(i, j));
            }
            matrix.row(cells);
            rows.push_back(row);
        }
        ctx.write("similarity_" + safe_name(ld.config->name) + "_matrix.tsv", matrix.str());

        const auto n_nmt = static_cast<std::size_t>(std::count(paradigms.begin(), paradigms.end(), Paradigm::NMT));
        summary.row({ld.config->name, fixed(avg.nmt_nmt.mean, 2), fixed(avg.pbmt_pbmt.mean, 2),
                     fixed(avg.cross.mean, 2), std::to_string(n_nmt), std::to_string(paradigms.size() - n_nmt)});
        auto group = [](const GroupAverage &g) { return ordered_json{{"mean", to_json(g.mean)}, {"pairs", g.pairs}}; };
        ordered_json ids = ordered_json::array();
        ordered_json tags = ordered_json::array();
        for (const auto &s : systems) {
            ids.push_back(s.system_id);
            tags.push_back(to_string(s.paradigm));
        }
        dirs.push_back({{"name", ld.config->name},
                        {"systems", ids},
                        {"paradigms", tags},
                        {"matrix", rows},
                        {"n_nmt", n_nmt},
                        {"n_pbmt", paradigms.size() - n_nmt},
                        {"nmt_nmt", group(avg.nmt_nmt)},
                        {"pbmt_pbmt", group(avg.pbmt_pbmt)},
                        {"nmt_pbmt", group(avg.cross)}});
    }
    ctx.write("similarity.tsv", summary.str());
    return {{"level", "corpus"}, {"directions", dirs}};
}

ordered_json run_fluency(const Context &ctx) {
    ordered_json dirs = ordered_json::array();
    std::vector<FluencyReport> reports;
    Tsv table(ctx.provenance, {"direction", "PBMT", "NMT", "rel_diff_pct"});
    Tsv per_system(ctx.provenance, {"direction", "system", "paradigm", "perplexity", "scored_tokens"});
    for (auto &ld : ctx.directions) {
        const auto &cfg = *ld.config;
        std::string lm_source = "external scores";
        bool need_lm = false;
        for (const auto &s : ld.bundle.systems)
            if (!ld.bundle.lm_scores.count(s.system_id)) need_lm = true;
        if (need_lm && !ld.lm) {
            if (!ld.bundle.lm_training) throw InputError("no language model for '" + cfg.name + "'");
            ld.lm = NGramLM::train(*ld.bundle.lm_training, {cfg.lm.order, cfg.lm.vocab_cap, 0.75});
            lm_source = "trained";
            if (cfg.lm.save) {
                std::ostringstream os;
                ld.lm->save(os);
                write_file(*cfg.lm.save, os.str(), ctx.written);
            }
        } else if (need_lm) {
            lm_source = "model file";
        }
        auto report = fluency_report(ld.bundle, ld.lm ? &*ld.lm : nullptr, ld.nmt_id, ld.pbmt_id);
        table.row({cfg.name, fixed(report.pbmt_perplexity, 2), fixed(report.nmt_perplexity, 2),
                   fixed(report.relative_difference, 2)});
        ordered_json systems = ordered_json::array();
        for (const auto &row : report.systems) {
            per_system.row({cfg.name, row.system_id, std::string(to_string(row.paradigm)), fixed(row.perplexity, 2),
                            std::to_string(row.scored_tokens)});
            systems.push_back({{"id", row.system_id},
                               {"paradigm", to_string(row.paradigm)},
                               {"perplexity", row.perplexity},
                               {"scored_tokens", row.scored_tokens}});
        }
        ordered_json lm_info = {{"source", lm_source}};
        if (need_lm) {
            lm_info["order"] = ld.lm->order();
            lm_info["discount"] = ld.lm->discount();
            lm_info["vocabulary"] = ld.lm->predictable_size();
        }
        dirs.push_back({{"name", cfg.name},
                        {"nmt", report.nmt_id},
                        {"pbmt", report.pbmt_id},
                        {"pbmt_perplexity", report.pbmt_perplexity},
                        {"nmt_perplexity", report.nmt_perplexity},
                        {"relative_difference_pct", to_json(report.relative_difference)},
                        {"systems", systems},
                        {"lm", lm_info}});
        reports.push_back(std::move(report));
    }
    const auto avg = average_fluency(reports);
    table.row({"Average", fixed(avg.pbmt_perplexity, 2), fixed(avg.nmt_perplexity, 2),
               fixed(avg.relative_difference, 2)});
    ctx.write("fluency.tsv", table.str());
    ctx.write("fluency_systems.tsv", per_system.str());
    return {{"directions", dirs},
            {"average",
             {{"pbmt_perplexity", avg.pbmt_perplexity},
              {"nmt_perplexity", avg.nmt_perplexity},
              {"relative_difference_pct", to_json(avg.relative_difference)}}}};
}

ordered_json run_reordering(const Context &ctx) {
    ordered_json dirs = ordered_json::array();
    Tsv table(ctx.provenance, {"direction", "mono_vs_PBMT", "mono_vs_NMT", "mono_vs_Ref", "PBMT_vs_Ref", "NMT_vs_Ref",
                               "p_value", "closer_to_ref"});
    Tsv per_system(ctx.provenance, {"direction", "id", "paradigm", "vs_monotone", "vs_reference"});
    for (auto &ld : ctx.directions) {
        const auto report = reordering_report(ld.bundle, ld.nmt_id, ld.pbmt_id, ctx.config.bootstrap);
        const ReorderingRow *ref = nullptr, *nmt = nullptr, *pbmt = nullptr;
        ordered_json rows = ordered_json::array();
        for (const auto &row : report.rows) {
            if (!row.paradigm) ref = &row;
            if (row.paradigm && row.id == ld.nmt_id) nmt = &row;
            if (row.paradigm && row.id == ld.pbmt_id) pbmt = &row;
            const std::string tag = row.paradigm ? std::string(to_string(*row.paradigm)) : "Ref";
            per_system.row({ld.config->name, row.id, tag, fixed(row.vs_monotone, 4), fixed(row.vs_reference, 4)});
            rows.push_back({{"id", row.id},
                            {"paradigm", tag},
                            {"vs_monotone", row.vs_monotone},
                            {"vs_reference", to_json(row.vs_reference)}});
        }
        std::string closer = "n.s.";
        ordered_json sig = nullptr;
        if (report.significance) {
            const auto &s = *report.significance;
            if (s.significant) closer = s.wins_a > s.wins_b ? "NMT" : "PBMT";
            sig = to_json(s);
            sig["a"] = ld.nmt_id;
            sig["b"] = ld.pbmt_id;
        }
        table.row({ld.config->name, fixed(pbmt->vs_monotone, 4), fixed(nmt->vs_monotone, 4), fixed(ref->vs_monotone, 4),
                   fixed(pbmt->vs_reference, 4), fixed(nmt->vs_reference, 4),
                   report.significance ? fixed(report.significance->p_value, 4) : "N/A", closer});
        dirs.push_back({{"name", ld.config->name},
                        {"nmt", ld.nmt_id},
                        {"pbmt", ld.pbmt_id},
                        {"rows", rows},
                        {"significance", sig},
                        {"closer_to_reference", closer}});
    }
    ctx.write("reordering.tsv", table.str());
    ctx.write("reordering_systems.tsv", per_system.str());
    return {{"measure", "1 - discordant pairs / all pairs, macro-averaged over segments"}, {"directions", dirs}};
}

ordered_json curve_json(const LengthCurve &curve) {
    ordered_json points = ordered_json::array();
    for (const auto &p : curve.points) {
        points.push_back({{"bucket", p.label},
                          {"segments", p.segments},
                          {"mean_length", p.mean_length},
                          {"chrf1_nmt", p.chrf_nmt},
                          {"chrf1_pbmt", p.chrf_pbmt},
                          {"relative_improvement_pct", to_json(p.relative_improvement)}});
    }
    return {{"nmt", curve.nmt_id}, {"pbmt", curve.pbmt_id}, {"points", points},
            {"pearson_r", to_json(curve.correlation)}};
}

std::string curve_tsv(const LengthCurve &curve, const std::string &provenance) {
    Tsv tsv(provenance, {});
    tsv.comment("NMT=" + curve.nmt_id + " PBMT=" + curve.pbmt_id);
    tsv.row({"bucket", "segments", "mean_length", "chrF1_NMT", "chrF1_PBMT", "rel_improvement_pct"});
    for (const auto &p : curve.points) {
        if (p.segments == 0) {
            tsv.row({p.label, "0", "N/A", "N/A", "N/A", "N/A"});
        } else {
            tsv.row({p.label, std::to_string(p.segments), fixed(p.mean_length, 2), fixed(p.chrf_nmt, 2),
                     fixed(p.chrf_pbmt, 2), fixed(p.relative_improvement, 2)});
        }
    }
    return tsv.str();
}

ordered_json run_length(const Context &ctx) {
    ordered_json dirs = ordered_json::array();
    std::vector<LengthCurve> curves;
    Tsv corr(ctx.provenance, {"direction", "pearson_r", "buckets"});
    auto used = [](const LengthCurve &c) {
        return std::count_if(c.points.begin(), c.points.end(),
                             [](const LengthPoint &p) { return p.segments > 0 && p.relative_improvement; });
    };
    for (auto &ld : ctx.directions) {
        auto curve = length_curve(ld.bundle, ld.nmt_id, ld.pbmt_id, ctx.config.length_bucket_width,
                                  ctx.config.length_bucket_cap);
        const std::string stem = "length_" + safe_name(ld.config->name);
        ctx.write(stem + "_curve.tsv", curve_tsv(curve, ctx.provenance));
        for (auto &p : emit_plot_data(curve, ctx.config.output, stem, ctx.provenance)) ctx.written.push_back(p);
        corr.row({ld.config->name, fixed(curve.correlation, 2), std::to_string(used(curve))});
        auto j = curve_json(curve);
        j["name"] = ld.config->name;
        dirs.push_back(std::move(j));
        curves.push_back(std::move(curve));
    }
    const auto macro = macro_average(curves);
    ctx.write("length_macro_curve.tsv", curve_tsv(macro, ctx.provenance));
    for (auto &p : emit_plot_data(macro, ctx.config.output, "length_macro", ctx.provenance)) ctx.written.push_back(p);
    corr.row({"macro-average", fixed(macro.correlation, 2), std::to_string(used(macro))});
    ctx.write("length_correlations.tsv", corr.str());
    return {{"bucket_width", ctx.config.length_bucket_width},
            {"bucket_cap", ctx.config.length_bucket_cap},
            {"x", "bucket mean source length"},
            {"directions", dirs},
            {"macro_average", curve_json(macro)}};
}

ordered_json run_errcats(const Context &ctx) {
    ordered_json dirs = ordered_json::array();
    std::vector<RelativeImprovement> improvements;
    Tsv rates(ctx.provenance, {"direction", "system", "paradigm", "reference_tokens", "hINFer", "hRer", "MISer",
                               "EXTer", "hLEXer", "inflection_rate", "reordering_rate", "lexical_rate"});
    for (auto &ld : ctx.directions) {
        const auto &cfg = *ld.config;
        const auto report = error_category_report(ld.bundle, ld.nmt_id, ld.pbmt_id, cfg.language);
        if (report.used_builtin_stemmer && !LightStemmer(cfg.language).supported()) {
            ctx.log << "warning: [" << cfg.name << "] no stem files and no built-in stemmer for '" << cfg.language
                    << "'; inflection errors cannot be detected\n";
        }
        ordered_json systems = ordered_json::array();
        for (const auto &s : report.systems) {
            const auto &c = s.rates.counts;
            rates.row({cfg.name, s.system_id, std::string(to_string(s.paradigm)), std::to_string(c.reference_tokens),
                       std::to_string(c.inflection), std::to_string(c.reordering), std::to_string(c.missing),
                       std::to_string(c.extra), std::to_string(c.lexical_choice), fixed(s.rates.inflection, 4),
                       fixed(s.rates.reordering, 4), fixed(s.rates.lexical, 4)});
            systems.push_back({{"id", s.system_id},
                               {"paradigm", to_string(s.paradigm)},
                               {"reference_tokens", c.reference_tokens},
                               {"counts",
                                {{"hINFer", c.inflection},
                                 {"hRer", c.reordering},
                                 {"MISer", c.missing},
                                 {"EXTer", c.extra},
                                 {"hLEXer", c.lexical_choice}}},
                               {"rates",
                                {{"inflection", s.rates.inflection},
                                 {"reordering", s.rates.reordering},
                                 {"lexical", s.rates.lexical},
                                 {"missing", s.rates.missing},
                                 {"extra", s.rates.extra},
                                 {"lexical_choice", s.rates.lexical_choice}}}});
            if (ctx.config.class_dump) {
                ctx.write("errcats_" + safe_name(cfg.name) + "_" + safe_name(s.system_id) + ".classes",
                          format_class_dump(s.annotations));
            }
        }
        ordered_json rel;
        for (const auto c : kErrorCategories) rel[std::string(to_string(c))] = to_json(report.nmt_vs_pbmt.get(c));
        dirs.push_back({{"name", cfg.name},
                        {"nmt", ld.nmt_id},
                        {"pbmt", ld.pbmt_id},
                        {"builtin_stemmer", report.used_builtin_stemmer},
                        {"systems", systems},
                        {"relative_improvement_pct", rel}});
        improvements.push_back(report.nmt_vs_pbmt);
    }

    Tsv table(ctx.provenance, {});
    std::vector<std::string> header = {"error_type"};
    for (const auto &ld : ctx.directions) header.push_back(ld.config->name);
    header.push_back("Average");
    table.row(header);
    ordered_json average;
    for (const auto c : kErrorCategories) {
        std::vector<std::string> cells = {std::string(to_string(c))};
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto &imp : improvements) {
            const auto v = imp.get(c);
            cells.push_back(fixed(v, 2));
            if (v) {
                sum += *v;
                ++n;
            }
        }
        const std::optional<double> mean = n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt;
        cells.push_back(fixed(mean, 2));
        average[std::string(to_string(c))] = to_json(mean);
        table.row(cells);
    }
    ctx.write("errcats.tsv", table.str());
    ctx.write("errcats_rates.tsv", rates.str());
    return {{"normalizer", "reference tokens"}, {"directions", dirs}, {"average_relative_improvement_pct", average}};
}

} // namespace

std::string provenance_line(const RunConfig &config) {
    std::string lm_order = "3";
    if (!config.directions.empty()) lm_order = std::to_string(config.directions.front().lm.order);
    char alpha[32];
    std::snprintf(alpha, sizeof alpha, "%g", config.bootstrap.alpha);
    return "# mtcompare seed=" + std::to_string(config.bootstrap.seed) +
           " iterations=" + std::to_string(config.bootstrap.iterations) + " alpha=" + alpha +
           " chrf_orders=1-6 chrf_beta=1 lm_order=" + lm_order + " lm_discount=0.75 length_width=" +
           std::to_string(config.length_bucket_width) + " length_cap=" + std::to_string(config.length_bucket_cap);
}

std::vector<fs::path> emit_plot_data(const LengthCurve &curve, const fs::path &dir, const std::string &stem,
                                     const std::string &provenance) {
    if (curve.points.empty()) throw std::invalid_argument("no length buckets to plot");
    std::string omitted, undefined;
    for (const auto &p : curve.points) {
        if (p.segments == 0) {
            omitted += " " + p.label;
        } else if (!p.relative_improvement) {
            undefined += " " + p.label;
        }
    }
    Tsv scores(provenance, {});
    Tsv relimp(provenance, {});
    scores.comment("NMT=" + curve.nmt_id + " PBMT=" + curve.pbmt_id);
    relimp.comment("NMT=" + curve.nmt_id + " PBMT=" + curve.pbmt_id);
    if (!omitted.empty()) {
        scores.comment("omitted empty buckets:" + omitted);
        relimp.comment("omitted empty buckets:" + omitted);
    }
    if (!undefined.empty()) relimp.comment("omitted buckets with PBMT chrF1 of 0:" + undefined);
    scores.row({"bucket", "mean_length", "chrF1_NMT", "chrF1_PBMT"});
    relimp.row({"bucket", "mean_length", "rel_improvement_pct"});
    for (const auto &p : curve.points) {
        if (p.segments == 0) continue;
        scores.row({p.label, fixed(p.mean_length, 2), fixed(p.chrf_nmt, 2), fixed(p.chrf_pbmt, 2)});
        if (p.relative_improvement) relimp.row({p.label, fixed(p.mean_length, 2), fixed(p.relative_improvement, 2)});
    }
    std::vector<fs::path> written;
    write_file(dir / (stem + "_scores.tsv"), scores.str(), written);
    write_file(dir / (stem + "_relimp.tsv"), relimp.str(), written);
    return written;
}

LoadedDirection load_direction(const DirectionConfig &config, const std::set<Analysis> &analyses,
                               std::vector<Violation> &violations) {
    LoadedDirection ld;
    ld.config = &config;
    auto fail = [&](const std::string &msg) { violations.push_back({"[" + config.name + "] " + msg}); };
    auto attempt = [&](auto &&fn) {
        try {
            fn();
        } catch (const std::exception &e) {
            fail(e.what());
        }
    };
    auto &b = ld.bundle;
    attempt([&] { b.source = load_corpus(config.source, "source"); });
    attempt([&] { b.reference = load_corpus(config.reference, std::string(kReferenceKey)); });
    for (const auto &spec : config.systems) {
        attempt([&] {
            SystemOutput sys;
            sys.system_id = spec.id;
            sys.paradigm = spec.paradigm;
            sys.corpus = load_corpus(spec.path, spec.id);
            b.systems.push_back(std::move(sys));
        });
    }
    auto first_of = [&](Paradigm p) -> std::string {
        for (const auto &s : config.systems)
            if (s.paradigm == p) return s.id;
        return {};
    };
    ld.nmt_id = config.primary_nmt.empty() ? first_of(Paradigm::NMT) : config.primary_nmt;
    ld.pbmt_id = config.primary_pbmt.empty() ? first_of(Paradigm::PBMT) : config.primary_pbmt;

    if (analyses.count(Analysis::Reordering)) {
        for (const auto &[key, path] : config.alignments) {
            attempt([&, &key = key, &path = path] {
                const Corpus *target = b.find_corpus(key);
                if (!target) throw InputError("alignments given for unknown corpus '" + key + "'");
                b.alignments[key] = load_alignments(path, b.source, *target);
            });
        }
    }
    if (analyses.count(Analysis::ErrorCategories)) {
        for (const auto &[key, path] : config.stems) {
            attempt([&, &key = key, &path = path] {
                if (!b.find_corpus(key)) throw InputError("stems given for unknown corpus '" + key + "'");
                b = bind_stems(std::move(b), key, load_corpus(path, key + ".stems"));
            });
        }
    }
    if (analyses.count(Analysis::Fluency)) {
        for (const auto &[key, path] : config.lm_scores) {
            attempt([&, &key = key, &path = path] {
                const auto *sys = b.find_system(key);
                if (!sys) throw InputError("LM scores given for unknown system '" + key + "'");
                b.lm_scores[key] = load_external_scores(path, sys->corpus);
            });
        }
        if (config.lm.model) {
            attempt([&] {
                std::ifstream in(*config.lm.model, std::ios::binary);
                if (!in) throw InputError("cannot open " + config.lm.model->string());
                ld.lm = NGramLM::load(in);
            });
        } else if (config.lm.train) {
            attempt([&] { b.lm_training = load_corpus(*config.lm.train, "lm-training"); });
        }
    }
    return ld;
}

RunOutcome run(const RunConfig &config, const std::set<Analysis> &analyses, bool validate_only, std::ostream &log) {
    RunOutcome outcome;
    std::vector<LoadedDirection> directions;
    directions.reserve(config.directions.size());
    for (const auto &dc : config.directions) {
        const std::size_t before = outcome.violations.size();
        auto ld = load_direction(dc, analyses, outcome.violations);
        if (outcome.violations.size() == before) {
            ValidationOptions opts;
            opts.analyses = analyses;
            opts.primary_nmt = dc.primary_nmt;
            opts.primary_pbmt = dc.primary_pbmt;
            opts.language_model_available = ld.lm.has_value();
            for (auto &v : validate_bundle(ld.bundle, opts)) {
                outcome.violations.push_back({"[" + dc.name + "] " + v.message});
            }
        }
        directions.push_back(std::move(ld));
    }
    if (!outcome.violations.empty()) {
        log << "validation failed with " << outcome.violations.size() << " problem(s):\n";
        for (const auto &v : outcome.violations) log << "  " << v.message << '\n';
        outcome.exit_code = kExitValidation;
        return outcome;
    }
    if (validate_only) {
        log << "ok: " << directions.size() << " direction(s) valid for the requested analyses\n";
        return outcome;
    }

    try {
        fs::create_directories(config.output);
    } catch (const fs::filesystem_error &e) {
        log << "error: " << e.what() << '\n';
        outcome.exit_code = kExitRuntime;
        return outcome;
    }

    const Context ctx{config, directions, provenance_line(config), outcome.files, log};
    auto &report = outcome.report;
    report["tool"] = "mtcompare";
    report["format_version"] = kReportFormatVersion;
    report["settings"] = {{"seed", config.bootstrap.seed},
                          {"iterations", config.bootstrap.iterations},
                          {"alpha", config.bootstrap.alpha},
                          {"chrf_orders", {1, 6}},
                          {"chrf_beta", 1},
                          {"lm_order", config.directions.empty() ? 3 : config.directions.front().lm.order},
                          {"lm_discount", 0.75},
                          {"length_bucket_width", config.length_bucket_width},
                          {"length_bucket_cap", config.length_bucket_cap}};
    ordered_json names = ordered_json::array();
    for (const auto &dc : config.directions) names.push_back(dc.name);
    report["directions"] = names;
    report["analyses"] = ordered_json::object();

    bool failed = false;
    for (const auto a : all_analyses()) {
        if (!analyses.count(a)) continue;
        const std::string name(to_string(a));
        try {
            ordered_json result;
            switch (a) {
            case Analysis::Overall: result = run_overall(ctx); break;
            case Analysis::Similarity: result = run_similarity(ctx); break;
            case Analysis::Fluency: result = run_fluency(ctx); break;
            case Analysis::Reordering: result = run_reordering(ctx); break;
            case Analysis::Length: result = run_length(ctx); break;
            case Analysis::ErrorCategories: result = run_errcats(ctx); break;
            }
            ordered_json entry = {{"status", "ok"}};
            for (auto &[k, v] : result.items()) entry[k] = v;
            report["analyses"][name] = std::move(entry);
            log << name << ": ok\n";
        } catch (const std::exception &e) {
            failed = true;
            report["analyses"][name] = {{"status", "failed"}, {"error", e.what()}};
            log << name << ": FAILED: " << e.what() << '\n';
        }
    }
    try {
        write_file(config.output / "report.json", report.dump(2) + "\n", outcome.files);
    } catch (const std::exception &e) {
        log << "error: " << e.what() << '\n';
        failed = true;
    }
    outcome.exit_code = failed ? kExitRuntime : kExitOk;
    return outcome;
}

} // namespace mtcompare
