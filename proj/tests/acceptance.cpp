// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "mtcompare/config.hpp"
#include "mtcompare/error_cats.hpp"
#include "mtcompare/fluency.hpp"
#include "mtcompare/metrics.hpp"
#include "mtcompare/pipeline.hpp"
#include "mtcompare/reordering.hpp"
#include "mtcompare/stats.hpp"
#include "test_support.hpp"

using namespace mtcompare;
using namespace mtcompare::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kData = MTCOMPARE_TEST_DATA;

struct Outcome {
    enum { Pass, Fail, Skip } status = Pass;
    std::string detail;
};

// Records the first failure; later checks keep running so timing stays honest.
class Checker {
  public:
    void expect(bool ok, const std::string &what) {
        if (!ok && failure_.empty()) failure_ = what;
    }
    Outcome done(std::string detail) const {
        if (!failure_.empty()) return {Outcome::Fail, failure_};
        return {Outcome::Pass, std::move(detail)};
    }

  private:
    std::string failure_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// 1. chrF1(x, x) = 100, WER = 0, chrF1 symmetric, under 5 s.
Outcome metric_identities() {
    Checker c;
    const auto t0 = Clock::now();
    Rng rng(1001);
    double worst_sym = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = uniform(rng, 1, 20);
        const auto x = random_corpus(rng, n, 0, 15);
        const auto y = random_corpus(rng, n, 0, 15);
        c.expect(std::abs(chrf1(x, x).corpus.value - 100.0) <= 1e-9, "chrf1(x,x) != 100 in trial " + std::to_string(trial));
        for (const auto &seg : x.segments) c.expect(wer_align(seg, seg).wer() == 0.0, "wer(x,x) != 0");
        const double d = std::abs(chrf1(x, y).corpus.value - chrf1(y, x).corpus.value);
        worst_sym = std::max(worst_sym, d);
        c.expect(d <= 1e-9, "chrF1 asymmetry " + num(d));
    }
    const double secs = seconds_since(t0);
    c.expect(secs < 5.0, "took " + num(secs) + " s");
    return c.done("200 corpora, max asymmetry " + num(worst_sym) + ", " + num(secs) + " s");
}

// 2. Kendall similarity equals a brute-force pair counter.
Outcome kendall_oracle() {
    Checker c;
    std::size_t checked = 0;
    for (std::size_t n = 0; n <= 6; ++n) {
        auto a = iota_vec(n);
        do {
            c.expect(kendall_similarity(Permutation{a}) == oracle_kendall(a, iota_vec(n)), "mismatch at n=" + std::to_string(n));
            ++checked;
        } while (std::next_permutation(a.begin(), a.end()));
    }
    Rng rng(2002);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = uniform(rng, 0, 64);
        const auto p = random_permutation(rng, n);
        c.expect(kendall_similarity(Permutation{p}) == oracle_kendall(p, iota_vec(n)), "random mismatch n=" + std::to_string(n));
        ++checked;
    }
    for (std::size_t n = 2; n <= 64; ++n) {
        auto rev = iota_vec(n);
        std::reverse(rev.begin(), rev.end());
        c.expect(kendall_similarity(Permutation::identity(n)) == 1.0, "identity != 1");
        c.expect(kendall_similarity(Permutation{rev}) == 0.0, "reversal != 0");
    }
    return c.done(std::to_string(checked) + " permutations exact");
}

// 3. Hand-traced fixture counts and class consistency on random corpora.
Outcome hjerson_fixture() {
    Checker c;
    const auto dir = kData / "hjerson";
    const auto hyp = load_corpus(dir / "hyp.txt", "hyp");
    const auto ref = load_corpus(dir / "ref.txt", "reference");
    const auto hs = load_corpus(dir / "hyp.stems", "hyp");
    const auto rs = load_corpus(dir / "ref.stems", "reference");
    std::istringstream expected(slurp(dir / "expected.tsv"));
    std::string line;
    std::size_t i = 0;
    ErrorCounts total;
    while (std::getline(expected, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::size_t want[6];
        for (auto &w : want) ls >> w;
        const auto got = count_errors(classify_errors(hyp.segments[i], ref.segments[i], hs.segments[i], rs.segments[i]),
                                      ref.segments[i].size());
        const std::size_t have[6] = {got.inflection, got.reordering, got.missing, got.extra, got.lexical_choice,
                                     got.reference_tokens};
        for (int k = 0; k < 6; ++k) c.expect(have[k] == want[k], "sentence " + std::to_string(i + 1) + " column " + std::to_string(k));
        total += got;
        ++i;
    }
    c.expect(i == 10, "fixture has " + std::to_string(i) + " sentences");

    Rng rng(3003);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = uniform(rng, 1, 4);
        for (std::size_t s = 0; s < n; ++s) {
            const auto h = random_segment(rng, 0, 10, 5);
            const auto r = random_segment(rng, 0, 10, 5);
            auto stem = [](Segment seg) {
                for (auto &t : seg) t = t == "w1" ? "w0" : t;
                return seg;
            };
            const auto a = classify_errors(h, r, stem(h), stem(r));
            const auto per = per_errors(h, r);
            std::size_t infl = 0, support = 0;
            for (std::size_t j = 0; j < h.size(); ++j) {
                const bool lexical_side = a.hyp[j] == HypClass::Inflection || a.hyp[j] == HypClass::Extra ||
                                          a.hyp[j] == HypClass::Lexical;
                c.expect(lexical_side == per.hyp[j], "hPER word not in exactly one class");
                infl += a.hyp[j] == HypClass::Inflection;
            }
            for (const auto x : a.ref) support += x == RefClass::InflectionSupport;
            c.expect(infl == support, "inflection pairs unbalanced");
        }
    }
    return c.done("totals hINFer=" + std::to_string(total.inflection) + " hRer=" + std::to_string(total.reordering) +
                  " MISer=" + std::to_string(total.missing) + " EXTer=" + std::to_string(total.extra) +
                  " hLEXer=" + std::to_string(total.lexical_choice) + "; 1000 random corpora consistent");
}

// 4. Perplexity closed forms.
Outcome perplexity_closed_forms() {
    Checker c;
    for (const double v : {10.0, 1000.0, 50000.0}) {
        TokenLogProbs uniform_lp;
        for (int s = 0; s < 5; ++s) uniform_lp.segments.emplace_back(7 + s, -std::log(v));
        const double ppl = perplexity(uniform_lp);
        c.expect(std::abs(ppl - v) / v <= 1e-6, "uniform V=" + num(v) + " gave " + num(ppl));
    }
    TokenLogProbs zeros{{std::vector<double>(4, 0.0), std::vector<double>(2, 0.0)}};
    c.expect(perplexity(zeros) == 1.0, "all-zero log-probs != 1");
    Rng rng(4004);
    std::uniform_real_distribution<double> lp(-8.0, 0.0), shift(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        TokenLogProbs base, moved;
        const double k = shift(rng);
        for (int s = 0; s < 4; ++s) {
            std::vector<double> a, b;
            for (std::size_t t = 0, len = uniform(rng, 1, 10); t < len; ++t) {
                a.push_back(lp(rng));
                b.push_back(a.back() + k);
            }
            base.segments.push_back(a);
            moved.segments.push_back(b);
        }
        const double want = perplexity(base) * std::exp(-k);
        c.expect(std::abs(perplexity(moved) - want) <= 1e-9 * want, "shift identity off");
    }
    return c.done("V in {10, 1000, 50000}, zero log-probs, 100 shifts");
}

// 5. Paired bootstrap behaviour.
Outcome bootstrap_checks() {
    Checker c;
    const std::vector<double> seg = {0.2, 0.9, 0.4, 0.7, 0.1};
    const auto same = paired_bootstrap(seg.size(), mean_scorer(seg), mean_scorer(seg), {1000, 0.05, 42});
    c.expect(same.ties == 1000, "identical systems: " + std::to_string(same.ties) + " ties");

    std::vector<double> better = seg;
    for (auto &v : better) v += 0.05;
    const auto dom = paired_bootstrap(seg.size(), mean_scorer(better), mean_scorer(seg), {1000, 0.05, 42});
    c.expect(dom.p_value == 0.0 && dom.significant, "dominance: p=" + num(dom.p_value));

    Rng rng(5005);
    const auto ref = random_corpus(rng, 30, 3, 10);
    const auto a = random_corpus(rng, 30, 3, 10);
    const auto b = random_corpus(rng, 30, 3, 10);
    auto scorer = [](const Corpus &h, const Corpus &r) { return chrf1(h, r).corpus.value; };
    const auto r1 = paired_bootstrap(scorer, a, b, ref, {300, 0.05, 42});
    const auto r2 = paired_bootstrap(scorer, a, b, ref, {300, 0.05, 42});
    c.expect(r1.wins_a == r2.wins_a && r1.wins_b == r2.wins_b && r1.ties == r2.ties && r1.p_value == r2.p_value,
             "same seed gave different results");
    ResampleGenerator g1(30, 42), g2(30, 42);
    std::vector<std::size_t> s1, s2;
    for (int i = 0; i < 100; ++i) {
        g1.next(s1);
        g2.next(s2);
        c.expect(s1 == s2, "resample streams differ");
    }

    const std::vector<double> x = {1.0, 0.0, 0.2}, y = {0.0, 0.5, 0.2};
    std::size_t wins = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) wins += x[i] + x[j] + x[k] > y[i] + y[j] + y[k];
    const double p = static_cast<double>(wins) / 27.0;
    const std::size_t iters = 5000;
    const auto est = paired_bootstrap(3, mean_scorer(x), mean_scorer(y), {iters, 0.05, 42});
    const double rate = static_cast<double>(est.wins_a) / iters;
    const double sigma = std::sqrt(p * (1 - p) / iters);
    c.expect(std::abs(rate - p) <= 3 * sigma, "3-segment rate " + num(rate) + " vs exact " + num(p));
    return c.done("ties 1000/1000, dominance p=0, deterministic, enumeration " + num(p) + " vs " + num(rate));
}

// 6. Bucket partition and the degrading-NMT correlation.
Outcome length_analysis() {
    Checker c;
    Rng rng(6006);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::size_t> lengths(uniform(rng, 0, 100));
        for (auto &l : lengths) l = uniform(rng, 0, 80);
        const auto buckets = bucket_by_length(lengths);
        std::vector<int> seen(lengths.size(), 0);
        for (const auto &b : buckets)
            for (const auto i : b.indices) {
                ++seen[i];
                const auto len = std::max<std::size_t>(lengths[i], 1);
                c.expect(len >= b.lo && (!b.hi || len <= *b.hi), "segment in wrong bucket");
            }
        for (const auto s : seen) c.expect(s == 1, "segment not in exactly one bucket");
    }

    EvalBundle b;
    Corpus nmt, pbmt;
    for (std::size_t len = 1; len <= 70; ++len) {
        Segment src, ref;
        for (std::size_t k = 0; k < len; ++k) {
            src.push_back("s" + std::to_string(k));
            ref.push_back("tok" + std::to_string(k));
        }
        Segment n = ref, p = ref;
        n.resize(len - std::min(len - 1, len * len / 90));
        if (p.size() > 1) p.back() = "other";
        b.source.segments.push_back(src);
        b.reference.segments.push_back(ref);
        nmt.segments.push_back(n);
        pbmt.segments.push_back(p);
    }
    b.systems.push_back({"nmt", Paradigm::NMT, nmt});
    b.systems.push_back({"pbmt", Paradigm::PBMT, pbmt});
    const auto curve = length_curve(b, "nmt", "pbmt");
    c.expect(curve.correlation && *curve.correlation < -0.9,
             "degrading fixture r=" + (curve.correlation ? num(*curve.correlation) : std::string("undefined")));
    return c.done("1000 partitions, degrading fixture r=" + (curve.correlation ? num(*curve.correlation) : "n/a"));
}

// 7. Relative difference arithmetic on a published perplexity pair.
Outcome relative_improvement_formula() {
    Checker c;
    const auto d = relative_difference(173.33, 202.91);
    c.expect(d && std::abs(*d - (-14.58)) <= 0.01, "got " + (d ? num(*d) : std::string("none")));
    return c.done("(173.33 - 202.91) / 202.91 * 100 = " + (d ? num(*d) : "n/a"));
}

// 8. Trend-level reproduction on downloaded shared-task data. Direction
// names in the config must look like "en-cs" or "cs-en".
Outcome full_data_reproduction() {
    const char *path = std::getenv("MTCOMPARE_WMT16_CONFIG");
    if (!path || !*path) return {Outcome::Skip, "set MTCOMPARE_WMT16_CONFIG to a run config over the released outputs"};
    Checker c;
    const auto t0 = Clock::now();
    auto cfg = load_config(path);
    cfg.output = fs::temp_directory_path() / "mtcompare_acceptance_full";
    fs::remove_all(cfg.output);
    std::ostringstream log;
    const auto outcome = run(cfg, {Analysis::Similarity, Analysis::Length, Analysis::ErrorCategories}, false, log);
    if (outcome.exit_code != kExitOk) return {Outcome::Fail, "run failed: " + log.str()};
    const auto &a = outcome.report["analyses"];

    const std::map<std::string, std::array<double, 3>> overlap = {{"en-cs", {68.66, 77.63, 64.34}},
                                                                  {"en-de", {72.10, 72.97, 66.80}},
                                                                  {"en-fi", {56.03, 57.42, 55.55}},
                                                                  {"en-ro", {69.47, 75.96, 68.77}},
                                                                  {"en-ru", {35.52, 43.35, 29.87}}};
    std::size_t overlap_seen = 0;
    for (const auto &d : a["similarity"]["directions"]) {
        const auto it = overlap.find(d["name"].get<std::string>());
        if (it == overlap.end()) continue;
        ++overlap_seen;
        const double nn = d["nmt_nmt"]["mean"].get<double>();
        const double pp = d["pbmt_pbmt"]["mean"].get<double>();
        const double x = d["nmt_pbmt"]["mean"].get<double>();
        c.expect(pp > nn && nn > x, it->first + ": overlap ordering violated");
        c.expect(std::abs(nn - it->second[0]) <= 2.0 && std::abs(pp - it->second[1]) <= 2.0 &&
                     std::abs(x - it->second[2]) <= 2.0,
                 it->first + ": group averages off by more than 2.0");
    }
    c.expect(overlap_seen == overlap.size(), "expected 5 from-English directions, found " + std::to_string(overlap_seen));

    const std::map<std::string, double> correlation = {{"en-cs", -0.72}, {"en-de", -0.26}, {"en-fi", -0.89},
                                                       {"en-ro", -0.01}, {"en-ru", -0.74}, {"cs-en", -0.19},
                                                       {"de-en", 0.10},  {"ro-en", -0.36}, {"ru-en", -0.70}};
    std::size_t sign_matches = 0;
    for (const auto &d : a["length"]["directions"]) {
        const auto it = correlation.find(d["name"].get<std::string>());
        if (it == correlation.end() || d["pearson_r"].is_null()) continue;
        sign_matches += (d["pearson_r"].get<double>() < 0) == (it->second < 0);
    }
    c.expect(sign_matches >= 8, "correlation signs match for " + std::to_string(sign_matches) + " of 9");

    for (const auto &d : a["errcats"]["directions"]) {
        const auto &rel = d["relative_improvement_pct"];
        for (const char *cat : {"Inflection", "Reordering"}) {
            c.expect(!rel[cat].is_null() && rel[cat].get<double>() < 0,
                     d["name"].get<std::string>() + ": " + cat + " improvement not negative");
        }
    }
    const double secs = seconds_since(t0);
    c.expect(secs < 600, "took " + num(secs) + " s");
    fs::remove_all(cfg.output);
    return c.done("signs " + std::to_string(sign_matches) + "/9, " + num(secs) + " s");
}

// 9. Two seeded runs of `all` on the toy bundle give identical reports.
Outcome end_to_end_determinism() {
    Checker c;
    std::string reports[2];
    for (int k = 0; k < 2; ++k) {
        auto cfg = load_config(kData / "toy" / "config.json");
        cfg.bootstrap.seed = 42;
        cfg.output = fs::temp_directory_path() / ("mtcompare_acceptance_run" + std::to_string(k));
        fs::remove_all(cfg.output);
        std::ostringstream log;
        const auto outcome = run(cfg, cfg.analyses, false, log);
        c.expect(outcome.exit_code == kExitOk, "run " + std::to_string(k) + " exited " + std::to_string(outcome.exit_code));
        reports[k] = slurp(cfg.output / "report.json");
        fs::remove_all(cfg.output);
    }
    c.expect(!reports[0].empty() && reports[0] == reports[1], "report.json differs between runs");
    return c.done("report.json identical (" + std::to_string(reports[0].size()) + " bytes)");
}

} // namespace

int main() {
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"metric identities", metric_identities},
        {"kendall oracle equivalence", kendall_oracle},
        {"hjerson fixture", hjerson_fixture},
        {"perplexity closed forms", perplexity_closed_forms},
        {"paired bootstrap", bootstrap_checks},
        {"length analysis", length_analysis},
        {"relative improvement formula", relative_improvement_formula},
        {"full-data reproduction", full_data_reproduction},
        {"end-to-end determinism", end_to_end_determinism},
    };
    const std::size_t optional_index = 7;
    double desk_seconds = 0;
    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {Outcome::Fail, std::string("exception: ") + e.what()};
        }
        const char *tag = o.status == Outcome::Pass ? "PASS" : o.status == Outcome::Fail ? "FAIL" : "SKIP";
        failures += o.status == Outcome::Fail;
        if (i != optional_index) desk_seconds += seconds_since(t0);
        std::cout << "AC" << i + 1 << ' ' << tag << "  " << criteria[i].first << ": " << o.detail << '\n';
    }
    const bool fast = desk_seconds < 60.0;
    std::cout << "desk-scale suite " << (fast ? "PASS" : "FAIL") << " in " << num(desk_seconds)
              << " s (limit 60 s)\n";
    return failures == 0 && fast ? 0 : 1;
}
