// mtcompare: compare NMT and PBMT system outputs along several dimensions.
//
// Usage: mtcompare <subcommand> --config run.json [--seed N] [--iterations N]
//                  [--alpha A] [--out DIR]
//
// Exit status: 0 success, 1 validation failure, 2 runtime failure.

#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "mtcompare/config.hpp"
#include "mtcompare/error.hpp"
#include "mtcompare/pipeline.hpp"

namespace {

struct Subcommand {
    const char *name;
    const char *help;
    std::optional<mtcompare::Analysis> analysis; // nullopt: whatever the config lists
    bool validate_only = false;
};

const Subcommand kSubcommands[] = {
    {"validate", "Load all inputs and check them for the configured analyses", std::nullopt, true},
    {"similarity", "Pairwise chrF1 overlap between system outputs", mtcompare::Analysis::Similarity},
    {"fluency", "Language-model perplexity of each output", mtcompare::Analysis::Fluency},
    {"reorder", "Kendall's tau reordering from word alignments", mtcompare::Analysis::Reordering},
    {"length", "chrF1 by source sentence length and its correlation", mtcompare::Analysis::Length},
    {"errcats", "Word-level error categories (inflection, reordering, lexical)",
     mtcompare::Analysis::ErrorCategories},
    {"overall", "Corpus BLEU and chrF1 with paired bootstrap significance", mtcompare::Analysis::Overall},
    {"all", "Run every analysis listed in the config", std::nullopt},
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multifaceted comparison of machine translation outputs"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iterations;
    std::optional<double> alpha;
    std::optional<std::string> out_dir;
    app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Bootstrap seed (default 42)");
    app.add_option("--iterations", iterations, "Bootstrap iterations (default 1000)")->check(CLI::PositiveNumber);
    app.add_option("--alpha", alpha, "Significance level (default 0.05)")->check(CLI::Range(0.0, 1.0));
    app.add_option("--out", out_dir, "Output directory (overrides the config)");
    app.fallthrough();

    const Subcommand *chosen = nullptr;
    for (const auto &sub : kSubcommands) {
        app.add_subcommand(sub.name, sub.help)->callback([&chosen, &sub] { chosen = &sub; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? mtcompare::kExitOk : mtcompare::kExitValidation;
    }

    mtcompare::RunConfig config;
    try {
        config = mtcompare::load_config(config_path);
    } catch (const mtcompare::InputError &e) {
        std::cerr << e.what() << '\n';
        return mtcompare::kExitValidation;
    }
    if (seed) config.bootstrap.seed = *seed;
    if (iterations) config.bootstrap.iterations = *iterations;
    if (alpha) config.bootstrap.alpha = *alpha;
    if (out_dir) config.output = *out_dir;

    std::set<mtcompare::Analysis> analyses = config.analyses;
    if (chosen->analysis) analyses = {*chosen->analysis};

    try {
        const auto outcome = mtcompare::run(config, analyses, chosen->validate_only, std::cerr);
        if (outcome.exit_code == mtcompare::kExitOk && !chosen->validate_only) {
            std::cout << "reports written to " << config.output.string() << '\n';
        }
        return outcome.exit_code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return mtcompare::kExitRuntime;
    }
}
