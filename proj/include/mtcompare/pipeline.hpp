#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtcompare/config.hpp"
#include "mtcompare/corpus.hpp"
#include "mtcompare/fluency.hpp"
#include "mtcompare/stats.hpp"

namespace mtcompare {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

struct LoadedDirection {
    const DirectionConfig *config = nullptr;
    EvalBundle bundle;
    std::string nmt_id;
    std::string pbmt_id;
    std::optional<NGramLM> lm;
};

// Loads everything the requested analyses need. Problems are appended to
// `violations` instead of thrown, so a run can report all of them at once.
LoadedDirection load_direction(const DirectionConfig &config, const std::set<Analysis> &analyses,
                               std::vector<Violation> &violations);

struct RunOutcome {
    int exit_code = kExitOk;
    std::vector<Violation> violations;
    nlohmann::ordered_json report;
    std::vector<std::filesystem::path> files; // every file written
};

// Validates, then runs each analysis in `analyses` and writes reports under
// config.output. With validate_only nothing is written.
RunOutcome run(const RunConfig &config, const std::set<Analysis> &analyses, bool validate_only, std::ostream &log);

// Writes <stem>_scores.tsv and <stem>_relimp.tsv. Empty buckets are left out
// and listed in a header comment.
std::vector<std::filesystem::path> emit_plot_data(const LengthCurve &curve, const std::filesystem::path &dir,
                                                  const std::string &stem, const std::string &provenance);

// "# mtcompare seed=... iterations=... ..." line echoed into every report.
std::string provenance_line(const RunConfig &config);

} // namespace mtcompare
