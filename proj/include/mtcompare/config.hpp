#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mtcompare/corpus.hpp"
#include "mtcompare/stats.hpp"

namespace mtcompare {

struct SystemSpec {
    std::string id;
    Paradigm paradigm = Paradigm::NMT;
    std::filesystem::path path;
};

struct LanguageModelSpec {
    std::optional<std::filesystem::path> train; // training text
    std::optional<std::filesystem::path> model; // previously saved model
    std::optional<std::filesystem::path> save;  // where to save the trained model
    std::size_t order = 3;
    std::size_t vocab_cap = 50000;
};

// One language direction: a source text, its reference and system outputs.
struct DirectionConfig {
    std::string name;
    std::string language = "en"; // target language, for the built-in stemmer
    std::filesystem::path source;
    std::filesystem::path reference;
    std::vector<SystemSpec> systems;
    std::string primary_nmt;  // empty: first NMT system
    std::string primary_pbmt; // empty: first PBMT system
    // Keyed by "reference" or a system id.
    std::map<std::string, std::filesystem::path> alignments;
    std::map<std::string, std::filesystem::path> stems;
    std::map<std::string, std::filesystem::path> lm_scores;
    LanguageModelSpec lm;
};

struct RunConfig {
    std::vector<DirectionConfig> directions;
    std::set<Analysis> analyses; // what `all` runs
    BootstrapOptions bootstrap;
    std::filesystem::path output = "mtcompare-out";
    std::size_t length_bucket_width = 5;
    std::size_t length_bucket_cap = 50;
    bool class_dump = false;
};

// Parses a JSON config. Relative paths resolve against `base_dir`.
// Throws InputError with every problem found.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path &base_dir);
RunConfig load_config(const std::filesystem::path &path);

} // namespace mtcompare
