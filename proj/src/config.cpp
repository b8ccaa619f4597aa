#include "mtcompare/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtcompare/error.hpp"

namespace mtcompare {

namespace {

using nlohmann::json;

class ConfigReader {
  public:
    explicit ConfigReader(std::filesystem::path base) : base_(std::move(base)) {}

    void error(const std::string &where, const std::string &what) { errors_.push_back(where + ": " + what); }
    const std::vector<std::string> &errors() const { return errors_; }

    std::filesystem::path path(const json &j, const std::string &where) {
        if (!j.is_string() || j.get<std::string>().empty()) {
            error(where, "expected a non-empty path string");
            return {};
        }
        std::filesystem::path p = j.get<std::string>();
        return p.is_absolute() ? p : base_ / p;
    }

    std::string string(const json &j, const std::string &where) {
        if (!j.is_string()) {
            error(where, "expected a string");
            return {};
        }
        return j.get<std::string>();
    }

    template <class T> T number(const json &j, const std::string &where, T fallback) {
        if (!j.is_number()) {
            error(where, "expected a number");
            return fallback;
        }
        if constexpr (std::is_integral_v<T>) {
            if (!j.is_number_integer() || j.get<long long>() < 0) {
                error(where, "expected a non-negative integer");
                return fallback;
            }
        }
        return j.get<T>();
    }

    std::map<std::string, std::filesystem::path> path_map(const json &j, const std::string &where) {
        std::map<std::string, std::filesystem::path> out;
        if (!j.is_object()) {
            error(where, "expected an object mapping names to paths");
            return out;
        }
        for (const auto &[key, value] : j.items()) out[key] = path(value, where + "." + key);
        return out;
    }

    DirectionConfig direction(const json &j, const std::string &where) {
        DirectionConfig d;
        if (!j.is_object()) {
            error(where, "expected an object");
            return d;
        }
        d.name = j.contains("name") ? string(j["name"], where + ".name") : where;
        if (j.contains("language")) d.language = string(j["language"], where + ".language");
        if (j.contains("source")) {
            d.source = path(j["source"], where + ".source");
        } else {
            error(where, "missing \"source\"");
        }
        if (j.contains("reference")) {
            d.reference = path(j["reference"], where + ".reference");
        } else {
            error(where, "missing \"reference\"");
        }
        if (!j.contains("systems") || !j["systems"].is_array()) {
            error(where, "missing \"systems\" array");
        } else {
            std::size_t k = 0;
            for (const auto &s : j["systems"]) {
                const std::string sw = where + ".systems[" + std::to_string(k++) + "]";
                SystemSpec spec;
                if (!s.is_object() || !s.contains("id") || !s.contains("paradigm") || !s.contains("path")) {
                    error(sw, "expected {\"id\", \"paradigm\", \"path\"}");
                    continue;
                }
                spec.id = string(s["id"], sw + ".id");
                try {
                    spec.paradigm = parse_paradigm(string(s["paradigm"], sw + ".paradigm"));
                } catch (const InputError &e) {
                    error(sw + ".paradigm", e.what());
                }
                spec.path = path(s["path"], sw + ".path");
                d.systems.push_back(std::move(spec));
            }
        }
        if (j.contains("primary")) {
            const auto &p = j["primary"];
            if (!p.is_object()) {
                error(where + ".primary", "expected {\"nmt\": id, \"pbmt\": id}");
            } else {
                if (p.contains("nmt")) d.primary_nmt = string(p["nmt"], where + ".primary.nmt");
                if (p.contains("pbmt")) d.primary_pbmt = string(p["pbmt"], where + ".primary.pbmt");
            }
        }
        if (j.contains("alignments")) d.alignments = path_map(j["alignments"], where + ".alignments");
        if (j.contains("stems")) d.stems = path_map(j["stems"], where + ".stems");
        if (j.contains("lm_scores")) d.lm_scores = path_map(j["lm_scores"], where + ".lm_scores");
        if (j.contains("lm")) {
            const auto &lm = j["lm"];
            const std::string lw = where + ".lm";
            if (!lm.is_object()) {
                error(lw, "expected an object");
            } else {
                if (lm.contains("train")) d.lm.train = path(lm["train"], lw + ".train");
                if (lm.contains("model")) d.lm.model = path(lm["model"], lw + ".model");
                if (lm.contains("save")) d.lm.save = path(lm["save"], lw + ".save");
                if (lm.contains("order")) d.lm.order = number<std::size_t>(lm["order"], lw + ".order", 3);
                if (lm.contains("vocab_cap"))
                    d.lm.vocab_cap = number<std::size_t>(lm["vocab_cap"], lw + ".vocab_cap", 50000);
                if (d.lm.order == 0) error(lw + ".order", "must be at least 1");
            }
        }
        return d;
    }

  private:
    std::filesystem::path base_;
    std::vector<std::string> errors_;
};

} // namespace

RunConfig parse_config(std::string_view json_text, const std::filesystem::path &base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw InputError("config: top level must be an object");

    ConfigReader reader(base_dir);
    RunConfig cfg;
    if (root.contains("output")) cfg.output = reader.path(root["output"], "output");
    if (root.contains("analyses")) {
        if (!root["analyses"].is_array()) {
            reader.error("analyses", "expected an array of analysis names");
        } else {
            for (const auto &a : root["analyses"]) {
                const auto name = reader.string(a, "analyses");
                if (const auto parsed = parse_analysis(name)) {
                    cfg.analyses.insert(*parsed);
                } else if (!name.empty()) {
                    reader.error("analyses", "unknown analysis '" + name + "'");
                }
            }
        }
    } else {
        cfg.analyses.insert(all_analyses().begin(), all_analyses().end());
    }
    if (root.contains("stats")) {
        const auto &s = root["stats"];
        if (s.contains("seed")) cfg.bootstrap.seed = reader.number<std::uint64_t>(s["seed"], "stats.seed", 42);
        if (s.contains("iterations"))
            cfg.bootstrap.iterations = reader.number<std::size_t>(s["iterations"], "stats.iterations", 1000);
        if (s.contains("alpha")) cfg.bootstrap.alpha = reader.number<double>(s["alpha"], "stats.alpha", 0.05);
    }
    if (root.contains("length")) {
        const auto &l = root["length"];
        if (l.contains("width")) cfg.length_bucket_width = reader.number<std::size_t>(l["width"], "length.width", 5);
        if (l.contains("cap")) cfg.length_bucket_cap = reader.number<std::size_t>(l["cap"], "length.cap", 50);
        if (cfg.length_bucket_width == 0) reader.error("length.width", "must be at least 1");
    }
    if (root.contains("class_dump")) {
        if (root["class_dump"].is_boolean()) {
            cfg.class_dump = root["class_dump"].get<bool>();
        } else {
            reader.error("class_dump", "expected true or false");
        }
    }
    if (!root.contains("directions") || !root["directions"].is_array() || root["directions"].empty()) {
        reader.error("directions", "expected a non-empty array");
    } else {
        std::size_t k = 0;
        for (const auto &d : root["directions"]) {
            cfg.directions.push_back(reader.direction(d, "directions[" + std::to_string(k++) + "]"));
        }
        for (std::size_t i = 0; i < cfg.directions.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (cfg.directions[i].name == cfg.directions[j].name)
                    reader.error("directions", "duplicate direction name '" + cfg.directions[i].name + "'");
    }
    if (cfg.bootstrap.iterations == 0) reader.error("stats.iterations", "must be at least 1");
    if (!(cfg.bootstrap.alpha > 0.0 && cfg.bootstrap.alpha < 1.0)) reader.error("stats.alpha", "must lie in (0, 1)");

    if (!reader.errors().empty()) {
        std::string msg = "invalid config:";
        for (const auto &e : reader.errors()) msg += "\n  " + e;
        throw InputError(msg);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open config " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path());
}

} // namespace mtcompare
