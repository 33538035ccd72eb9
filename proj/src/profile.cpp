#include "lexsub/profile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lexsub/errors.hpp"

namespace lexsub {

using nlohmann::json;

AblationMode parse_ablation(const std::string& s) {
    if (s == "soft") return AblationMode::soft;
    if (s == "hard") return AblationMode::hard;
    if (s == "none") return AblationMode::none;
    throw UsageError("unknown ablation mode '" + s + "' (expected soft|hard|none)");
}

const char* ablation_name(AblationMode mode) {
    switch (mode) {
        case AblationMode::soft: return "soft";
        case AblationMode::hard: return "hard";
        case AblationMode::none: return "none";
    }
    return "unknown";
}

Profile Profile::builtin(const std::string& name) {
    Profile p;
    p.name = name;
    if (name == "en") {
        // defaults above are the tuned English values
    } else if (name == "es") {
        p.language = "es";
        p.alpha = 0.7;
        p.weights = {3, 1, 0, 3};
        p.article_variant = false;
    } else if (name == "pt") {
        p.language = "pt";
        p.alpha = 0.6;
        p.weights = {3, 1, 0, 2};
        p.article_variant = false;
    } else if (name == "en-sub") {
        p.task = Task::substitution;
        p.weights = {5, 1, 0, 1};
        p.m1 = 30;
        p.m2 = 50;
        p.vocab_size = 30000;
    } else if (name == "stub") {
        p.language = "stub";
        p.m1 = 5;
        p.m2 = 5;
        p.beam = 5;
        p.vocab_size = 50;
        p.sample_n = 20;
    } else {
        throw UsageError("unknown profile '" + name +
                         "' (built-ins: en, pt, es, en-sub, stub)");
    }
    return p;
}

static Task parse_task(const std::string& s) {
    if (s == "simplification") return Task::simplification;
    if (s == "substitution") return Task::substitution;
    throw DataError("unknown task '" + s + "'");
}

Profile Profile::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("profile: invalid JSON: ") + e.what());
    }
    Profile p;
    p.task = parse_task(j.value("task", std::string("simplification")));
    if (p.task == Task::substitution) {
        // Substitution defaults; explicit fields below still override.
        p.weights.r3 = 0;
        p.m1 = 30;
        p.m2 = 50;
        p.vocab_size = 30000;
    }
    p.name = j.value("name", p.name);
    p.language = j.value("language", p.language);
    p.alpha = j.value("alpha", p.alpha);
    if (j.contains("weights")) {
        const auto w = j.at("weights").get<std::vector<double>>();
        if (w.size() != 4) throw DataError("profile: weights must have 4 entries");
        p.weights = {w[0], w[1], w[2], w[3]};
    }
    p.m1 = j.value("m1", p.m1);
    p.m2 = j.value("m2", p.m2);
    p.k = j.value("k", p.k);
    p.beam = j.value("beam", p.beam);
    p.vocab_size = j.value("vocab_size", p.vocab_size);
    p.sample_n = j.value("sample_n", p.sample_n);
    p.seed = j.value("seed", p.seed);
    p.article_variant = j.value("article_variant", p.article_variant);
    p.filter_threshold = j.value("filter_threshold", p.filter_threshold);
    if (j.contains("ablation")) p.ablation = parse_ablation(j.at("ablation"));
    return p;
}

Profile Profile::from_config_file(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw DataError("profile config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError(std::string("profile config: invalid JSON: ") + e.what());
    }
    if (!j.contains(name)) throw DataError("profile config: no profile '" + name + "'");
    Profile p = from_json_text(j.at(name).dump());
    p.name = name;
    return p;
}

std::string Profile::to_json_text() const {
    json j = {{"name", name},
              {"language", language},
              {"task", task == Task::substitution ? "substitution" : "simplification"},
              {"alpha", alpha},
              {"weights", {weights.r1, weights.r2, weights.r3, weights.r4}},
              {"m1", m1},
              {"m2", m2},
              {"k", k},
              {"beam", beam},
              {"vocab_size", vocab_size},
              {"sample_n", sample_n},
              {"seed", seed},
              {"article_variant", article_variant},
              {"ablation", ablation_name(ablation)},
              {"filter_threshold", filter_threshold}};
    return j.dump();
}

GenerationConfig Profile::to_config() const {
    GenerationConfig c;
    c.m1 = m1;
    c.m2 = m2;
    c.alpha = alpha;
    c.k = k;
    c.beam = beam;
    c.vocab_size = vocab_size;
    c.sample_n = sample_n;
    c.seed = seed;
    c.weights = weights;
    c.article_variant = article_variant;
    c.ablation = ablation;
    return c;
}

}  // namespace lexsub
