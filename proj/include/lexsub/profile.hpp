#pragma once

#include <string>

#include "lexsub/types.hpp"

namespace lexsub {

enum class Task { simplification, substitution };

/// Per-language/task configuration. Built-in profiles carry the tuned
/// hyperparameters for en/pt/es plus a small "stub" profile for tests and
/// an "en-sub" substitution profile (r3 forced to 0, M1/M2 doubled to
/// 30/50 unless explicitly overridden).
struct Profile {
    std::string name = "en";
    std::string language = "en";
    Task task = Task::simplification;
    double alpha = 0.2;
    RankWeights weights{5, 1, 1, 1};
    int m1 = 15;
    int m2 = 25;
    int k = 4;
    int beam = 20;
    int vocab_size = 20000;
    int sample_n = 300;
    std::uint64_t seed = 42;
    bool article_variant = true;
    AblationMode ablation = AblationMode::soft;
    double filter_threshold = 0.8;

    static Profile builtin(const std::string& name);
    static Profile from_json_text(const std::string& text);
    static Profile from_config_file(const std::string& path, const std::string& name);
    std::string to_json_text() const;

    GenerationConfig to_config() const;
};

AblationMode parse_ablation(const std::string& s);
const char* ablation_name(AblationMode mode);

}  // namespace lexsub
