#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexsub {

/// Character range inside a sentence.
struct Span {
    std::size_t begin = 0;
    std::size_t length = 0;

    std::size_t end() const { return begin + length; }
    bool operator==(const Span&) const = default;
};

/// One simplification unit: a sentence, the target word, and where it sits.
struct TargetInstance {
    std::string sentence;
    std::string word;
    Span span;
};

enum class CandidateSource { target_context, augmented };

struct ScoredCandidate {
    std::string word;
    double score = 0.0;
    CandidateSource source = CandidateSource::target_context;
    std::map<std::string, double> signal_scores;
};

struct RankWeights {
    double r1 = 1.0;
    double r2 = 1.0;
    double r3 = 1.0;
    double r4 = 1.0;
};

enum class AblationMode { soft, hard, none };

/// Hyperparameters steering generation and fusion for one run.
struct GenerationConfig {
    int m1 = 15;
    int m2 = 25;
    double alpha = 0.2;
    int k = 4;
    int beam = 20;
    int vocab_size = 20000;
    int sample_n = 300;
    std::uint64_t seed = 0;
    RankWeights weights;
    bool article_variant = false;  // English a/an beam merging
    AblationMode ablation = AblationMode::soft;
};

/// Corpus-derived vocabulary with occurrence counts (used for scoring
/// candidates and for deterministic tie-breaking).
struct Vocabulary {
    std::vector<std::string> words;
    std::unordered_map<std::string, std::uint64_t> frequency;

    bool contains(const std::string& w) const { return frequency.count(w) != 0; }
    std::uint64_t count_of(const std::string& w) const {
        auto it = frequency.find(w);
        return it == frequency.end() ? 0 : it->second;
    }
    std::size_t size() const { return words.size(); }
};

}  // namespace lexsub
