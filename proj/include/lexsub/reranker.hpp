#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lexsub/freq_table.hpp"
#include "lexsub/model_backend.hpp"
#include "lexsub/types.hpp"

namespace lexsub {

enum class Signal { embedding_similarity, lm_perplexity, word_frequency, augmented_score };

const char* signal_name(Signal s);

/// One metric's ranking: a bijection candidate -> 1..N (ties resolved
/// before rank assignment: score desc, Zipf frequency desc, lexicographic).
struct SignalRanking {
    Signal signal;
    std::map<std::string, int> ranks;
};

struct MergedCandidate {
    std::string word;
    bool from_target = false;
    bool from_augmented = false;
    double target_score = 0.0;
    double augmented_score = 0.0;
    std::map<std::string, double> signal_scores;
};

struct RankedCandidate {
    std::string word;
    double combined = 0.0;
};

struct FinalRanking {
    std::vector<RankedCandidate> ordered;  // ascending combined rank sum
};

/// Union of the two candidate pools with duplicates collapsed; discards
/// candidates whose normalized edit similarity to the target word is
/// >= threshold (default 0.8). Throws DataError on an empty result.
std::vector<MergedCandidate> merge_and_filter(const std::vector<ScoredCandidate>& m1,
                                              const std::vector<ScoredCandidate>& m2,
                                              const TargetInstance& target,
                                              double threshold = 0.8);

/// Helper shared by the four signals: assigns ranks 1..N by score
/// descending, ties by Zipf descending then lexicographic.
SignalRanking rank_by_score(Signal signal,
                            const std::vector<std::pair<std::string, double>>& scores,
                            const FreqTable& freq);

/// Cosine between f(x, c_x) and f(y, c_x) with y substituted at the target
/// span, plus the alpha static-embedding correction for multi-subword
/// targets.
SignalRanking signal_embedding(const std::vector<MergedCandidate>& candidates,
                               const TargetInstance& target, const ModelBackend& backend,
                               double alpha, const FreqTable& freq);

/// Forced-decoding log-probability of each candidate in the masked target
/// sentence.
SignalRanking signal_perplexity(const std::vector<MergedCandidate>& candidates,
                                const TargetInstance& target, const ModelBackend& backend,
                                const FreqTable& freq);

/// Zipf frequency, simplicity proxy; absent words rank last (among
/// themselves, lexicographic).
SignalRanking signal_frequency(const std::vector<MergedCandidate>& candidates,
                               const FreqTable& freq);

/// Augmented-context score; candidates from the M1-only pool rank after
/// all augmented-scored candidates.
SignalRanking signal_augmented(const std::vector<MergedCandidate>& candidates,
                               const FreqTable& freq);

/// combined(y) = r1*R1 + r2*R2 + r3*R3 + r4*R4, ascending; ties broken by
/// R1 then lexicographic. All rankings must cover the same candidate set.
FinalRanking fuse(const std::array<SignalRanking, 4>& rankings, const RankWeights& weights);

}  // namespace lexsub
