#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexsub/corpus_store.hpp"
#include "lexsub/embedding_index.hpp"
#include "lexsub/model_backend.hpp"
#include "lexsub/types.hpp"

namespace lexsub {

/// Sampled sentences for a word partitioned into K clusters. Memberships
/// reuse the DecontextIndex assignments when the word has an entry.
struct ClusterSample {
    std::string word;
    std::vector<std::vector<std::pair<Sentence, Span>>> clusters;
    std::uint64_t seed = 0;
};

/// Per-cluster candidate generation counts (each candidate counted at most
/// once per sentence) and the per-cluster top-M2 lists.
struct ClusterGenerationTable {
    std::string word;
    int k = 0;
    int m2 = 25;
    std::vector<std::map<std::string, int>> counts;
    std::vector<std::vector<std::string>> top_m2;
    bool empty = true;

    int total_count(const std::string& candidate) const;
};

struct ClusterWeights {
    std::vector<long long> w;
    bool fallback_applied = false;
};

/// Strips surrounding whitespace/punctuation and case-folds; rejects
/// anything that is not a single whitespace-delimited token (hyphenated
/// forms count as one word).
std::optional<std::string> normalize_candidate(const std::string& raw);

/// Masks the word at `span` with the backend's mask token.
std::string mask_sentence(const std::string& sentence, Span span,
                          const std::string& mask_token);

ClusterSample cluster_samples(const std::string& word, const CorpusStore& store,
                              const DecontextIndex& index, const ModelBackend& backend,
                              const GenerationConfig& config);

/// Recomputes top_m2 and the empty flag from counts (count descending,
/// then lexicographic). Also the entry point for table fixtures in tests.
void finalize_table(ClusterGenerationTable& table);

ClusterGenerationTable make_table(const std::string& word,
                                  std::vector<std::map<std::string, int>> counts, int m2);

/// Mask-fills every sampled sentence (beam width config.beam, with the
/// English a/an article variant merged in when config.article_variant) and
/// aggregates per-cluster generation counts.
ClusterGenerationTable build_generation_table(const std::string& word,
                                              const CorpusStore& store,
                                              const DecontextIndex& index,
                                              const ModelBackend& backend,
                                              const GenerationConfig& config);

/// w_k = |top_m2(k) ∩ m1 words| (case-folded surface match). All-zero
/// weights fall back to all ones.
ClusterWeights compute_weights(const ClusterGenerationTable& table,
                               const std::vector<ScoredCandidate>& m1_candidates);

/// soft = identity; hard = indicator of argmax (ties -> lowest cluster
/// index); none = all ones.
ClusterWeights ablation_mode(const ClusterWeights& weights, AblationMode mode);

/// S(y) = sum_k w_k * count_k(y) over the union of per-cluster top-M2
/// lists; returns the top-M2 by score, ties by total unweighted count then
/// lexicographic.
std::vector<ScoredCandidate> score_augmented(const ClusterGenerationTable& table,
                                             const ClusterWeights& weights);

/// Offline generation-count cache (keyed by word, backend_id, seed, beam).
void save_generation_table(const std::string& path, const ClusterGenerationTable& table,
                           const std::string& backend_id, std::uint64_t seed, int beam);
std::optional<ClusterGenerationTable> load_generation_table(const std::string& path,
                                                            const std::string& word,
                                                            const std::string& backend_id,
                                                            std::uint64_t seed, int beam);

}  // namespace lexsub
