#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexsub/corpus_store.hpp"
#include "lexsub/model_backend.hpp"
#include "lexsub/types.hpp"

namespace lexsub {

/// K cluster centroids of a word's contextualised embeddings plus the
/// sentence-to-cluster assignment they came from.
struct DecontextEntry {
    std::string word;
    std::vector<std::vector<double>> centroids;  // K entries, empty clusters have size 0
    std::vector<int> cluster_sizes;
    std::map<std::int64_t, int> sentence_assignments;
    bool insufficient = false;  // no embeddable occurrences

    int nonempty_clusters() const;
};

struct DecontextIndex {
    std::unordered_map<std::string, DecontextEntry> entries;
    std::string backend_id;
    int k = 4;
    int sample_n = 300;
    std::uint64_t seed = 0;
    Vocabulary vocab;

    /// Usable (non-insufficient) entry, or nullptr.
    const DecontextEntry* find(const std::string& word) const;

    /// Versioned JSON persistence. Loading with a non-empty
    /// `expect_backend_id` rejects indexes built by a different backend.
    void save(const std::string& path) const;
    static DecontextIndex load(const std::string& path,
                               const std::string& expect_backend_id = "");
};

/// Per-word sampling seed; words are independent so the build may run them
/// in any order or in parallel.
std::uint64_t word_seed(std::uint64_t base, const std::string& word);

/// Samples up to sample_n sentences per vocabulary word, embeds each
/// occurrence, and clusters with K-means. Words with 1 <= m < k occurrences
/// get m singleton clusters padded with empty ones; m = 0 marks the entry
/// insufficient.
DecontextIndex build_index(const Vocabulary& vocab, const CorpusStore& store,
                           const ModelBackend& backend, int k, int sample_n,
                           std::uint64_t seed);

/// Cosine similarity of the query against each nonempty centroid, as
/// (cluster index, similarity) pairs. Throws DataError when all clusters
/// are empty.
std::vector<std::pair<int, double>> centroid_similarities(
    const DecontextEntry& entry, const ContextualEmbedding& query);

/// Cosine between the query and the size-weighted mean of all member
/// embeddings (= size-weighted mean of centroids). A zero mean vector
/// yields 0.0 by convention.
double global_similarity(const DecontextEntry& entry, const ContextualEmbedding& query);

}  // namespace lexsub
