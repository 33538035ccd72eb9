#pragma once

#include <optional>
#include <vector>

#include "lexsub/embedding_index.hpp"
#include "lexsub/model_backend.hpp"
#include "lexsub/types.hpp"

namespace lexsub {

/// Components of the aptness score for one candidate.
struct AptnessParts {
    double max_cluster_cos = 0.0;
    double global_sim = 0.0;
    bool correction_required = false;     // target splits into multiple subwords
    std::optional<double> static_cos;     // absent when either static embedding is missing
    double total = 0.0;
};

/// Aptness of `candidate` as a substitute for the target in context:
/// max nonempty-cluster cosine plus global similarity, plus
/// alpha * cos(static(target), static(candidate)) when the target segments
/// into multiple subwords and both static embeddings exist. When a required
/// static embedding is missing the correction is omitted (flagged via
/// static_cos being absent while correction_required is true).
AptnessParts aptness_parts(const TargetInstance& target, const ContextualEmbedding& target_embedding,
                           const std::string& candidate, const DecontextIndex& index,
                           const ModelBackend& backend, double alpha);

/// Convenience wrapper; embeds the target itself. Throws DataError for an
/// insufficient-data candidate entry.
double aptness_score(const TargetInstance& target, const std::string& candidate,
                     const DecontextIndex& index, const ModelBackend& backend,
                     double alpha);

/// Scores every vocabulary word except the target's own (case-folded)
/// surface form and returns the top-M1, sorted by score descending with
/// ties broken by corpus frequency (higher first) then lexicographically.
std::vector<ScoredCandidate> generate_m1(const TargetInstance& target,
                                         const DecontextIndex& index,
                                         const ModelBackend& backend,
                                         const GenerationConfig& config);

}  // namespace lexsub
