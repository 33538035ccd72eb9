#include "lexsub/candidate_target.hpp"

#include <algorithm>

#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

AptnessParts aptness_parts(const TargetInstance& target,
                           const ContextualEmbedding& target_embedding,
                           const std::string& candidate, const DecontextIndex& index,
                           const ModelBackend& backend, double alpha) {
    const DecontextEntry* entry = index.find(candidate);
    if (entry == nullptr)
        throw DataError("aptness: no usable decontextualised entry for '" + candidate + "'");

    AptnessParts parts;
    double best = -2.0;
    for (const auto& [cluster, sim] : centroid_similarities(*entry, target_embedding))
        best = std::max(best, sim);
    parts.max_cluster_cos = best;
    parts.global_sim = global_similarity(*entry, target_embedding);
    parts.total = parts.max_cluster_cos + parts.global_sim;

    parts.correction_required = backend.segment(target.word).token_count() > 1;
    if (parts.correction_required) {
        const auto ex = backend.embed_static(target.word);
        const auto ey = backend.embed_static(candidate);
        if (ex && ey) {
            parts.static_cos = cosine(ex->vector, ey->vector);
            parts.total += alpha * *parts.static_cos;
        }
    }
    return parts;
}

double aptness_score(const TargetInstance& target, const std::string& candidate,
                     const DecontextIndex& index, const ModelBackend& backend,
                     double alpha) {
    const ContextualEmbedding f =
        backend.embed_in_context(target.word, target.sentence, target.span);
    return aptness_parts(target, f, candidate, index, backend, alpha).total;
}

std::vector<ScoredCandidate> generate_m1(const TargetInstance& target,
                                         const DecontextIndex& index,
                                         const ModelBackend& backend,
                                         const GenerationConfig& config) {
    if (index.vocab.words.empty()) throw DataError("generate_m1: empty index");
    const std::string target_folded = fold_case(target.word);
    const ContextualEmbedding f =
        backend.embed_in_context(target.word, target.sentence, target.span);

    std::vector<ScoredCandidate> scored;
    for (const auto& word : index.vocab.words) {
        if (fold_case(word) == target_folded) continue;
        if (index.find(word) == nullptr) continue;  // insufficient data, unscorable
        const AptnessParts parts =
            aptness_parts(target, f, word, index, backend, config.alpha);
        ScoredCandidate cand;
        cand.word = word;
        cand.score = parts.total;
        cand.source = CandidateSource::target_context;
        cand.signal_scores["max_cluster_cos"] = parts.max_cluster_cos;
        cand.signal_scores["global_sim"] = parts.global_sim;
        if (parts.static_cos) {
            cand.signal_scores["static_cos"] = *parts.static_cos;
        } else if (parts.correction_required) {
            cand.signal_scores["static_missing"] = 1.0;
        }
        scored.push_back(std::move(cand));
    }
    if (scored.empty()) throw DataError("generate_m1: no scorable vocabulary words");

    std::sort(scored.begin(), scored.end(),
              [&](const ScoredCandidate& a, const ScoredCandidate& b) {
                  if (a.score != b.score) return a.score > b.score;
                  const auto fa = index.vocab.count_of(a.word);
                  const auto fb = index.vocab.count_of(b.word);
                  if (fa != fb) return fa > fb;
                  return a.word < b.word;
              });
    if (scored.size() > static_cast<std::size_t>(config.m1))
        scored.resize(static_cast<std::size_t>(config.m1));
    return scored;
}

}  // namespace lexsub
