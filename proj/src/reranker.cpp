#include "lexsub/reranker.hpp"

#include <algorithm>
#include <limits>

#include "lexsub/candidate_augment.hpp"
#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

const char* signal_name(Signal s) {
    switch (s) {
        case Signal::embedding_similarity: return "embedding_similarity";
        case Signal::lm_perplexity: return "lm_perplexity";
        case Signal::word_frequency: return "word_frequency";
        case Signal::augmented_score: return "augmented_score";
    }
    return "unknown";
}

std::vector<MergedCandidate> merge_and_filter(const std::vector<ScoredCandidate>& m1,
                                              const std::vector<ScoredCandidate>& m2,
                                              const TargetInstance& target,
                                              double threshold) {
    if (threshold <= 0.0 || threshold > 1.0)
        throw UsageError("merge_and_filter: threshold must be in (0, 1]");
    const std::string target_folded = fold_case(target.word);

    std::map<std::string, MergedCandidate> merged;
    auto absorb = [&](const ScoredCandidate& cand, bool augmented) {
        const std::string key = fold_case(cand.word);
        MergedCandidate& m = merged[key];
        m.word = key;
        if (augmented) {
            m.from_augmented = true;
            m.augmented_score = cand.score;
        } else {
            m.from_target = true;
            m.target_score = cand.score;
        }
        for (const auto& [name, value] : cand.signal_scores) m.signal_scores[name] = value;
    };
    for (const auto& cand : m1) absorb(cand, false);
    for (const auto& cand : m2) absorb(cand, true);

    std::vector<MergedCandidate> out;
    for (auto& [key, cand] : merged) {
        if (edit_similarity(key, target_folded) >= threshold) continue;
        out.push_back(std::move(cand));
    }
    if (out.empty()) throw DataError("merge_and_filter: empty candidate pool");
    return out;
}

SignalRanking rank_by_score(Signal signal,
                            const std::vector<std::pair<std::string, double>>& scores,
                            const FreqTable& freq) {
    std::vector<std::pair<std::string, double>> sorted = scores;
    std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        const double fa = freq.zipf_or_lowest(a.first);
        const double fb = freq.zipf_or_lowest(b.first);
        if (fa != fb) return fa > fb;
        return a.first < b.first;
    });
    SignalRanking ranking;
    ranking.signal = signal;
    int rank = 1;
    for (const auto& [word, score] : sorted) ranking.ranks[word] = rank++;
    return ranking;
}

SignalRanking signal_embedding(const std::vector<MergedCandidate>& candidates,
                               const TargetInstance& target, const ModelBackend& backend,
                               double alpha, const FreqTable& freq) {
    const ContextualEmbedding fx =
        backend.embed_in_context(target.word, target.sentence, target.span);
    const bool multi_token = backend.segment(target.word).token_count() > 1;
    std::optional<StaticEmbedding> ex;
    if (multi_token) ex = backend.embed_static(target.word);

    std::vector<std::pair<std::string, double>> scores;
    for (const auto& cand : candidates) {
        std::string substituted = target.sentence.substr(0, target.span.begin) + cand.word +
                                  target.sentence.substr(target.span.end());
        const Span span{target.span.begin, cand.word.size()};
        double score;
        try {
            score = cosine(fx.vector,
                           backend.embed_in_context(cand.word, substituted, span).vector);
        } catch (const BackendError& e) {
            throw BackendError("signal_embedding: candidate '" + cand.word + "': " + e.what());
        }
        if (multi_token && ex) {
            if (const auto ey = backend.embed_static(cand.word))
                score += alpha * cosine(ex->vector, ey->vector);
        }
        scores.emplace_back(cand.word, score);
    }
    return rank_by_score(Signal::embedding_similarity, scores, freq);
}

SignalRanking signal_perplexity(const std::vector<MergedCandidate>& candidates,
                                const TargetInstance& target, const ModelBackend& backend,
                                const FreqTable& freq) {
    const std::string masked =
        mask_sentence(target.sentence, target.span, backend.mask_token());
    std::vector<std::pair<std::string, double>> scores;
    for (const auto& cand : candidates)
        scores.emplace_back(cand.word, backend.score_infill(masked, cand.word));
    return rank_by_score(Signal::lm_perplexity, scores, freq);
}

SignalRanking signal_frequency(const std::vector<MergedCandidate>& candidates,
                               const FreqTable& freq) {
    std::vector<std::pair<std::string, double>> scores;
    for (const auto& cand : candidates)
        scores.emplace_back(cand.word, freq.zipf_or_lowest(cand.word));
    return rank_by_score(Signal::word_frequency, scores, freq);
}

SignalRanking signal_augmented(const std::vector<MergedCandidate>& candidates,
                               const FreqTable& freq) {
    std::vector<std::pair<std::string, double>> scores;
    for (const auto& cand : candidates) {
        const double score = cand.from_augmented
                                 ? cand.augmented_score
                                 : -std::numeric_limits<double>::infinity();
        scores.emplace_back(cand.word, score);
    }
    return rank_by_score(Signal::augmented_score, scores, freq);
}

FinalRanking fuse(const std::array<SignalRanking, 4>& rankings, const RankWeights& weights) {
    const auto& base = rankings[0].ranks;
    for (const auto& ranking : rankings) {
        if (ranking.ranks.size() != base.size())
            throw DataError("fuse: candidate-set size mismatch");
        for (const auto& [word, rank] : ranking.ranks) {
            if (base.count(word) == 0) throw DataError("fuse: candidate-set mismatch: " + word);
        }
    }
    const double w[4] = {weights.r1, weights.r2, weights.r3, weights.r4};

    FinalRanking final;
    for (const auto& [word, r1] : base) {
        double combined = 0.0;
        for (int i = 0; i < 4; ++i) combined += w[i] * rankings[i].ranks.at(word);
        final.ordered.push_back({word, combined});
    }
    std::sort(final.ordered.begin(), final.ordered.end(),
              [&](const RankedCandidate& a, const RankedCandidate& b) {
                  if (a.combined != b.combined) return a.combined < b.combined;
                  const int ra = rankings[0].ranks.at(a.word);
                  const int rb = rankings[0].ranks.at(b.word);
                  if (ra != rb) return ra < rb;
                  return a.word < b.word;
              });
    return final;
}

}  // namespace lexsub
