#include "lexsub/candidate_augment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include <json.hpp>

#include "lexsub/errors.hpp"
#include "lexsub/kmeans.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

using nlohmann::json;

int ClusterGenerationTable::total_count(const std::string& candidate) const {
    int total = 0;
    for (const auto& cluster : counts) {
        auto it = cluster.find(candidate);
        if (it != cluster.end()) total += it->second;
    }
    return total;
}

std::optional<std::string> normalize_candidate(const std::string& raw) {
    std::size_t b = 0, e = raw.size();
    auto strippable = [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0 ||
               (std::ispunct(static_cast<unsigned char>(c)) != 0 && c != '-' && c != '\'');
    };
    while (b < e && strippable(raw[b])) ++b;
    while (e > b && strippable(raw[e - 1])) --e;
    if (b == e) return std::nullopt;
    std::string word = fold_case(std::string_view(raw).substr(b, e - b));
    for (char c : word) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0) return std::nullopt;
    }
    return word;
}

std::string mask_sentence(const std::string& sentence, Span span,
                          const std::string& mask_token) {
    if (span.end() > sentence.size()) throw UsageError("mask_sentence: span out of bounds");
    return sentence.substr(0, span.begin) + mask_token + sentence.substr(span.end());
}

namespace {

/// Token immediately preceding the span, if any.
std::optional<TokenSpan> preceding_token(const std::string& sentence, Span span) {
    const auto tokens = tokenize(std::string_view(sentence).substr(0, span.begin));
    if (tokens.empty()) return std::nullopt;
    return tokens.back();
}

/// Masked sentence with the preceding article swapped (a <-> an), when
/// applicable.
std::optional<std::string> article_variant_sentence(const std::string& sentence, Span span,
                                                    const std::string& mask_token) {
    const auto prev = preceding_token(sentence, span);
    if (!prev) return std::nullopt;
    const std::string folded = fold_case(prev->token);
    std::string replacement;
    if (folded == "a")
        replacement = "an";
    else if (folded == "an")
        replacement = "a";
    else
        return std::nullopt;
    std::string variant = sentence.substr(0, prev->span.begin) + replacement +
                          sentence.substr(prev->span.end());
    const Span shifted{span.begin + replacement.size() - prev->span.length, span.length};
    return mask_sentence(variant, shifted, mask_token);
}

}  // namespace

ClusterSample cluster_samples(const std::string& word, const CorpusStore& store,
                              const DecontextIndex& index, const ModelBackend& backend,
                              const GenerationConfig& config) {
    ClusterSample out;
    out.word = word;
    out.seed = word_seed(config.seed, word);
    out.clusters.assign(static_cast<std::size_t>(config.k), {});
    const SampleSet samples =
        store.sample(word, static_cast<std::size_t>(config.sample_n), out.seed);
    if (samples.sentences.empty()) return out;

    const DecontextEntry* entry = index.find(word);
    if (entry != nullptr && static_cast<int>(entry->centroids.size()) == config.k) {
        bool all_assigned = true;
        for (const auto& [sentence, span] : samples.sentences) {
            auto it = entry->sentence_assignments.find(sentence.id);
            if (it == entry->sentence_assignments.end()) {
                all_assigned = false;
                break;
            }
        }
        if (all_assigned) {
            for (const auto& [sentence, span] : samples.sentences) {
                const int c = entry->sentence_assignments.at(sentence.id);
                out.clusters[static_cast<std::size_t>(c)].emplace_back(sentence, span);
            }
            return out;
        }
    }

    // No reusable clustering: embed and cluster on the fly with the same
    // K-means configuration as the index build.
    std::vector<std::vector<double>> points;
    for (const auto& [sentence, span] : samples.sentences)
        points.push_back(backend.embed_in_context(word, sentence.text, span).vector);
    const int m = static_cast<int>(points.size());
    if (m < config.k) {
        for (int i = 0; i < m; ++i)
            out.clusters[static_cast<std::size_t>(i)].push_back(samples.sentences[i]);
        return out;
    }
    const KMeansResult km =
        kmeans(points, config.k, word_seed(config.seed ^ 0x6b6d65616e73ull, word));
    for (std::size_t i = 0; i < samples.sentences.size(); ++i)
        out.clusters[static_cast<std::size_t>(km.assignment[i])].push_back(
            samples.sentences[i]);
    return out;
}

void finalize_table(ClusterGenerationTable& table) {
    table.k = static_cast<int>(table.counts.size());
    table.top_m2.assign(table.counts.size(), {});
    table.empty = true;
    for (std::size_t c = 0; c < table.counts.size(); ++c) {
        std::vector<std::pair<std::string, int>> items(table.counts[c].begin(),
                                                       table.counts[c].end());
        std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        if (items.size() > static_cast<std::size_t>(table.m2))
            items.resize(static_cast<std::size_t>(table.m2));
        for (auto& [word, count] : items) table.top_m2[c].push_back(word);
        if (!items.empty()) table.empty = false;
    }
}

ClusterGenerationTable make_table(const std::string& word,
                                  std::vector<std::map<std::string, int>> counts, int m2) {
    ClusterGenerationTable table;
    table.word = word;
    table.m2 = m2;
    table.counts = std::move(counts);
    finalize_table(table);
    return table;
}

ClusterGenerationTable build_generation_table(const std::string& word,
                                              const CorpusStore& store,
                                              const DecontextIndex& index,
                                              const ModelBackend& backend,
                                              const GenerationConfig& config) {
    ClusterGenerationTable table;
    table.word = word;
    table.m2 = config.m2;
    table.counts.assign(static_cast<std::size_t>(config.k), {});

    const ClusterSample sample = cluster_samples(word, store, index, backend, config);
    const std::string mask = backend.mask_token();
    const std::string word_folded = fold_case(word);

    for (std::size_t c = 0; c < sample.clusters.size(); ++c) {
        for (const auto& [sentence, span] : sample.clusters[c]) {
            const std::string masked = mask_sentence(sentence.text, span, mask);
            std::vector<MaskFillResult> results = backend.fill_mask(masked, config.beam);
            if (config.article_variant) {
                if (const auto variant = article_variant_sentence(sentence.text, span, mask)) {
                    auto extra = backend.fill_mask(*variant, config.beam);
                    results.insert(results.end(), extra.begin(), extra.end());
                }
            }
            // Per-sentence indicator: each surviving candidate counts once.
            std::set<std::string> seen;
            for (const auto& r : results) {
                const auto normalized = normalize_candidate(r.candidate);
                if (!normalized || *normalized == word_folded) continue;
                seen.insert(*normalized);
            }
            for (const auto& cand : seen) ++table.counts[c][cand];
        }
    }
    finalize_table(table);
    return table;
}

ClusterWeights compute_weights(const ClusterGenerationTable& table,
                               const std::vector<ScoredCandidate>& m1_candidates) {
    if (m1_candidates.empty()) throw UsageError("compute_weights: empty m1 list");
    std::set<std::string> m1_words;
    for (const auto& cand : m1_candidates) m1_words.insert(fold_case(cand.word));

    ClusterWeights weights;
    weights.w.assign(table.top_m2.size(), 0);
    bool any = false;
    for (std::size_t c = 0; c < table.top_m2.size(); ++c) {
        for (const auto& cand : table.top_m2[c]) {
            if (m1_words.count(fold_case(cand)) != 0) ++weights.w[c];
        }
        if (weights.w[c] != 0) any = true;
    }
    if (!any) {
        std::fill(weights.w.begin(), weights.w.end(), 1);
        weights.fallback_applied = true;
    }
    return weights;
}

ClusterWeights ablation_mode(const ClusterWeights& weights, AblationMode mode) {
    ClusterWeights out = weights;
    switch (mode) {
        case AblationMode::soft:
            break;
        case AblationMode::hard: {
            std::size_t best = 0;
            for (std::size_t c = 1; c < out.w.size(); ++c)
                if (out.w[c] > out.w[best]) best = c;
            std::fill(out.w.begin(), out.w.end(), 0);
            if (!out.w.empty()) out.w[best] = 1;
            break;
        }
        case AblationMode::none:
            std::fill(out.w.begin(), out.w.end(), 1);
            break;
    }
    return out;
}

std::vector<ScoredCandidate> score_augmented(const ClusterGenerationTable& table,
                                             const ClusterWeights& weights) {
    if (table.empty) throw DataError("score_augmented: empty generation table");
    if (weights.w.size() != table.counts.size())
        throw UsageError("score_augmented: weight/cluster count mismatch");

    std::set<std::string> pool;
    for (const auto& top : table.top_m2) pool.insert(top.begin(), top.end());

    std::vector<ScoredCandidate> out;
    for (const auto& cand : pool) {
        long long score = 0;
        for (std::size_t c = 0; c < table.counts.size(); ++c) {
            auto it = table.counts[c].find(cand);
            if (it != table.counts[c].end()) score += weights.w[c] * it->second;
        }
        if (score == 0) continue;  // only generated in zero-weight clusters
        ScoredCandidate sc;
        sc.word = cand;
        sc.score = static_cast<double>(score);
        sc.source = CandidateSource::augmented;
        sc.signal_scores["augmented_raw_count"] = table.total_count(cand);
        out.push_back(std::move(sc));
    }
    std::sort(out.begin(), out.end(), [&](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        const int ta = table.total_count(a.word), tb = table.total_count(b.word);
        if (ta != tb) return ta > tb;
        return a.word < b.word;
    });
    if (out.size() > static_cast<std::size_t>(table.m2))
        out.resize(static_cast<std::size_t>(table.m2));
    return out;
}

void save_generation_table(const std::string& path, const ClusterGenerationTable& table,
                           const std::string& backend_id, std::uint64_t seed, int beam) {
    json jcounts = json::array();
    for (const auto& cluster : table.counts) jcounts.push_back(cluster);
    json j = {{"version", 1}, {"word", table.word},  {"backend_id", backend_id},
              {"seed", seed}, {"beam", beam},        {"m2", table.m2},
              {"counts", jcounts}};
    std::ofstream out(path);
    if (!out) throw DataError("generation cache save: cannot open " + path);
    out << j.dump() << '\n';
}

std::optional<ClusterGenerationTable> load_generation_table(const std::string& path,
                                                            const std::string& word,
                                                            const std::string& backend_id,
                                                            std::uint64_t seed, int beam) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
    } catch (const json::parse_error&) {
        throw DataError("generation cache: invalid JSON in " + path);
    }
    if (j.value("version", 0) != 1) throw DataError("generation cache: unsupported version");
    if (j.at("word") != word || j.at("backend_id") != backend_id ||
        j.at("seed").get<std::uint64_t>() != seed || j.at("beam").get<int>() != beam)
        return std::nullopt;  // cache key mismatch, rebuild
    ClusterGenerationTable table;
    table.word = word;
    table.m2 = j.at("m2").get<int>();
    for (const auto& cluster : j.at("counts"))
        table.counts.push_back(cluster.get<std::map<std::string, int>>());
    finalize_table(table);
    return table;
}

}  // namespace lexsub
