#include "lexsub/embedding_index.hpp"

#include <fstream>

#include <json.hpp>

#include "lexsub/errors.hpp"
#include "lexsub/kmeans.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

using nlohmann::json;

int DecontextEntry::nonempty_clusters() const {
    int n = 0;
    for (int s : cluster_sizes)
        if (s > 0) ++n;
    return n;
}

const DecontextEntry* DecontextIndex::find(const std::string& word) const {
    auto it = entries.find(word);
    if (it == entries.end() || it->second.insufficient) return nullptr;
    return &it->second;
}

std::uint64_t word_seed(std::uint64_t base, const std::string& word) {
    std::uint64_t state = base ^ fnv1a64(word);
    return splitmix64(state);
}

DecontextIndex build_index(const Vocabulary& vocab, const CorpusStore& store,
                           const ModelBackend& backend, int k, int sample_n,
                           std::uint64_t seed) {
    if (k < 1) throw UsageError("build_index: k must be >= 1");
    if (sample_n < k) throw UsageError("build_index: sample_n must be >= k");
    DecontextIndex index;
    index.backend_id = backend.id();
    index.k = k;
    index.sample_n = sample_n;
    index.seed = seed;
    index.vocab = vocab;

    for (const auto& word : vocab.words) {
        DecontextEntry entry;
        entry.word = word;
        const SampleSet samples =
            store.sample(word, static_cast<std::size_t>(sample_n), word_seed(seed, word));
        std::vector<std::vector<double>> points;
        std::vector<std::int64_t> point_ids;
        for (const auto& [sentence, span] : samples.sentences) {
            try {
                points.push_back(
                    backend.embed_in_context(word, sentence.text, span).vector);
            } catch (const BackendError& e) {
                throw BackendError("build_index: word '" + word + "': " + e.what());
            }
            point_ids.push_back(sentence.id);
        }
        const int m = static_cast<int>(points.size());
        if (m == 0) {
            entry.insufficient = true;
            entry.centroids.assign(k, {});
            entry.cluster_sizes.assign(k, 0);
        } else if (m < k) {
            // Too few points for K clusters: singletons plus empty padding.
            entry.centroids.assign(k, {});
            entry.cluster_sizes.assign(k, 0);
            for (int i = 0; i < m; ++i) {
                entry.centroids[i] = points[i];
                entry.cluster_sizes[i] = 1;
                entry.sentence_assignments[point_ids[i]] = i;
            }
        } else {
            const KMeansResult km = kmeans(points, k, word_seed(seed ^ 0x6b6d65616e73ull, word));
            entry.centroids = km.centroids;
            entry.cluster_sizes = km.sizes;
            for (int c = 0; c < k; ++c)
                if (km.sizes[c] == 0) entry.centroids[c].clear();
            for (std::size_t i = 0; i < point_ids.size(); ++i)
                entry.sentence_assignments[point_ids[i]] = km.assignment[i];
        }
        index.entries.emplace(word, std::move(entry));
    }
    return index;
}

std::vector<std::pair<int, double>> centroid_similarities(
    const DecontextEntry& entry, const ContextualEmbedding& query) {
    std::vector<std::pair<int, double>> out;
    for (std::size_t c = 0; c < entry.centroids.size(); ++c) {
        if (entry.cluster_sizes[c] == 0) continue;
        out.emplace_back(static_cast<int>(c), cosine(entry.centroids[c], query.vector));
    }
    if (out.empty())
        throw DataError("centroid_similarities: all clusters empty for '" + entry.word + "'");
    return out;
}

double global_similarity(const DecontextEntry& entry, const ContextualEmbedding& query) {
    std::vector<double> mean;
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < entry.centroids.size(); ++c) {
        const int size = entry.cluster_sizes[c];
        if (size == 0) continue;
        if (mean.empty()) mean.assign(entry.centroids[c].size(), 0.0);
        for (std::size_t d = 0; d < mean.size(); ++d)
            mean[d] += entry.centroids[c][d] * size;
        total += static_cast<std::uint64_t>(size);
    }
    if (total == 0)
        throw DataError("global_similarity: all clusters empty for '" + entry.word + "'");
    for (double& v : mean) v /= static_cast<double>(total);
    return cosine(mean, query.vector);
}

void DecontextIndex::save(const std::string& path) const {
    json jentries = json::object();
    for (const auto& [word, entry] : entries) {
        json assigns = json::object();
        for (const auto& [sid, c] : entry.sentence_assignments)
            assigns[std::to_string(sid)] = c;
        jentries[word] = {{"centroids", entry.centroids},
                          {"sizes", entry.cluster_sizes},
                          {"assignments", assigns},
                          {"insufficient", entry.insufficient}};
    }
    json jvocab = json::array();
    for (const auto& w : vocab.words)
        jvocab.push_back(json::array({w, vocab.count_of(w)}));
    json j = {{"version", 1},     {"backend_id", backend_id}, {"k", k},
              {"sample_n", sample_n}, {"seed", seed},         {"vocab", jvocab},
              {"entries", jentries}};
    std::ofstream out(path);
    if (!out) throw DataError("index save: cannot open " + path);
    out << j.dump() << '\n';
}

DecontextIndex DecontextIndex::load(const std::string& path,
                                    const std::string& expect_backend_id) {
    std::ifstream in(path);
    if (!in) throw DataError("index load: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError(std::string("index load: invalid JSON: ") + e.what());
    }
    if (j.value("version", 0) != 1) throw DataError("index load: unsupported version");
    DecontextIndex index;
    index.backend_id = j.at("backend_id").get<std::string>();
    if (!expect_backend_id.empty() && index.backend_id != expect_backend_id)
        throw DataError("index load: built with backend '" + index.backend_id +
                        "', expected '" + expect_backend_id + "'");
    index.k = j.at("k").get<int>();
    index.sample_n = j.at("sample_n").get<int>();
    index.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& entry : j.at("vocab")) {
        const auto word = entry.at(0).get<std::string>();
        index.vocab.words.push_back(word);
        index.vocab.frequency[word] = entry.at(1).get<std::uint64_t>();
    }
    for (auto& [word, je] : j.at("entries").items()) {
        DecontextEntry entry;
        entry.word = word;
        entry.centroids = je.at("centroids").get<std::vector<std::vector<double>>>();
        entry.cluster_sizes = je.at("sizes").get<std::vector<int>>();
        entry.insufficient = je.at("insufficient").get<bool>();
        for (auto& [sid, c] : je.at("assignments").items())
            entry.sentence_assignments[std::stoll(sid)] = c.get<int>();
        index.entries.emplace(word, std::move(entry));
    }
    return index;
}

}  // namespace lexsub
