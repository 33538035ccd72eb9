#include "lexsub/corpus_store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <set>

#include <json.hpp>

#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

using nlohmann::json;

void CorpusStore::add_sentence(std::int64_t id, std::string text) {
    std::set<std::string> seen;
    for (const auto& tok : tokenize(text)) {
        const std::string folded = fold_case(tok.token);
        ++freq_[folded];
        if (seen.insert(folded).second) index_[folded].push_back(id);
    }
    sentences_.push_back({id, std::move(text)});
}

CorpusStore CorpusStore::ingest(std::istream& in, std::size_t token_cap) {
    CorpusStore store;
    store.token_cap_ = token_cap;
    std::string line;
    std::int64_t id = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (whitespace_token_count(line) > token_cap) continue;
        store.add_sentence(id++, std::move(line));
        line.clear();
    }
    if (in.bad()) throw DataError("corpus ingest: stream read failure");
    return store;
}

CorpusStore CorpusStore::ingest_file(const std::string& path, std::size_t token_cap) {
    std::ifstream in(path);
    if (!in) throw DataError("corpus ingest: cannot open " + path);
    return ingest(in, token_cap);
}

CorpusStore CorpusStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("corpus load: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError(std::string("corpus load: invalid JSON: ") + e.what());
    }
    if (j.value("version", 0) != 1) throw DataError("corpus load: unsupported version");
    CorpusStore store;
    store.token_cap_ = j.value("token_cap", std::size_t{128});
    for (const auto& entry : j.at("sentences")) {
        store.add_sentence(entry.at(0).get<std::int64_t>(),
                           entry.at(1).get<std::string>());
    }
    return store;
}

void CorpusStore::save(const std::string& path) const {
    json sentences = json::array();
    for (const auto& s : sentences_) sentences.push_back(json::array({s.id, s.text}));
    json j = {{"version", 1}, {"token_cap", token_cap_}, {"sentences", sentences}};
    std::ofstream out(path);
    if (!out) throw DataError("corpus save: cannot open " + path);
    out << j.dump() << '\n';
}

const std::vector<std::int64_t>* CorpusStore::sentence_ids(const std::string& word) const {
    auto it = index_.find(fold_case(word));
    return it == index_.end() ? nullptr : &it->second;
}

const Sentence& CorpusStore::sentence(std::int64_t id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= sentences_.size())
        throw UsageError("sentence: unknown id " + std::to_string(id));
    return sentences_[static_cast<std::size_t>(id)];
}

std::optional<Span> CorpusStore::find_in_sentence(std::int64_t id,
                                                  const std::string& word) const {
    return find_word(sentence(id).text, word);
}

std::uint64_t CorpusStore::frequency(const std::string& word) const {
    auto it = freq_.find(fold_case(word));
    return it == freq_.end() ? 0 : it->second;
}

SampleSet CorpusStore::sample(const std::string& word, std::size_t n,
                              std::uint64_t seed) const {
    if (n == 0) throw UsageError("sample: n must be >= 1");
    SampleSet set;
    set.word = word;
    set.requested = n;
    set.seed = seed;
    const auto* ids = sentence_ids(word);
    if (ids == nullptr) return set;
    set.word_known = true;

    std::vector<std::int64_t> pool = *ids;
    if (pool.size() > n) {
        // Partial Fisher-Yates; own RNG so results are platform-stable.
        Rng rng(seed ^ fnv1a64(fold_case(word)));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.bounded(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(n);
    }
    for (std::int64_t id : pool) {
        const auto span = find_in_sentence(id, word);
        if (!span) continue;  // unreachable under the match policy
        set.sentences.emplace_back(sentence(id), *span);
    }
    return set;
}

Vocabulary CorpusStore::top_vocabulary(std::size_t n) const {
    std::vector<std::pair<std::string, std::uint64_t>> items;
    items.reserve(freq_.size());
    for (const auto& [word, count] : freq_) {
        const bool has_alpha = std::any_of(word.begin(), word.end(), [](char c) {
            return std::isalpha(static_cast<unsigned char>(c)) != 0;
        });
        if (has_alpha) items.emplace_back(word, count);
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (items.size() > n) items.resize(n);
    Vocabulary vocab;
    for (auto& [word, count] : items) {
        vocab.words.push_back(word);
        vocab.frequency[word] = count;
    }
    return vocab;
}

}  // namespace lexsub
