#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexsub/types.hpp"

namespace lexsub {

struct Sentence {
    std::int64_t id = 0;
    std::string text;
};

struct SampleSet {
    std::string word;
    std::vector<std::pair<Sentence, Span>> sentences;
    std::size_t requested = 0;
    std::uint64_t seed = 0;
    bool word_known = false;  // false when the word is absent from the index
};

/// Monolingual corpus indexed by contained word form. Match policy: exact
/// surface form after case folding, on word boundaries; no lemmatization.
/// Immutable after ingest; concurrent sampling is safe.
class CorpusStore {
  public:
    /// One sentence per line, UTF-8. Lines longer than `token_cap`
    /// whitespace tokens are dropped; blank lines are skipped.
    static CorpusStore ingest(std::istream& in, std::size_t token_cap = 128);
    static CorpusStore ingest_file(const std::string& path, std::size_t token_cap = 128);

    /// Persistence: single-file JSON, {"version":1,"token_cap":N,
    /// "sentences":[[id,text],...]}; the index is rebuilt on load.
    static CorpusStore load(const std::string& path);
    void save(const std::string& path) const;

    /// Uniform sample without replacement from the word's sentences; all of
    /// them when fewer than n exist. Deterministic given seed. The span is
    /// the first occurrence of the word in each sentence.
    SampleSet sample(const std::string& word, std::size_t n, std::uint64_t seed) const;

    const std::vector<std::int64_t>* sentence_ids(const std::string& word) const;
    const Sentence& sentence(std::int64_t id) const;
    std::optional<Span> find_in_sentence(std::int64_t id, const std::string& word) const;

    /// Total token occurrences of the (folded) word form.
    std::uint64_t frequency(const std::string& word) const;

    /// Top-n word forms by corpus frequency, excluding tokens without any
    /// alphabetic character; ties broken lexicographically.
    Vocabulary top_vocabulary(std::size_t n) const;

    std::size_t sentence_count() const { return sentences_.size(); }
    std::size_t vocabulary_size() const { return index_.size(); }
    const std::unordered_map<std::string, std::vector<std::int64_t>>& index() const {
        return index_;
    }

  private:
    void add_sentence(std::int64_t id, std::string text);

    std::size_t token_cap_ = 128;
    std::vector<Sentence> sentences_;                   // position == id
    std::unordered_map<std::string, std::vector<std::int64_t>> index_;
    std::unordered_map<std::string, std::uint64_t> freq_;
};

}  // namespace lexsub
