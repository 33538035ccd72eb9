#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexsub/model_backend.hpp"

namespace lexsub {

/// Fixture driving the stub backend. Fields mirror the on-disk JSON format
/// (version 1), documented in data/stub_fixture.schema.md:
///
///   {
///     "version": 1,
///     "id": "stub",               // optional, default "stub"
///     "seed": 1234,
///     "dim": 16,                  // contextual embedding dimension
///     "static_dim": 8,
///     "mask_token": "<mask>",
///     "static_fallback": false,   // compositional fallback for unknown words
///     "vocabulary": ["cat", ...],
///     "segmentations": {"bole": ["bol", "##e"], ...},
///     "senses": {"elite": [{"bucket": 1, "cues": ["ruling", "sect"]}], ...},
///     "statics": {"bole": [0.1, ...], ...},
///     "fills": {"the <mask> sat": [["cat", -0.5], ["dog", -1.2]], ...}
///   }
struct StubFixture {
    int version = 1;
    std::string id = "stub";
    std::uint64_t seed = 0;
    std::size_t dim = 16;
    std::size_t static_dim = 8;
    std::string mask_token = "<mask>";
    bool static_fallback = false;
    std::vector<std::string> vocabulary;
    std::map<std::string, std::vector<std::string>> segmentations;
    struct SenseRule {
        int bucket = 0;
        std::vector<std::string> cues;  // substrings matched against the folded sentence
    };
    std::map<std::string, std::vector<SenseRule>> senses;
    std::map<std::string, std::vector<double>> statics;
    std::map<std::string, std::vector<std::pair<std::string, double>>> fills;

    static StubFixture from_file(const std::string& path);
    static StubFixture from_json_text(const std::string& text);
};

/// Deterministic model backend reproducible from a fixture plus the hash
/// scheme below; lets the whole pipeline run without neural models.
///
/// Hash scheme (normative; tests reimplement it independently):
///   * token context vector for (token, bucket):
///       state = fnv1a64(token + "\x1f" + decimal(bucket)) ^ fixture.seed
///       c_i   = 2 * unit_interval(splitmix64(state)) - 1   for i = 0..dim-1
///       vector = c / ||c||
///   * embed_in_context(word, sentence, span):
///       bucket = first sense rule of `word` whose any cue is a substring of
///                the case-folded sentence, else 0
///       result = mean over the word's subword tokens of their (token, bucket)
///                vectors
///   * static fallback vector for unknown `word` (only when static_fallback):
///       same stream with state = fnv1a64("static\x1f" + word) ^ seed,
///       static_dim components, unnormalized
///   * unlisted infill token log-prob for (masked_sentence, token, step):
///       lp = -8 - 4 * unit_interval(fnv1a64(masked_sentence + "\x1f" + token
///            + "\x1f" + decimal(step)) ^ seed)
///     score_infill of an unlisted candidate is the sum of lp over its
///     subword tokens; fixture-listed candidates return their fixture score
///     directly (fixture scores are expected to sit above -8 so that listed
///     candidates outscore unlisted ones).
class StubBackend : public ModelBackend {
  public:
    explicit StubBackend(StubFixture fixture);

    std::string id() const override;
    std::size_t embedding_dim() const override { return fixture_.dim; }
    std::string mask_token() const override { return fixture_.mask_token; }

    ContextualEmbedding embed_in_context(const std::string& word,
                                         const std::string& sentence,
                                         Span span) const override;
    std::vector<MaskFillResult> fill_mask(const std::string& masked_sentence,
                                          int beam_width) const override;
    double score_infill(const std::string& masked_sentence,
                        const std::string& candidate) const override;
    std::optional<StaticEmbedding> embed_static(const std::string& word) const override;
    Segmentation segment(const std::string& word) const override;

    const StubFixture& fixture() const { return fixture_; }

    /// Exposed for the independent-reimplementation tests.
    std::vector<double> token_context_vector(const std::string& token, int bucket) const;
    int sense_bucket(const std::string& word, const std::string& sentence) const;

  private:
    StubFixture fixture_;
};

}  // namespace lexsub
