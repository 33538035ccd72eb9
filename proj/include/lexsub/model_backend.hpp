#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexsub/types.hpp"

namespace lexsub {

struct ContextualEmbedding {
    std::vector<double> vector;
};

struct StaticEmbedding {
    std::vector<double> vector;
};

struct MaskFillResult {
    std::string candidate;
    double score = 0.0;  // log-probability, nats
    int beam_rank = 1;
};

struct Segmentation {
    std::vector<std::string> tokens;
    std::size_t token_count() const { return tokens.size(); }
};

/// Contract for all learned-model functionality. Implementations must be
/// deterministic and safe for concurrent read-only queries once constructed.
class ModelBackend {
  public:
    virtual ~ModelBackend() = default;

    virtual std::string id() const = 0;
    virtual std::size_t embedding_dim() const = 0;

    /// The mask placeholder string this backend expects in masked sentences.
    virtual std::string mask_token() const = 0;

    /// Contextual embedding of `word` at `span` in `sentence`; for
    /// multi-subword words, the mean over subword positions.
    virtual ContextualEmbedding embed_in_context(const std::string& word,
                                                 const std::string& sentence,
                                                 Span span) const = 0;

    /// Beam-search mask prediction. At most `beam_width` results, sorted by
    /// descending score. Raw model strings; no normalization here.
    virtual std::vector<MaskFillResult> fill_mask(const std::string& masked_sentence,
                                                  int beam_width) const = 0;

    /// Total log-probability of forced-decoding `candidate` into the mask
    /// slot (summed over subword tokens).
    virtual double score_infill(const std::string& masked_sentence,
                                const std::string& candidate) const = 0;

    /// Static (context-independent) embedding, or absent when the provider
    /// has no entry and no compositional fallback.
    virtual std::optional<StaticEmbedding> embed_static(const std::string& word) const = 0;

    virtual Segmentation segment(const std::string& word) const = 0;
};

/// Throws BackendError unless `masked_sentence` contains `mask` exactly once.
void require_single_mask(const std::string& masked_sentence, const std::string& mask);

}  // namespace lexsub
