#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexsub/types.hpp"

namespace lexsub {

// ---- hashing / deterministic RNG --------------------------------------

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t& state);

/// Maps a 64-bit value to [0, 1).
double unit_interval(std::uint64_t v);

/// Small deterministic generator; identical output on every platform,
/// unlike std::uniform_int_distribution.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() { return splitmix64(state_); }
    double next_double() { return unit_interval(next_u64()); }
    /// Uniform in [0, n), rejection-sampled.
    std::uint64_t bounded(std::uint64_t n);

  private:
    std::uint64_t state_;
};

// ---- text -------------------------------------------------------------

/// ASCII case folding; bytes outside A-Z pass through unchanged.
std::string fold_case(std::string_view s);

bool is_word_char(char c);

struct TokenSpan {
    std::string token;  // as written, not folded
    Span span;
};

/// Word tokens: maximal runs of letters/digits/hyphen/apostrophe with
/// edge hyphens/apostrophes trimmed.
std::vector<TokenSpan> tokenize(std::string_view text);

std::size_t whitespace_token_count(std::string_view text);

/// First case-insensitive whole-word occurrence of `word` in `text`.
std::optional<Span> find_word(std::string_view text, std::string_view word);

std::size_t edit_distance(std::string_view a, std::string_view b);

/// 1 - editdistance / max(len); 1.0 for two empty strings.
double edit_similarity(std::string_view a, std::string_view b);

// ---- vectors ----------------------------------------------------------

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm(const std::vector<double>& a);

/// Cosine similarity; 0.0 when either vector has zero norm.
double cosine(const std::vector<double>& a, const std::vector<double>& b);

double squared_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lexsub
