#include "lexsub/stub_backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

using nlohmann::json;

StubFixture StubFixture::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("stub fixture: invalid JSON: ") + e.what());
    }
    StubFixture f;
    f.version = j.value("version", 1);
    if (f.version != 1) throw DataError("stub fixture: unsupported version");
    f.id = j.value("id", std::string("stub"));
    f.seed = j.value("seed", std::uint64_t{0});
    f.dim = j.value("dim", std::size_t{16});
    f.static_dim = j.value("static_dim", std::size_t{8});
    f.mask_token = j.value("mask_token", std::string("<mask>"));
    f.static_fallback = j.value("static_fallback", false);
    if (f.dim == 0 || f.static_dim == 0) throw DataError("stub fixture: zero dimension");
    if (j.contains("vocabulary"))
        f.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    if (j.contains("segmentations")) {
        for (auto& [w, toks] : j.at("segmentations").items())
            f.segmentations[w] = toks.get<std::vector<std::string>>();
    }
    if (j.contains("senses")) {
        for (auto& [w, rules] : j.at("senses").items()) {
            for (auto& r : rules) {
                SenseRule rule;
                rule.bucket = r.at("bucket").get<int>();
                rule.cues = r.at("cues").get<std::vector<std::string>>();
                f.senses[w].push_back(std::move(rule));
            }
        }
    }
    if (j.contains("statics")) {
        for (auto& [w, vec] : j.at("statics").items()) {
            auto v = vec.get<std::vector<double>>();
            if (v.size() != f.static_dim)
                throw DataError("stub fixture: static vector dimension mismatch for " + w);
            f.statics[w] = std::move(v);
        }
    }
    if (j.contains("fills")) {
        for (auto& [sent, list] : j.at("fills").items()) {
            for (auto& entry : list) {
                f.fills[sent].emplace_back(entry.at(0).get<std::string>(),
                                           entry.at(1).get<double>());
            }
        }
    }
    return f;
}

StubFixture StubFixture::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("stub fixture: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

StubBackend::StubBackend(StubFixture fixture) : fixture_(std::move(fixture)) {}

std::string StubBackend::id() const {
    return fixture_.id + "-v1-" + std::to_string(fixture_.seed);
}

std::vector<double> StubBackend::token_context_vector(const std::string& token,
                                                      int bucket) const {
    std::uint64_t state =
        fnv1a64(token + '\x1f' + std::to_string(bucket)) ^ fixture_.seed;
    std::vector<double> v(fixture_.dim);
    for (double& c : v) c = 2.0 * unit_interval(splitmix64(state)) - 1.0;
    const double n = norm(v);
    if (n > 0.0)
        for (double& c : v) c /= n;
    return v;
}

int StubBackend::sense_bucket(const std::string& word, const std::string& sentence) const {
    auto it = fixture_.senses.find(word);
    if (it == fixture_.senses.end()) return 0;
    const std::string folded = fold_case(sentence);
    for (const auto& rule : it->second) {
        for (const auto& cue : rule.cues) {
            if (folded.find(fold_case(cue)) != std::string::npos) return rule.bucket;
        }
    }
    return 0;
}

ContextualEmbedding StubBackend::embed_in_context(const std::string& word,
                                                  const std::string& sentence,
                                                  Span span) const {
    if (span.end() > sentence.size())
        throw BackendError("embed_in_context: span out of bounds");
    const std::string at_span = sentence.substr(span.begin, span.length);
    if (fold_case(at_span) != fold_case(word))
        throw BackendError("embed_in_context: word/span mismatch: '" + at_span +
                           "' vs '" + word + "'");
    const int bucket = sense_bucket(word, sentence);
    const Segmentation seg = segment(word);
    std::vector<double> acc(fixture_.dim, 0.0);
    for (const auto& tok : seg.tokens) {
        const auto v = token_context_vector(tok, bucket);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
    }
    for (double& c : acc) c /= static_cast<double>(seg.tokens.size());
    return ContextualEmbedding{std::move(acc)};
}

std::vector<MaskFillResult> StubBackend::fill_mask(const std::string& masked_sentence,
                                                   int beam_width) const {
    if (beam_width < 1) throw BackendError("fill_mask: beam_width must be >= 1");
    require_single_mask(masked_sentence, fixture_.mask_token);
    std::vector<MaskFillResult> out;
    auto it = fixture_.fills.find(masked_sentence);
    if (it != fixture_.fills.end()) {
        std::vector<std::pair<std::string, double>> entries = it->second;
        std::stable_sort(entries.begin(), entries.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        int rank = 1;
        for (const auto& [cand, score] : entries) {
            if (rank > beam_width) break;
            out.push_back({cand, score, rank});
            ++rank;
        }
    }
    return out;
}

static double unlisted_token_logprob(const std::string& masked_sentence,
                                     const std::string& token, int step,
                                     std::uint64_t seed) {
    const std::uint64_t h =
        fnv1a64(masked_sentence + '\x1f' + token + '\x1f' + std::to_string(step)) ^ seed;
    return -8.0 - 4.0 * unit_interval(h);
}

double StubBackend::score_infill(const std::string& masked_sentence,
                                 const std::string& candidate) const {
    require_single_mask(masked_sentence, fixture_.mask_token);
    auto it = fixture_.fills.find(masked_sentence);
    if (it != fixture_.fills.end()) {
        for (const auto& [cand, score] : it->second) {
            if (cand == candidate) return score;
        }
    }
    const Segmentation seg = segment(candidate);
    double total = 0.0;
    int step = 0;
    for (const auto& tok : seg.tokens)
        total += unlisted_token_logprob(masked_sentence, tok, step++, fixture_.seed);
    return total;
}

std::optional<StaticEmbedding> StubBackend::embed_static(const std::string& word) const {
    auto it = fixture_.statics.find(word);
    if (it != fixture_.statics.end()) return StaticEmbedding{it->second};
    if (!fixture_.static_fallback) return std::nullopt;
    std::uint64_t state = fnv1a64("static\x1f" + word) ^ fixture_.seed;
    std::vector<double> v(fixture_.static_dim);
    for (double& c : v) c = 2.0 * unit_interval(splitmix64(state)) - 1.0;
    return StaticEmbedding{std::move(v)};
}

Segmentation StubBackend::segment(const std::string& word) const {
    if (word.empty()) throw BackendError("segment: empty word");
    auto it = fixture_.segmentations.find(word);
    if (it != fixture_.segmentations.end()) return Segmentation{it->second};
    return Segmentation{{word}};
}

void require_single_mask(const std::string& masked_sentence, const std::string& mask) {
    std::size_t count = 0;
    for (std::size_t pos = masked_sentence.find(mask); pos != std::string::npos;
         pos = masked_sentence.find(mask, pos + mask.size()))
        ++count;
    if (count != 1)
        throw BackendError("masked sentence must contain exactly one '" + mask +
                           "', found " + std::to_string(count));
}

}  // namespace lexsub
