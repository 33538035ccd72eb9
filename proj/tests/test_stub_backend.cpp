#include <doctest.h>

#include <cmath>

#include "lexsub/errors.hpp"
#include "lexsub/stub_backend.hpp"
#include "lexsub/util.hpp"

using namespace lexsub;

namespace {

StubFixture small_fixture() {
    StubFixture f;
    f.seed = 99;
    f.dim = 16;
    f.static_dim = 4;
    f.vocabulary = {"cat", "dog"};
    f.segmentations["bole"] = {"bol", "##e"};
    f.senses["bank"] = {{1, {"river", "shore"}}, {2, {"money", "loan"}}};
    f.statics["bole"] = {1, 0, 0, 0};
    f.fills["The <mask> was large."] = {{"class", -1.0}, {"group", -1.5}};
    return f;
}

// Independent reimplementation of the documented hash scheme.
std::vector<double> oracle_vector(const std::string& token, int bucket, std::uint64_t seed,
                                  std::size_t dim) {
    std::uint64_t state = fnv1a64(token + '\x1f' + std::to_string(bucket)) ^ seed;
    std::vector<double> v(dim);
    double sq = 0.0;
    for (auto& c : v) {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        c = 2.0 * (static_cast<double>(z >> 11) * std::pow(2.0, -53)) - 1.0;
        sq += c * c;
    }
    for (auto& c : v) c /= std::sqrt(sq);
    return v;
}

double oracle_unlisted_lp(const std::string& sentence, const std::string& token, int step,
                          std::uint64_t seed) {
    const std::uint64_t h =
        fnv1a64(sentence + '\x1f' + token + '\x1f' + std::to_string(step)) ^ seed;
    return -8.0 - 4.0 * (static_cast<double>(h >> 11) * std::pow(2.0, -53));
}

}  // namespace

TEST_CASE("embed_in_context matches the documented hash scheme") {
    const StubBackend backend(small_fixture());
    // 100 random single-token queries against the independent oracle.
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const std::string word = "w" + std::to_string(rng.bounded(1000));
        const std::string sentence = "the " + word + " here";
        const auto emb = backend.embed_in_context(word, sentence, Span{4, word.size()});
        const auto expect = oracle_vector(word, 0, 99, 16);
        REQUIRE(emb.vector.size() == expect.size());
        for (std::size_t d = 0; d < expect.size(); ++d)
            CHECK(emb.vector[d] == doctest::Approx(expect[d]).epsilon(1e-12));
    }
}

TEST_CASE("embed_in_context is deterministic and sense-sensitive") {
    const StubBackend backend(small_fixture());
    const std::string s1 = "I sat by the river bank today.";
    const std::string s2 = "The money bank opened a loan.";
    const Span sp1{19, 4}, sp2{10, 4};
    const auto a = backend.embed_in_context("bank", s1, sp1);
    const auto b = backend.embed_in_context("bank", s1, sp1);
    CHECK(a.vector == b.vector);
    const auto c = backend.embed_in_context("bank", s2, sp2);
    CHECK(a.vector != c.vector);
    CHECK(a.vector == oracle_vector("bank", 1, 99, 16));
    CHECK(c.vector == oracle_vector("bank", 2, 99, 16));
}

TEST_CASE("multi-subword embedding is the mean over subword positions") {
    const StubBackend backend(small_fixture());
    const std::string sentence = "the bole was cut";
    const auto emb = backend.embed_in_context("bole", sentence, Span{4, 4});
    const auto t1 = oracle_vector("bol", 0, 99, 16);
    const auto t2 = oracle_vector("##e", 0, 99, 16);
    for (std::size_t d = 0; d < emb.vector.size(); ++d)
        CHECK(emb.vector[d] == doctest::Approx((t1[d] + t2[d]) / 2.0).epsilon(1e-12));
}

TEST_CASE("embed_in_context validates the span") {
    const StubBackend backend(small_fixture());
    CHECK_THROWS_AS(backend.embed_in_context("cat", "no match", Span{0, 2}),
                    BackendError);
    CHECK_THROWS_AS(backend.embed_in_context("cat", "abc", Span{1, 10}), BackendError);
}

TEST_CASE("fill_mask echoes fixtures sorted by score") {
    const StubBackend backend(small_fixture());
    const auto results = backend.fill_mask("The <mask> was large.", 20);
    REQUIRE(results.size() == 2);
    CHECK(results[0].candidate == "class");
    CHECK(results[0].score > results[1].score);
    CHECK(results[0].beam_rank == 1);
    CHECK(results[1].beam_rank == 2);

    const auto one = backend.fill_mask("The <mask> was large.", 1);
    CHECK(one.size() == 1);
}

TEST_CASE("fill_mask rejects zero or multiple masks") {
    const StubBackend backend(small_fixture());
    CHECK_THROWS_AS(backend.fill_mask("no mask here", 5), BackendError);
    CHECK_THROWS_AS(backend.fill_mask("<mask> and <mask>", 5), BackendError);
}

TEST_CASE("score_infill: fixture echo, determinism, multi-token sum") {
    const StubBackend backend(small_fixture());
    const std::string masked = "The <mask> was large.";
    CHECK(backend.score_infill(masked, "class") == doctest::Approx(-1.0));
    CHECK(backend.score_infill(masked, "zzz") == backend.score_infill(masked, "zzz"));

    // "bole" segments into bol + ##e; compare against stepwise oracle.
    const double got = backend.score_infill(masked, "bole");
    const double expect =
        oracle_unlisted_lp(masked, "bol", 0, 99) + oracle_unlisted_lp(masked, "##e", 1, 99);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));

    // Listed candidates outscore unlisted ones.
    CHECK(backend.score_infill(masked, "class") > backend.score_infill(masked, "zzz"));
}

TEST_CASE("embed_static: fixture vector, absent without fallback") {
    const StubBackend backend(small_fixture());
    REQUIRE(backend.embed_static("bole").has_value());
    CHECK(backend.embed_static("bole")->vector == std::vector<double>{1, 0, 0, 0});
    CHECK(!backend.embed_static("unknown").has_value());

    StubFixture with_fallback = small_fixture();
    with_fallback.static_fallback = true;
    const StubBackend fb(with_fallback);
    REQUIRE(fb.embed_static("unknown").has_value());
    CHECK(fb.embed_static("unknown")->vector.size() == 4);
}

TEST_CASE("distinct words get non-identical hash vectors") {
    const StubBackend backend(small_fixture());
    const auto a = backend.token_context_vector("alpha", 0);
    const auto b = backend.token_context_vector("beta", 0);
    CHECK(cosine(a, b) < 1.0);
}

TEST_CASE("segment: fixture, vocabulary, empty") {
    const StubBackend backend(small_fixture());
    CHECK(backend.segment("bole").token_count() == 2);
    CHECK(backend.segment("cat").token_count() == 1);
    CHECK_THROWS_AS(backend.segment(""), BackendError);
    // stable across calls
    CHECK(backend.segment("bole").tokens == backend.segment("bole").tokens);
}

TEST_CASE("fixture JSON round-trip") {
    const std::string text = R"({
        "version": 1, "seed": 7, "dim": 8, "static_dim": 2,
        "mask_token": "[MASK]",
        "vocabulary": ["a"],
        "segmentations": {"xy": ["x", "y"]},
        "senses": {"a": [{"bucket": 3, "cues": ["cue"]}]},
        "statics": {"a": [0.5, -0.5]},
        "fills": {"the [MASK]": [["b", -2.0]]}
    })";
    const StubFixture f = StubFixture::from_json_text(text);
    CHECK(f.seed == 7);
    CHECK(f.mask_token == "[MASK]");
    CHECK(f.segmentations.at("xy").size() == 2);
    CHECK(f.senses.at("a")[0].bucket == 3);
    CHECK(f.fills.at("the [MASK]")[0].first == "b");

    const StubBackend backend(f);
    CHECK(backend.fill_mask("the [MASK]", 3).size() == 1);
}

TEST_CASE("malformed fixture raises DataError") {
    CHECK_THROWS_AS(StubFixture::from_json_text("{not json"), DataError);
    CHECK_THROWS_AS(StubFixture::from_json_text(R"({"version": 2})"), DataError);
}
