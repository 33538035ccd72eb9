#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "lexsub/errors.hpp"
#include "lexsub/evaluator.hpp"
#include "lexsub/util.hpp"

using namespace lexsub;

namespace {

GoldInstance gold_of(const std::map<std::string, int>& counts) {
    GoldInstance g;
    g.sentence = "s";
    g.target = "t";
    g.gold = counts;
    return g;
}

// Brute-force reimplementations straight from the metric definitions.
namespace oracle {

double acc1(const Prediction& pred, const GoldInstance& gold) {
    if (pred.empty()) return 0.0;
    return gold.gold.count(fold_case(pred[0])) != 0 ? 1.0 : 0.0;
}

double acc_k_top1(const Prediction& pred, const GoldInstance& gold, int k) {
    // top-1 gold label: max count, ties lexicographic
    std::string label;
    int best = -1;
    for (const auto& [w, c] : gold.gold) {
        if (c > best) {
            best = c;
            label = w;
        }
    }
    for (int j = 0; j < k && j < static_cast<int>(pred.size()); ++j)
        if (fold_case(pred[j]) == label) return 1.0;
    return 0.0;
}

double potential(const Prediction& pred, const GoldInstance& gold, int k) {
    for (int j = 0; j < k && j < static_cast<int>(pred.size()); ++j)
        if (gold.gold.count(fold_case(pred[j])) != 0) return 1.0;
    return 0.0;
}

double ap(const Prediction& pred, const GoldInstance& gold, int k) {
    double sum = 0.0;
    int rel_so_far = 0;
    for (int j = 0; j < k && j < static_cast<int>(pred.size()); ++j) {
        const bool rel = gold.gold.count(fold_case(pred[j])) != 0;
        if (rel) ++rel_so_far;
        if (rel) sum += static_cast<double>(rel_so_far) / (j + 1);
    }
    return sum / k;
}

}  // namespace oracle

}  // namespace

TEST_CASE("top1 gold label: highest count, ties lexicographic") {
    CHECK(gold_of({{"class", 5}, {"group", 2}}).top1_label() == "class");
    CHECK(gold_of({{"zeta", 3}, {"alpha", 3}}).top1_label() == "alpha");
    CHECK(gold_of({{"only", 1}}).top1_label() == "only");
}

TEST_CASE("accuracy_at_1 basics") {
    const std::vector<GoldInstance> golds = {gold_of({{"a", 1}}), gold_of({{"b", 1}}),
                                             gold_of({{"c", 1}})};
    // hits (1, 0, 1) -> 2/3; middle prediction empty
    const std::vector<Prediction> preds = {{"a", "zz"}, {}, {"c"}};
    CHECK(accuracy_at_1(preds, golds) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("accuracy_at_k_top1 documented example") {
    const std::vector<GoldInstance> golds = {gold_of({{"class", 5}, {"group", 2}})};
    const std::vector<Prediction> preds = {{"group", "class"}};
    CHECK(accuracy_at_k_top1(preds, golds, 2) == doctest::Approx(1.0));
    CHECK(accuracy_at_k_top1(preds, golds, 1) == doctest::Approx(0.0));
}

TEST_CASE("potential_at_k basics") {
    const std::vector<GoldInstance> golds = {gold_of({{"x", 1}})};
    CHECK(potential_at_k({{"a", "x", "b"}}, golds, 3) == doctest::Approx(1.0));
    CHECK(potential_at_k({{"a", "b", "c"}}, golds, 3) == doctest::Approx(0.0));
    CHECK(potential_at_k({{"x"}}, golds, 10) == doctest::Approx(1.0));  // k > |pred|
}

TEST_CASE("map_at_k: perfect, empty, and the worked 5/9 example") {
    const std::vector<GoldInstance> golds = {gold_of({{"a", 1}, {"b", 1}})};
    CHECK(map_at_k({{"a", "b"}}, golds, 2) == doctest::Approx(1.0));
    CHECK(map_at_k({{"x", "y", "z"}}, golds, 3) == doctest::Approx(0.0));
    // gold={a,b}, pred=[a,x,b], k=3 -> (1*1 + 0 + 2/3)/3 = 5/9
    CHECK(map_at_k({{"a", "x", "b"}}, golds, 3) == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("metrics match the brute-force oracle on random instances") {
    Rng rng(314);
    const std::vector<std::string> lexicon = {"a", "b", "c", "d", "e", "f",
                                              "g", "h", "i", "j", "k", "l"};
    std::vector<GoldInstance> golds;
    std::vector<Prediction> preds;
    for (int i = 0; i < 300; ++i) {
        std::map<std::string, int> counts;
        const std::size_t n_gold = 1 + rng.bounded(4);
        for (std::size_t g = 0; g < n_gold; ++g)
            counts[lexicon[rng.bounded(lexicon.size())]] =
                1 + static_cast<int>(rng.bounded(5));
        golds.push_back(gold_of(counts));

        Prediction pred;
        std::set<std::string> used;
        const std::size_t n_pred = rng.bounded(12);
        for (std::size_t p = 0; p < n_pred; ++p) {
            const std::string w = lexicon[rng.bounded(lexicon.size())];
            if (used.insert(w).second) pred.push_back(w);
        }
        preds.push_back(pred);
    }

    auto mean = [&](auto&& fn) {
        double total = 0.0;
        for (std::size_t i = 0; i < preds.size(); ++i) total += fn(preds[i], golds[i]);
        return total / static_cast<double>(preds.size());
    };

    CHECK(accuracy_at_1(preds, golds) ==
          mean([](const auto& p, const auto& g) { return oracle::acc1(p, g); }));
    for (int k : {1, 2, 3}) {
        CHECK(accuracy_at_k_top1(preds, golds, k) ==
              mean([k](const auto& p, const auto& g) { return oracle::acc_k_top1(p, g, k); }));
    }
    for (int k : {3, 5, 10}) {
        CHECK(potential_at_k(preds, golds, k) ==
              mean([k](const auto& p, const auto& g) { return oracle::potential(p, g, k); }));
        CHECK(map_at_k(preds, golds, k) ==
              doctest::Approx(mean([k](const auto& p, const auto& g) {
                  return oracle::ap(p, g, k);
              })).epsilon(1e-12));
    }

    // Monotonicity in k.
    CHECK(accuracy_at_k_top1(preds, golds, 1) <= accuracy_at_k_top1(preds, golds, 2));
    CHECK(accuracy_at_k_top1(preds, golds, 2) <= accuracy_at_k_top1(preds, golds, 3));
    CHECK(potential_at_k(preds, golds, 3) <= potential_at_k(preds, golds, 5));
    CHECK(potential_at_k(preds, golds, 5) <= potential_at_k(preds, golds, 10));
}

TEST_CASE("evaluate: singleton dataset equals per-instance values; consistency") {
    const std::vector<GoldInstance> golds = {gold_of({{"win", 3}})};
    const auto report = evaluate({{"win", "lose"}}, golds);
    CHECK(report.n_instances == 1);
    CHECK(report.acc_at_1 == doctest::Approx(1.0));
    // acc@1 = 1 on an instance forces potential@k = 1 for every k
    for (int k : {3, 5, 10}) CHECK(report.potential_at_k.at(k) == doctest::Approx(1.0));
    CHECK(report.to_table().find("ACC@1") != std::string::npos);
    CHECK(report.to_json_text().find("acc_at_1") != std::string::npos);
}

TEST_CASE("evaluate rejects misaligned or empty inputs") {
    const std::vector<GoldInstance> golds = {gold_of({{"a", 1}})};
    CHECK_THROWS_AS(accuracy_at_1({}, golds), DataError);
    CHECK_THROWS_AS(accuracy_at_1({}, {}), DataError);
}

// ---- ensembling ---------------------------------------------------------

TEST_CASE("ensemble of identical systems is the identity") {
    const ExternalRanking sys{"a", {{"x", "y", "z"}}};
    const auto out = ensemble({sys, sys, sys});
    REQUIRE(out.size() == 1);
    CHECK(out[0] == Prediction{"x", "y", "z"});
}

TEST_CASE("ensemble tie resolves lexicographically") {
    const ExternalRanking s1{"s1", {{"a", "b"}}};
    const ExternalRanking s2{"s2", {{"b", "a"}}};
    const auto out = ensemble({s1, s2});
    CHECK(out[0] == Prediction{"a", "b"});
}

TEST_CASE("missing candidates are imputed rank |ranking|+1") {
    // s1 ranks c last (3rd of 3); s2 omits c entirely (imputed 3 of |2|+1).
    const ExternalRanking s1{"s1", {{"a", "b", "c"}}};
    const ExternalRanking s2{"s2", {{"b", "a"}}};
    const auto out = ensemble({s1, s2});
    // sums: a=1+2=3, b=2+1=3, c=3+3=6
    CHECK(out[0] == Prediction{"a", "b", "c"});

    // Shrinking s2 to one candidate lowers the imputed rank to 2.
    const ExternalRanking s3{"s3", {{"b"}}};
    const auto out2 = ensemble({s1, s3});
    // sums: a=1+2=3, b=2+1=3, c=3+2=5
    CHECK(out2[0] == Prediction{"a", "b", "c"});
}

TEST_CASE("ensemble matches the exhaustive rank-sum oracle") {
    Rng rng(161);
    const std::vector<std::string> words = {"p", "q", "r", "s", "t"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ExternalRanking> systems;
        for (int s = 0; s < 3; ++s) {
            Prediction ranking = words;
            for (std::size_t i = ranking.size(); i > 1; --i)
                std::swap(ranking[i - 1], ranking[rng.bounded(i)]);
            ranking.resize(2 + rng.bounded(4));  // some systems omit candidates
            systems.push_back({"sys" + std::to_string(s), {ranking}});
        }
        const auto out = ensemble(systems);

        std::set<std::string> pool;
        for (const auto& sys : systems)
            pool.insert(sys.rankings[0].begin(), sys.rankings[0].end());
        std::vector<std::pair<std::string, int>> sums;
        for (const auto& w : pool) {
            int sum = 0;
            for (const auto& sys : systems) {
                const auto& r = sys.rankings[0];
                const auto it = std::find(r.begin(), r.end(), w);
                sum += it == r.end() ? static_cast<int>(r.size()) + 1
                                     : static_cast<int>(it - r.begin()) + 1;
            }
            sums.emplace_back(w, sum);
        }
        std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second < b.second;
            return a.first < b.first;
        });
        REQUIRE(out[0].size() == sums.size());
        for (std::size_t i = 0; i < sums.size(); ++i) CHECK(out[0][i] == sums[i].first);
    }
}

TEST_CASE("ensemble is invariant to system order and validates alignment") {
    const ExternalRanking s1{"s1", {{"a", "c", "b"}}};
    const ExternalRanking s2{"s2", {{"b", "a"}}};
    const ExternalRanking s3{"s3", {{"c", "b", "a"}}};
    CHECK(ensemble({s1, s2, s3}) == ensemble({s3, s1, s2}));

    const ExternalRanking misaligned{"bad", {{"a"}, {"b"}}};
    CHECK_THROWS_AS(ensemble({s1, misaligned}), DataError);
    CHECK_THROWS_AS(ensemble({}), UsageError);
}

// ---- I/O ----------------------------------------------------------------

TEST_CASE("parse_tsar_tsv: counts from duplicates, trailing whitespace, strictness") {
    std::istringstream in(
        "The ruling elite met.\telite\tclass\tClass\tgroup \r\n"
        "\n"
        "Second one.\tword\tsub\t\t\n");
    const auto golds = parse_tsar_tsv(in);
    REQUIRE(golds.size() == 2);
    CHECK(golds[0].target == "elite");
    CHECK(golds[0].gold.at("class") == 2);  // duplicate folded forms accumulate
    CHECK(golds[0].gold.at("group") == 1);
    CHECK(golds[0].top1_label() == "class");
    CHECK(golds[1].gold.size() == 1);

    std::istringstream bad("only two\tcolumns\n");
    CHECK_THROWS_AS(parse_tsar_tsv(bad), DataError);
}

TEST_CASE("ranking files round-trip through write and parse") {
    const std::vector<Prediction> preds = {{"a", "b"}, {"c"}, {}};
    const std::string path = "test_ranking_roundtrip.tsv";
    {
        std::ofstream out(path);
        write_ranking_file(out, preds);
    }
    const auto loaded = parse_ranking_file(path);
    REQUIRE(loaded.rankings.size() == 3);
    CHECK(loaded.rankings[0] == Prediction{"a", "b"});
    CHECK(loaded.rankings[1] == Prediction{"c"});
    CHECK(loaded.rankings[2].empty());
    std::remove(path.c_str());

    CHECK_THROWS_AS(parse_ranking_file("no_such_ranking.tsv"), DataError);
}

TEST_CASE("export_swords caps each instance at top_n candidates") {
    Prediction many;
    for (int i = 0; i < 80; ++i) many.push_back("w" + std::to_string(i));
    std::ostringstream out;
    export_swords({many, {"a"}}, out, 50);
    std::istringstream lines(out.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(std::count(line.begin(), line.end(), '\t') == 50);
    CHECK(line.find("w49") != std::string::npos);
    CHECK(line.find("w50") == std::string::npos);
    REQUIRE(std::getline(lines, line));
    CHECK(line == "1\ta");
}
