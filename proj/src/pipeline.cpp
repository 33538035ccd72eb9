#include "lexsub/pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

using nlohmann::json;

Prediction SimplifyResult::candidate_list() const {
    Prediction out;
    for (const auto& cand : final.ordered) out.push_back(cand.word);
    return out;
}

std::string SimplifyResult::to_json_text() const {
    json j;
    j["sentence"] = instance.sentence;
    j["word"] = instance.word;
    j["span"] = {instance.span.begin, instance.span.length};
    j["ablation"] = ablation_name(mode);
    if (empty) {
        j["empty"] = true;
        j["reason"] = empty_reason;
        j["candidates"] = json::array();
        return j.dump();
    }
    j["empty"] = false;
    json m1_list = json::array();
    for (const auto& cand : m1) m1_list.push_back({{"word", cand.word}, {"score", cand.score}});
    j["m1"] = m1_list;
    json m2_list = json::array();
    for (const auto& cand : m2) m2_list.push_back({{"word", cand.word}, {"score", cand.score}});
    j["m2"] = m2_list;
    j["cluster_weights"] = weights.w;
    j["cluster_weights_raw"] = raw_weights.w;
    j["weights_fallback"] = raw_weights.fallback_applied;
    json ranks = json::object();
    for (const auto& [signal, table] : signal_ranks) {
        json per = json::object();
        for (const auto& [word, rank] : table) per[word] = rank;
        ranks[signal] = per;
    }
    j["signal_ranks"] = ranks;
    json cands = json::array();
    for (const auto& cand : final.ordered)
        cands.push_back({{"word", cand.word}, {"combined_rank", cand.combined}});
    j["candidates"] = cands;
    return j.dump();
}

Pipeline::Pipeline(const ModelBackend& backend, const CorpusStore& store,
                   const DecontextIndex& index, FreqTable freq, Profile profile)
    : backend_(backend),
      store_(store),
      index_(index),
      freq_(std::move(freq)),
      profile_(std::move(profile)) {}

SimplifyResult Pipeline::simplify(const std::string& sentence,
                                  const std::string& word) const {
    const auto span = find_word(sentence, word);
    if (!span) throw DataError("simplify: '" + word + "' not found in sentence");
    return simplify(TargetInstance{sentence, word, *span});
}

SimplifyResult Pipeline::simplify(const TargetInstance& instance) const {
    const GenerationConfig config = profile_.to_config();
    SimplifyResult result;
    result.instance = instance;
    result.mode = config.ablation;

    result.m1 = generate_m1(instance, index_, backend_, config);
    result.table = build_generation_table(instance.word, store_, index_, backend_, config);

    if (!result.table.empty) {
        result.raw_weights = compute_weights(result.table, result.m1);
        result.weights = ablation_mode(result.raw_weights, config.ablation);
        result.m2 = score_augmented(result.table, result.weights);
    } else {
        result.raw_weights.w.assign(static_cast<std::size_t>(config.k), 0);
        result.weights = result.raw_weights;
    }

    std::vector<MergedCandidate> merged;
    try {
        merged = merge_and_filter(result.m1, result.m2, instance, profile_.filter_threshold);
    } catch (const DataError&) {
        result.empty = true;
        result.empty_reason = "all candidates filtered";
        return result;
    }

    const std::array<SignalRanking, 4> rankings = {
        signal_embedding(merged, instance, backend_, config.alpha, freq_),
        signal_perplexity(merged, instance, backend_, freq_),
        signal_frequency(merged, freq_),
        signal_augmented(merged, freq_),
    };
    for (const auto& ranking : rankings)
        result.signal_ranks[signal_name(ranking.signal)] = ranking.ranks;
    result.final = fuse(rankings, config.weights);
    return result;
}

std::vector<TargetInstance> parse_instances_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("instances: cannot open " + path);
    std::vector<TargetInstance> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("instances: line " + std::to_string(lineno) +
                            ": expected sentence TAB word");
        TargetInstance inst;
        inst.sentence = line.substr(0, tab);
        const std::size_t tab2 = line.find('\t', tab + 1);
        inst.word = line.substr(tab + 1, tab2 - tab - 1);
        const auto span = find_word(inst.sentence, inst.word);
        if (!span)
            throw DataError("instances: line " + std::to_string(lineno) + ": target '" +
                            inst.word + "' not found in sentence");
        inst.span = *span;
        out.push_back(std::move(inst));
    }
    return out;
}

std::map<std::string, MetricReport> run_ablation(const Pipeline& pipeline,
                                                 const std::vector<TargetInstance>& instances,
                                                 const std::vector<GoldInstance>& golds,
                                                 const std::vector<AblationMode>& modes) {
    std::map<std::string, MetricReport> reports;
    for (const AblationMode mode : modes) {
        Pipeline variant = pipeline;
        Profile profile = pipeline.profile();
        profile.ablation = mode;
        variant.set_profile(profile);
        std::vector<Prediction> preds;
        preds.reserve(instances.size());
        for (const auto& instance : instances)
            preds.push_back(variant.simplify(instance).candidate_list());
        reports[ablation_name(mode)] = evaluate(preds, golds);
    }
    return reports;
}

}  // namespace lexsub
