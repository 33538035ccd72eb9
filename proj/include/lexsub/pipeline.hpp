#pragma once

#include <map>
#include <string>
#include <vector>

#include "lexsub/candidate_augment.hpp"
#include "lexsub/candidate_target.hpp"
#include "lexsub/corpus_store.hpp"
#include "lexsub/embedding_index.hpp"
#include "lexsub/evaluator.hpp"
#include "lexsub/freq_table.hpp"
#include "lexsub/model_backend.hpp"
#include "lexsub/profile.hpp"
#include "lexsub/reranker.hpp"

namespace lexsub {

/// Full provenance for one simplified instance.
struct SimplifyResult {
    TargetInstance instance;
    std::vector<ScoredCandidate> m1;
    ClusterGenerationTable table;
    ClusterWeights raw_weights;   // before ablation
    ClusterWeights weights;       // after ablation
    AblationMode mode = AblationMode::soft;
    std::vector<ScoredCandidate> m2;
    std::map<std::string, std::map<std::string, int>> signal_ranks;
    FinalRanking final;
    bool empty = false;
    std::string empty_reason;

    Prediction candidate_list() const;
    std::string to_json_text() const;
};

/// End-to-end §2 pipeline over a fixed backend/store/index/profile.
/// Stateless per call; instances may be processed concurrently.
class Pipeline {
  public:
    Pipeline(const ModelBackend& backend, const CorpusStore& store,
             const DecontextIndex& index, FreqTable freq, Profile profile);

    SimplifyResult simplify(const TargetInstance& instance) const;

    /// Resolves the target span (first occurrence) and runs simplify.
    SimplifyResult simplify(const std::string& sentence, const std::string& word) const;

    const Profile& profile() const { return profile_; }
    void set_profile(Profile p) { profile_ = std::move(p); }

  private:
    const ModelBackend& backend_;
    const CorpusStore& store_;
    const DecontextIndex& index_;
    FreqTable freq_;
    Profile profile_;
};

/// Reads instances "sentence TAB word" (extra columns ignored, so a TSAR
/// gold file works directly).
std::vector<TargetInstance> parse_instances_file(const std::string& path);

/// Same pipeline under each ablation mode, scored against gold.
std::map<std::string, MetricReport> run_ablation(const Pipeline& pipeline,
                                                 const std::vector<TargetInstance>& instances,
                                                 const std::vector<GoldInstance>& golds,
                                                 const std::vector<AblationMode>& modes);

}  // namespace lexsub
