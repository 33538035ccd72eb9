#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lexsub/types.hpp"

namespace lexsub {

/// One gold-annotated instance. Gold substitutes carry annotator counts
/// (duplicates in the TSV encode counts).
struct GoldInstance {
    std::string sentence;
    std::string target;
    std::map<std::string, int> gold;  // folded substitute -> annotator count

    /// Gold substitute with the highest annotator count; ties broken
    /// lexicographically.
    std::string top1_label() const;
    bool contains(const std::string& candidate) const;
};

struct MetricReport {
    double acc_at_1 = 0.0;
    std::map<int, double> acc_at_k_top1;  // k = 1, 2, 3
    std::map<int, double> map_at_k;       // k = 3, 5, 10
    std::map<int, double> potential_at_k; // k = 3, 5, 10
    std::size_t n_instances = 0;

    std::string to_table() const;
    std::string to_json_text() const;
};

using Prediction = std::vector<std::string>;  // ranked candidates, best first

struct ExternalRanking {
    std::string system_id;
    std::vector<Prediction> rankings;  // aligned with the evaluation set by position
};

// ---- metrics (TSAR definitions) ---------------------------------------

double accuracy_at_1(const std::vector<Prediction>& preds,
                     const std::vector<GoldInstance>& golds);
double accuracy_at_k_top1(const std::vector<Prediction>& preds,
                          const std::vector<GoldInstance>& golds, int k);
double potential_at_k(const std::vector<Prediction>& preds,
                      const std::vector<GoldInstance>& golds, int k);
/// AP@k = (1/k) * sum_i rel(i) * precision@i, over available predictions.
double map_at_k(const std::vector<Prediction>& preds,
                const std::vector<GoldInstance>& golds, int k);

MetricReport evaluate(const std::vector<Prediction>& preds,
                      const std::vector<GoldInstance>& golds);

// ---- ensembling --------------------------------------------------------

/// Unweighted rank-sum (Borda-style) combination per instance. Candidates
/// missing from a ranking are imputed rank |that ranking| + 1. Ascending
/// sort, ties lexicographic.
std::vector<Prediction> ensemble(const std::vector<ExternalRanking>& systems);

// ---- I/O ----------------------------------------------------------------

/// TSAR TSV: sentence TAB target TAB gold1 TAB gold2 ... (>= 3 columns;
/// duplicates encode annotator counts; trailing whitespace tolerated).
std::vector<GoldInstance> parse_tsar_tsv(std::istream& in);
std::vector<GoldInstance> parse_tsar_file(const std::string& path);

/// Ranking file: one instance per line, id TAB candidate1 TAB candidate2 ...
ExternalRanking parse_ranking_file(const std::string& path);
void write_ranking_file(std::ostream& out, const std::vector<Prediction>& preds);

/// SWORDS interchange export: top `top_n` candidates per instance,
/// id TAB candidate1 TAB ... (same line format as ranking files).
void export_swords(const std::vector<Prediction>& preds, std::ostream& out,
                   std::size_t top_n = 50);

}  // namespace lexsub
