#include "lexsub/evaluator.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

using nlohmann::json;

std::string GoldInstance::top1_label() const {
    std::string best;
    int best_count = -1;
    for (const auto& [word, count] : gold) {
        if (count > best_count || (count == best_count && word < best)) {
            best = word;
            best_count = count;
        }
    }
    return best;
}

bool GoldInstance::contains(const std::string& candidate) const {
    return gold.count(fold_case(candidate)) != 0;
}

namespace {

void check_aligned(const std::vector<Prediction>& preds,
                   const std::vector<GoldInstance>& golds) {
    if (preds.size() != golds.size())
        throw DataError("evaluate: prediction/gold instance count mismatch (" +
                        std::to_string(preds.size()) + " vs " +
                        std::to_string(golds.size()) + ")");
    if (golds.empty()) throw DataError("evaluate: empty evaluation set");
}

}  // namespace

double accuracy_at_1(const std::vector<Prediction>& preds,
                     const std::vector<GoldInstance>& golds) {
    check_aligned(preds, golds);
    double hits = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (!preds[i].empty() && golds[i].contains(preds[i].front())) hits += 1.0;
    }
    return hits / static_cast<double>(golds.size());
}

double accuracy_at_k_top1(const std::vector<Prediction>& preds,
                          const std::vector<GoldInstance>& golds, int k) {
    check_aligned(preds, golds);
    double hits = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const std::string top1 = golds[i].top1_label();
        const std::size_t limit =
            std::min(preds[i].size(), static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < limit; ++j) {
            if (fold_case(preds[i][j]) == top1) {
                hits += 1.0;
                break;
            }
        }
    }
    return hits / static_cast<double>(golds.size());
}

double potential_at_k(const std::vector<Prediction>& preds,
                      const std::vector<GoldInstance>& golds, int k) {
    check_aligned(preds, golds);
    double hits = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const std::size_t limit =
            std::min(preds[i].size(), static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < limit; ++j) {
            if (golds[i].contains(preds[i][j])) {
                hits += 1.0;
                break;
            }
        }
    }
    return hits / static_cast<double>(golds.size());
}

double map_at_k(const std::vector<Prediction>& preds,
                const std::vector<GoldInstance>& golds, int k) {
    check_aligned(preds, golds);
    double total = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const std::size_t limit =
            std::min(preds[i].size(), static_cast<std::size_t>(k));
        double ap = 0.0;
        int relevant = 0;
        for (std::size_t j = 0; j < limit; ++j) {
            if (golds[i].contains(preds[i][j])) {
                ++relevant;
                ap += static_cast<double>(relevant) / static_cast<double>(j + 1);
            }
        }
        total += ap / static_cast<double>(k);
    }
    return total / static_cast<double>(golds.size());
}

MetricReport evaluate(const std::vector<Prediction>& preds,
                      const std::vector<GoldInstance>& golds) {
    MetricReport report;
    report.n_instances = golds.size();
    report.acc_at_1 = accuracy_at_1(preds, golds);
    for (int k : {1, 2, 3}) report.acc_at_k_top1[k] = accuracy_at_k_top1(preds, golds, k);
    for (int k : {3, 5, 10}) {
        report.map_at_k[k] = map_at_k(preds, golds, k);
        report.potential_at_k[k] = potential_at_k(preds, golds, k);
    }
    return report;
}

std::string MetricReport::to_table() const {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    out << "instances: " << n_instances << '\n';
    out << "ACC@1: " << acc_at_1 << '\n';
    for (const auto& [k, v] : acc_at_k_top1) out << "ACC@" << k << "@Top1: " << v << '\n';
    for (const auto& [k, v] : map_at_k) out << "MAP@" << k << ": " << v << '\n';
    for (const auto& [k, v] : potential_at_k) out << "Potential@" << k << ": " << v << '\n';
    return out.str();
}

std::string MetricReport::to_json_text() const {
    json j = {{"n_instances", n_instances},
              {"acc_at_1", acc_at_1},
              {"acc_at_k_top1", json::object()},
              {"map_at_k", json::object()},
              {"potential_at_k", json::object()}};
    for (const auto& [k, v] : acc_at_k_top1) j["acc_at_k_top1"][std::to_string(k)] = v;
    for (const auto& [k, v] : map_at_k) j["map_at_k"][std::to_string(k)] = v;
    for (const auto& [k, v] : potential_at_k) j["potential_at_k"][std::to_string(k)] = v;
    return j.dump();
}

std::vector<Prediction> ensemble(const std::vector<ExternalRanking>& systems) {
    if (systems.empty()) throw UsageError("ensemble: no ranking systems");
    const std::size_t n = systems.front().rankings.size();
    for (const auto& sys : systems) {
        if (sys.rankings.size() != n)
            throw DataError("ensemble: instance misalignment for system '" +
                            sys.system_id + "'");
    }
    std::vector<Prediction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::string> pool;
        for (const auto& sys : systems) {
            for (const auto& cand : sys.rankings[i]) pool.insert(fold_case(cand));
        }
        std::vector<std::pair<std::string, long long>> sums;
        for (const auto& cand : pool) {
            long long sum = 0;
            for (const auto& sys : systems) {
                const auto& ranking = sys.rankings[i];
                long long rank = static_cast<long long>(ranking.size()) + 1;
                for (std::size_t j = 0; j < ranking.size(); ++j) {
                    if (fold_case(ranking[j]) == cand) {
                        rank = static_cast<long long>(j) + 1;
                        break;
                    }
                }
                sum += rank;
            }
            sums.emplace_back(cand, sum);
        }
        std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second < b.second;
            return a.first < b.first;
        });
        Prediction pred;
        for (auto& [cand, sum] : sums) pred.push_back(cand);
        out.push_back(std::move(pred));
    }
    return out;
}

std::vector<GoldInstance> parse_tsar_tsv(std::istream& in) {
    std::vector<GoldInstance> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        while (!cols.empty() && cols.back().empty()) cols.pop_back();
        if (cols.size() < 3)
            throw DataError("TSAR TSV: line " + std::to_string(lineno) +
                            ": expected >= 3 columns, got " + std::to_string(cols.size()));
        GoldInstance inst;
        inst.sentence = cols[0];
        inst.target = cols[1];
        for (std::size_t i = 2; i < cols.size(); ++i) ++inst.gold[fold_case(cols[i])];
        out.push_back(std::move(inst));
    }
    if (in.bad()) throw DataError("TSAR TSV: stream read failure");
    return out;
}

std::vector<GoldInstance> parse_tsar_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("TSAR TSV: cannot open " + path);
    return parse_tsar_tsv(in);
}

ExternalRanking parse_ranking_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("ranking file: cannot open " + path);
    ExternalRanking out;
    out.system_id = path;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty()) continue;
        Prediction pred;
        std::size_t start = line.find('\t');  // first column is the instance id
        while (start != std::string::npos) {
            const std::size_t tab = line.find('\t', start + 1);
            std::string cand = line.substr(start + 1, tab - start - 1);
            if (!cand.empty()) pred.push_back(std::move(cand));
            start = tab;
        }
        out.rankings.push_back(std::move(pred));
    }
    return out;
}

void write_ranking_file(std::ostream& out, const std::vector<Prediction>& preds) {
    for (std::size_t i = 0; i < preds.size(); ++i) {
        out << i;
        for (const auto& cand : preds[i]) out << '\t' << cand;
        out << '\n';
    }
}

void export_swords(const std::vector<Prediction>& preds, std::ostream& out,
                   std::size_t top_n) {
    for (std::size_t i = 0; i < preds.size(); ++i) {
        out << i;
        const std::size_t limit = std::min(preds[i].size(), top_n);
        for (std::size_t j = 0; j < limit; ++j) out << '\t' << preds[i][j];
        out << '\n';
    }
}

}  // namespace lexsub
