// lexsub: unsupervised lexical simplification with context augmentation.
//
// Subcommands: build-index, simplify, evaluate, ablate, ensemble, grid,
// export-swords. Exit codes: 0 success, 2 usage, 3 data error, 4 backend
// error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "lexsub/errors.hpp"
#include "lexsub/pipeline.hpp"
#include "lexsub/stub_backend.hpp"
#include "lexsub/util.hpp"

using namespace lexsub;

namespace {

struct CommonOpts {
    std::string profile_name = "en";
    std::string config_path;
    std::string backend_name = "stub";
    std::string fixture_path;
    std::string freq_table_path;
    std::string ablation;
    std::optional<std::uint64_t> seed;
    std::optional<int> k, m1, m2;
    std::optional<double> alpha;
    std::string weights_csv;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--profile", opts.profile_name, "Profile name (en, pt, es, en-sub, stub)");
    cmd->add_option("--config", opts.config_path, "JSON config file with named profiles");
    cmd->add_option("--backend", opts.backend_name, "Model backend (stub)");
    cmd->add_option("--fixture", opts.fixture_path, "Stub backend fixture file");
    cmd->add_option("--freq-table", opts.freq_table_path, "Zipf frequency table (word TAB freq)");
    cmd->add_option("--ablation", opts.ablation, "Cluster retrieval: soft|hard|none");
    cmd->add_option("--seed", opts.seed, "Override profile seed");
    cmd->add_option("--k", opts.k, "Override cluster count K");
    cmd->add_option("--m1", opts.m1, "Override M1");
    cmd->add_option("--m2", opts.m2, "Override M2");
    cmd->add_option("--alpha", opts.alpha, "Override static-correction weight");
    cmd->add_option("--weights", opts.weights_csv, "Override rank weights r1,r2,r3,r4");
}

Profile resolve_profile(const CommonOpts& opts) {
    Profile p = opts.config_path.empty()
                    ? Profile::builtin(opts.profile_name)
                    : Profile::from_config_file(opts.config_path, opts.profile_name);
    if (!opts.ablation.empty()) p.ablation = parse_ablation(opts.ablation);
    if (opts.seed) p.seed = *opts.seed;
    if (opts.k) p.k = *opts.k;
    if (opts.m1) p.m1 = *opts.m1;
    if (opts.m2) p.m2 = *opts.m2;
    if (opts.alpha) p.alpha = *opts.alpha;
    if (!opts.weights_csv.empty()) {
        std::istringstream in(opts.weights_csv);
        std::vector<double> w;
        std::string part;
        while (std::getline(in, part, ',')) w.push_back(std::stod(part));
        if (w.size() != 4) throw UsageError("--weights expects r1,r2,r3,r4");
        p.weights = {w[0], w[1], w[2], w[3]};
    }
    return p;
}

std::unique_ptr<ModelBackend> make_backend(const CommonOpts& opts) {
    if (opts.backend_name == "stub") {
        if (opts.fixture_path.empty())
            throw UsageError("--backend stub requires --fixture PATH");
        return std::make_unique<StubBackend>(StubFixture::from_file(opts.fixture_path));
    }
    throw UsageError("unknown backend '" + opts.backend_name +
                     "' (only 'stub' is available in this build)");
}

FreqTable load_freq(const CommonOpts& opts) {
    if (opts.freq_table_path.empty()) return {};
    return FreqTable::from_file(opts.freq_table_path);
}

void write_or_stdout(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsupervised lexical simplification with context augmentation"};
    app.require_subcommand(1);

    // build-index
    auto* build = app.add_subcommand("build-index", "Build a decontextualised embedding index");
    CommonOpts build_opts;
    std::string corpus_path, out_path;
    std::optional<int> vocab_size;
    build->add_option("--corpus", corpus_path, "Corpus file, one sentence per line")->required();
    build->add_option("--out", out_path, "Output index path")->required();
    build->add_option("--vocab-size", vocab_size, "Override vocabulary size");
    add_common(build, build_opts);

    // simplify
    auto* simplify = app.add_subcommand("simplify", "Generate ranked substitutes");
    CommonOpts simp_opts;
    std::string simp_index, simp_input, simp_sentence, simp_word, simp_out, simp_ranking_out;
    simplify->add_option("--index", simp_index, "Decontextualised index path")->required();
    simplify->add_option("--input", simp_input, "Instances file: sentence TAB word");
    simplify->add_option("--sentence", simp_sentence, "Single-instance sentence");
    simplify->add_option("--word", simp_word, "Single-instance target word");
    simplify->add_option("--out", simp_out, "JSON-lines output (default stdout)");
    simplify->add_option("--ranking-out", simp_ranking_out, "Also write a TSV ranking file");
    add_common(simplify, simp_opts);

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a ranking file against gold");
    std::string eval_pred, eval_gold;
    bool eval_json = false;
    evaluate_cmd->add_option("--pred", eval_pred, "Ranking file: id TAB candidates...")->required();
    evaluate_cmd->add_option("--gold", eval_gold, "TSAR TSV gold file")->required();
    evaluate_cmd->add_flag("--json", eval_json, "Emit machine-readable JSON");

    // ablate
    auto* ablate = app.add_subcommand("ablate", "Compare soft/hard/none cluster retrieval");
    CommonOpts abl_opts;
    std::string abl_index, abl_gold, abl_modes = "soft,hard,none";
    ablate->add_option("--index", abl_index, "Decontextualised index path")->required();
    ablate->add_option("--gold", abl_gold, "TSAR TSV gold file (also provides instances)")->required();
    ablate->add_option("--modes", abl_modes, "Comma-separated mode list");
    add_common(ablate, abl_opts);

    // ensemble
    auto* ens = app.add_subcommand("ensemble", "Rank-sum combination of ranking files");
    std::vector<std::string> ens_files;
    std::string ens_out;
    ens->add_option("--rankings", ens_files, "Ranking files to combine")->required()->expected(-1);
    ens->add_option("--out", ens_out, "Output ranking file (default stdout)");

    // grid
    auto* grid = app.add_subcommand("grid", "Evaluate a grid of fusion weight vectors");
    CommonOpts grid_opts;
    std::string grid_index, grid_gold, grid_weights;
    grid->add_option("--index", grid_index, "Decontextualised index path")->required();
    grid->add_option("--gold", grid_gold, "TSAR TSV gold file (also provides instances)")->required();
    grid->add_option("--weights-grid", grid_weights,
                     "Semicolon-separated weight vectors, e.g. '5,1,1,1;3,1,0,3'")->required();
    add_common(grid, grid_opts);

    // export-swords
    auto* swords = app.add_subcommand("export-swords",
                                      "Top-50 substitution export for the external scorer");
    CommonOpts sw_opts;
    std::string sw_index, sw_input, sw_out;
    swords->add_option("--index", sw_index, "Decontextualised index path")->required();
    swords->add_option("--input", sw_input, "Instances file: sentence TAB word")->required();
    swords->add_option("--out", sw_out, "Output file (default stdout)");
    sw_opts.profile_name = "en-sub";
    add_common(swords, sw_opts);

    try {
        app.parse(argc, argv);

        if (*build) {
            const Profile profile = resolve_profile(build_opts);
            const auto backend = make_backend(build_opts);
            const CorpusStore store = CorpusStore::ingest_file(corpus_path);
            const int vsize = vocab_size.value_or(profile.vocab_size);
            const Vocabulary vocab = store.top_vocabulary(static_cast<std::size_t>(vsize));
            const DecontextIndex index =
                build_index(vocab, store, *backend, profile.k, profile.sample_n, profile.seed);
            index.save(out_path);
            // Augmentation at simplify time re-samples the corpus, so a
            // snapshot travels with the index.
            store.save(out_path + ".corpus");
            std::cerr << "index: " << index.entries.size() << " entries -> " << out_path
                      << '\n';
        } else if (*simplify) {
            const Profile profile = resolve_profile(simp_opts);
            const auto backend = make_backend(simp_opts);
            const DecontextIndex index = DecontextIndex::load(simp_index, backend->id());
            const CorpusStore store = CorpusStore::load(simp_index + ".corpus");
            const Pipeline pipeline(*backend, store, index, load_freq(simp_opts), profile);

            std::vector<TargetInstance> instances;
            if (!simp_input.empty()) {
                instances = parse_instances_file(simp_input);
            } else if (!simp_sentence.empty() && !simp_word.empty()) {
                const auto span = find_word(simp_sentence, simp_word);
                if (!span) throw DataError("target word not found in --sentence");
                instances.push_back({simp_sentence, simp_word, *span});
            } else {
                throw UsageError("simplify needs --input or --sentence/--word");
            }

            std::ostringstream json_lines;
            std::vector<Prediction> preds;
            for (const auto& instance : instances) {
                const SimplifyResult result = pipeline.simplify(instance);
                json_lines << result.to_json_text() << '\n';
                preds.push_back(result.candidate_list());
            }
            write_or_stdout(simp_out, json_lines.str());
            if (!simp_ranking_out.empty()) {
                std::ofstream out(simp_ranking_out);
                if (!out) throw DataError("cannot open " + simp_ranking_out);
                write_ranking_file(out, preds);
            }
        } else if (*evaluate_cmd) {
            const auto golds = parse_tsar_file(eval_gold);
            const ExternalRanking pred = parse_ranking_file(eval_pred);
            const MetricReport report = evaluate(pred.rankings, golds);
            std::cout << (eval_json ? report.to_json_text() + "\n" : report.to_table());
        } else if (*ablate) {
            const Profile profile = resolve_profile(abl_opts);
            const auto backend = make_backend(abl_opts);
            const DecontextIndex index = DecontextIndex::load(abl_index, backend->id());
            const CorpusStore store = CorpusStore::load(abl_index + ".corpus");
            const Pipeline pipeline(*backend, store, index, load_freq(abl_opts), profile);
            const auto golds = parse_tsar_file(abl_gold);
            std::vector<TargetInstance> instances;
            for (const auto& gold : golds) {
                const auto span = find_word(gold.sentence, gold.target);
                if (!span) throw DataError("gold target not found in sentence");
                instances.push_back({gold.sentence, gold.target, *span});
            }
            std::vector<AblationMode> modes;
            std::istringstream mode_in(abl_modes);
            std::string mode;
            while (std::getline(mode_in, mode, ',')) modes.push_back(parse_ablation(mode));
            for (const auto& [name, report] : run_ablation(pipeline, instances, golds, modes))
                std::cout << "[" << name << "]\n" << report.to_table() << '\n';
        } else if (*ens) {
            std::vector<ExternalRanking> systems;
            for (const auto& path : ens_files) systems.push_back(parse_ranking_file(path));
            const auto combined = ensemble(systems);
            std::ostringstream out;
            write_ranking_file(out, combined);
            write_or_stdout(ens_out, out.str());
        } else if (*grid) {
            const Profile base = resolve_profile(grid_opts);
            const auto backend = make_backend(grid_opts);
            const DecontextIndex index = DecontextIndex::load(grid_index, backend->id());
            const CorpusStore store = CorpusStore::load(grid_index + ".corpus");
            const auto golds = parse_tsar_file(grid_gold);
            std::vector<TargetInstance> instances;
            for (const auto& gold : golds) {
                const auto span = find_word(gold.sentence, gold.target);
                if (!span) throw DataError("gold target not found in sentence");
                instances.push_back({gold.sentence, gold.target, *span});
            }
            std::istringstream vectors(grid_weights);
            std::string vec;
            while (std::getline(vectors, vec, ';')) {
                std::istringstream parts(vec);
                std::vector<double> w;
                std::string part;
                while (std::getline(parts, part, ',')) w.push_back(std::stod(part));
                if (w.size() != 4) throw UsageError("each grid vector needs 4 weights");
                Profile profile = base;
                profile.weights = {w[0], w[1], w[2], w[3]};
                const Pipeline pipeline(*backend, store, index, load_freq(grid_opts), profile);
                std::vector<Prediction> preds;
                for (const auto& instance : instances)
                    preds.push_back(pipeline.simplify(instance).candidate_list());
                std::cout << "[weights " << vec << "]\n"
                          << evaluate(preds, golds).to_table() << '\n';
            }
        } else if (*swords) {
            const Profile profile = resolve_profile(sw_opts);
            const auto backend = make_backend(sw_opts);
            const DecontextIndex index = DecontextIndex::load(sw_index, backend->id());
            const CorpusStore store = CorpusStore::load(sw_index + ".corpus");
            const Pipeline pipeline(*backend, store, index, load_freq(sw_opts), profile);
            std::vector<Prediction> preds;
            for (const auto& instance : parse_instances_file(sw_input))
                preds.push_back(pipeline.simplify(instance).candidate_list());
            std::ostringstream out;
            export_swords(preds, out);
            write_or_stdout(sw_out, out.str());
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << '\n';
        return 4;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
