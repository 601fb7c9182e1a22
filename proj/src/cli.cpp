#include "survboost/cli.hpp"

#include "survboost/errors.hpp"
#include "survboost/evaluation.hpp"
#include "survboost/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace survboost {

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

nlohmann::json load_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
}

// Temp-then-rename so a crash mid-write never leaves a torn output file.
void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw Error("cannot write output file: " + path);
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error("cannot move output into place: " + path + ": " + ec.message());
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_atomic(path, content);
}

ClinicalTable load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file: " + path);
    return parse_clinical_table(in);
}

// Flags override config-file values override defaults: a config key only
// lands when its flag was absent from the command line.
struct SubCtx {
    std::string config_path;
    struct Binding {
        std::string key;
        CLI::Option* opt;
        std::function<void(const nlohmann::json&)> apply;
    };
    std::vector<Binding> bindings;

    void add_config_flag(CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "Flat JSON config file; explicit flags take precedence");
    }

    template <class T>
    CLI::Option* bind(CLI::App* cmd, const std::string& flag, T& var, const std::string& key,
                      const std::string& desc) {
        CLI::Option* opt = cmd->add_option(flag, var, desc)->capture_default_str();
        bindings.push_back({key, opt, [&var](const nlohmann::json& v) { var = v.get<T>(); }});
        return opt;
    }

    void merge_config() const {
        if (config_path.empty()) return;
        const nlohmann::json cfg = load_json(config_path);
        if (!cfg.is_object()) throw InvalidSpec("config file must hold a flat JSON object");
        for (const auto& [key, value] : cfg.items()) {
            const auto it = std::find_if(bindings.begin(), bindings.end(),
                                         [&](const Binding& b) { return b.key == key; });
            if (it == bindings.end())
                throw InvalidSpec("unknown config key: " + key);
            if (it->opt->count() == 0) {
                try {
                    it->apply(value);
                } catch (const nlohmann::json::exception&) {
                    throw InvalidSpec("config key has the wrong type: " + key);
                }
            }
        }
    }
};

struct PreprocessOpts {
    int max_levels = 4;
    double drop_threshold = 0.99;

    void add_to(SubCtx& ctx, CLI::App* cmd) {
        ctx.bind(cmd, "--max-levels", max_levels, "max_levels",
                 "Maximum categories per attribute");
        ctx.bind(cmd, "--drop-frac", drop_threshold, "drop_threshold",
                 "Drop attributes whose modal value exceeds this observed fraction");
    }

    nlohmann::json echo() const {
        return {{"max_levels", max_levels}, {"drop_threshold", drop_threshold}};
    }
};

struct ModelOpts {
    std::string algorithm = "robustboost";
    int rounds_cap = 100;
    double target_error = 0.1;
    double goal_margin = 0.0;
    double final_sigma = 0.1;
    double tolerance = 1e-6;
    int max_depth = 3;
    double min_leaf_weight = 1.0;
    int max_surrogates = 5;
    std::vector<double> threshold_grid = SelfTrainConfig::default_grid();
    int cv_folds = 10;
    int iteration_cap = 0;

    void add_to(SubCtx& ctx, CLI::App* cmd) {
        ctx.bind(cmd, "--algorithm", algorithm, "algorithm", "robustboost or adaboost");
        ctx.bind(cmd, "--rounds", rounds_cap, "rounds_cap", "Boosting rounds cap");
        ctx.bind(cmd, "--target-error", target_error, "target_error",
                 "Robust booster target error in (0, 0.5)");
        ctx.bind(cmd, "--goal-margin", goal_margin, "goal_margin",
                 "Robust booster goal margin");
        ctx.bind(cmd, "--final-sigma", final_sigma, "final_sigma",
                 "Robust booster final weight width");
        ctx.bind(cmd, "--solver-tolerance", tolerance, "tolerance",
                 "Bisection tolerance for the per-round step solve");
        ctx.bind(cmd, "--max-depth", max_depth, "max_depth", "Weak learner depth cap");
        ctx.bind(cmd, "--min-leaf-weight", min_leaf_weight, "min_leaf_weight",
                 "Minimum leaf weight in sample-count units");
        ctx.bind(cmd, "--max-surrogates", max_surrogates, "max_surrogates",
                 "Surrogate splits kept per node");
        ctx.bind(cmd, "--confidence-grid", threshold_grid, "threshold_grid",
                 "Candidate confidence thresholds for self-training")
            ->delimiter(',');
        ctx.bind(cmd, "--selection-folds", cv_folds, "cv_folds",
                 "Folds for confidence-threshold selection");
        ctx.bind(cmd, "--iteration-cap", iteration_cap, "iteration_cap",
                 "Self-training iteration cap (0 = one pass per unlabeled sample)");
    }

    BoostConfig boost() const {
        BoostConfig cfg;
        cfg.algorithm = boost_algorithm_from_string(algorithm);
        cfg.rounds_cap = rounds_cap;
        cfg.target_error = target_error;
        cfg.goal_margin = goal_margin;
        cfg.final_sigma = final_sigma;
        cfg.tolerance = tolerance;
        cfg.validate();
        return cfg;
    }

    TreeConfig tree() const {
        TreeConfig cfg;
        cfg.max_depth = max_depth;
        cfg.min_leaf_weight = min_leaf_weight;
        cfg.max_surrogates = max_surrogates;
        if (cfg.max_depth < 1) throw InvalidSpec("max_depth must be at least 1");
        if (!(cfg.min_leaf_weight > 0.0)) throw InvalidSpec("min_leaf_weight must be positive");
        if (cfg.max_surrogates < 0) throw InvalidSpec("max_surrogates must be non-negative");
        return cfg;
    }

    SelfTrainConfig self(std::uint64_t seed) const {
        SelfTrainConfig cfg;
        cfg.threshold_grid = threshold_grid;
        cfg.cv_folds = cv_folds;
        cfg.iteration_cap = iteration_cap;
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }

    nlohmann::json echo(std::uint64_t seed) const {
        nlohmann::json j = to_json(boost());
        j.update(to_json(tree()));
        j.update(to_json(self(seed)));
        return j;
    }
};

struct PreparedData {
    ClinicalTable raw;
    PreprocessModel pm;
    ClinicalTable processed;
    SurvivalDataset ds;
};

PreparedData prepare(const std::string& input, double threshold_years,
                     const PreprocessOpts& popts) {
    PreparedData p;
    p.raw = load_table(input);
    p.pm = fit_preprocess(p.raw, popts.max_levels, popts.drop_threshold);
    p.processed = apply_preprocess(p.pm, p.raw);
    p.ds = assign_labels(p.processed, LabelingConfig{threshold_years});
    return p;
}

std::vector<double> default_suggest_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(0.5 * i);
    return grid;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    try {
        CLI::App app{"Survival classification from incomplete categorical clinical data"};
        app.name("survboost");
        app.require_subcommand(1);

        // --- preprocess ---------------------------------------------------
        SubCtx pre_ctx;
        std::string pre_in, pre_out, pre_out_csv;
        double pre_t = 5.0;
        PreprocessOpts pre_popts;
        std::uint64_t pre_seed = 1;
        auto* pre = app.add_subcommand(
            "preprocess", "Stratify attributes, drop near-constants, label and summarize");
        pre->add_option("input", pre_in, "Input CSV")->required();
        pre_ctx.bind(pre, "-T,--threshold", pre_t, "threshold_years",
                     "Survival threshold in years");
        pre_popts.add_to(pre_ctx, pre);
        pre_ctx.bind(pre, "-o,--output", pre_out, "output", "Summary JSON path (stdout if absent)");
        pre_ctx.bind(pre, "--out-csv", pre_out_csv, "output_csv", "Write the processed table here");
        pre_ctx.bind(pre, "--seed", pre_seed, "seed", "Unused; accepted for uniformity");
        pre_ctx.add_config_flag(pre);

        // --- suggest-threshold ---------------------------------------------
        SubCtx sug_ctx;
        std::string sug_in, sug_out;
        std::vector<double> sug_grid = default_suggest_grid();
        auto* sug = app.add_subcommand("suggest-threshold",
                                       "Pick the grid threshold with the most balanced labels");
        sug->add_option("input", sug_in, "Input CSV")->required();
        sug_ctx.bind(sug, "--grid", sug_grid, "grid", "Candidate thresholds in years")
            ->delimiter(',');
        sug_ctx.bind(sug, "-o,--output", sug_out, "output", "Output JSON path (stdout if absent)");
        sug_ctx.add_config_flag(sug);

        // --- train ----------------------------------------------------------
        SubCtx trn_ctx;
        std::string trn_in, trn_out, trn_trace, trn_mode = "supervised";
        double trn_t = 5.0;
        PreprocessOpts trn_popts;
        ModelOpts trn_mopts;
        std::uint64_t trn_seed = 1;
        auto* trn = app.add_subcommand("train", "Train a model and write it as JSON");
        trn->add_option("input", trn_in, "Input CSV")->required();
        trn_ctx.bind(trn, "-T,--threshold", trn_t, "threshold_years",
                     "Survival threshold in years");
        trn_ctx.bind(trn, "--mode", trn_mode, "mode", "supervised or semi_supervised");
        trn_popts.add_to(trn_ctx, trn);
        trn_mopts.add_to(trn_ctx, trn);
        trn_ctx.bind(trn, "-o,--output", trn_out, "output", "Model JSON path (stdout if absent)");
        trn_ctx.bind(trn, "--trace", trn_trace, "trace_output",
                     "Also write the self-training trace here");
        trn_ctx.bind(trn, "--seed", trn_seed, "seed", "Random seed");
        trn_ctx.add_config_flag(trn);

        // --- predict ---------------------------------------------------------
        SubCtx prd_ctx;
        std::string prd_in, prd_model, prd_out;
        auto* prd = app.add_subcommand("predict", "Score a CSV of samples with a trained model");
        prd->add_option("input", prd_in, "Input CSV (outcome columns optional)")->required();
        prd_ctx.bind(prd, "-m,--model", prd_model, "model", "Model JSON from train");
        prd_ctx.bind(prd, "-o,--output", prd_out, "output", "Scores CSV path (stdout if absent)");
        prd_ctx.add_config_flag(prd);

        // --- evaluate ----------------------------------------------------------
        SubCtx evl_ctx;
        std::string evl_in, evl_out, evl_csv, evl_mode = "compare";
        double evl_t = 5.0;
        int evl_folds = 5;
        PreprocessOpts evl_popts;
        ModelOpts evl_mopts;
        std::uint64_t evl_seed = 1;
        auto* evl = app.add_subcommand("evaluate",
                                       "Cross-validate supervised and/or semi-supervised training");
        evl->add_option("input", evl_in, "Input CSV")->required();
        evl_ctx.bind(evl, "-T,--threshold", evl_t, "threshold_years",
                     "Survival threshold in years");
        evl_ctx.bind(evl, "--mode", evl_mode, "mode", "supervised, semi_supervised, or compare");
        evl_ctx.bind(evl, "--folds", evl_folds, "folds", "Cross-validation folds");
        evl_popts.add_to(evl_ctx, evl);
        evl_mopts.add_to(evl_ctx, evl);
        evl_ctx.bind(evl, "-o,--output", evl_out, "output", "Report JSON path (stdout if absent)");
        evl_ctx.bind(evl, "--csv", evl_csv, "output_csv", "Also write a flat CSV report here");
        evl_ctx.bind(evl, "--seed", evl_seed, "seed", "Random seed");
        evl_ctx.add_config_flag(evl);

        // --- sweep ----------------------------------------------------------
        SubCtx swp_ctx;
        std::string swp_in, swp_out, swp_csv;
        std::vector<double> swp_grid;
        int swp_folds = 5;
        PreprocessOpts swp_popts;
        ModelOpts swp_mopts;
        std::uint64_t swp_seed = 1;
        auto* swp = app.add_subcommand("sweep",
                                       "Compare both modes across a grid of survival thresholds");
        swp->add_option("input", swp_in, "Input CSV")->required();
        swp_ctx.bind(swp, "--grid", swp_grid, "grid", "Survival thresholds in years")
            ->delimiter(',');
        swp_ctx.bind(swp, "--folds", swp_folds, "folds", "Cross-validation folds");
        swp_popts.add_to(swp_ctx, swp);
        swp_mopts.add_to(swp_ctx, swp);
        swp_ctx.bind(swp, "-o,--output", swp_out, "output", "Sweep JSON path (stdout if absent)");
        swp_ctx.bind(swp, "--csv", swp_csv, "output_csv", "Also write the sweep CSV here");
        swp_ctx.bind(swp, "--seed", swp_seed, "seed", "Random seed");
        swp_ctx.add_config_flag(swp);

        // --- importance -------------------------------------------------------
        SubCtx imp_ctx;
        std::string imp_in, imp_out, imp_csv, imp_mode = "supervised";
        double imp_t = 5.0;
        PreprocessOpts imp_popts;
        ModelOpts imp_mopts;
        std::uint64_t imp_seed = 1;
        auto* imp = app.add_subcommand("importance",
                                       "Train on the full dataset and rank attribute importances");
        imp->add_option("input", imp_in, "Input CSV")->required();
        imp_ctx.bind(imp, "-T,--threshold", imp_t, "threshold_years",
                     "Survival threshold in years");
        imp_ctx.bind(imp, "--mode", imp_mode, "mode", "supervised or semi_supervised");
        imp_popts.add_to(imp_ctx, imp);
        imp_mopts.add_to(imp_ctx, imp);
        imp_ctx.bind(imp, "-o,--output", imp_out, "output",
                     "Importances JSON path (stdout if absent)");
        imp_ctx.bind(imp, "--csv", imp_csv, "output_csv", "Also write attribute,importance CSV");
        imp_ctx.bind(imp, "--seed", imp_seed, "seed", "Random seed");
        imp_ctx.add_config_flag(imp);

        // --- synth ----------------------------------------------------------
        SubCtx syn_ctx;
        std::string syn_out, syn_meta;
        SyntheticSpec syn_spec;
        auto* syn = app.add_subcommand("synth", "Generate a synthetic censored cohort CSV");
        syn_ctx.bind(syn, "-o,--output", syn_out, "output", "Cohort CSV path");
        syn_ctx.bind(syn, "--meta", syn_meta, "meta",
                     "Sidecar JSON path (default: <output>.meta.json)");
        syn_ctx.bind(syn, "--rows", syn_spec.n_rows, "n_rows", "Number of rows");
        syn_ctx.bind(syn, "--informative", syn_spec.n_informative, "n_informative",
                     "Informative attributes");
        syn_ctx.bind(syn, "--noise-attrs", syn_spec.n_noise, "n_noise",
                     "Uninformative attributes");
        syn_ctx.bind(syn, "--separation", syn_spec.separation, "separation",
                     "Attribute informativeness (higher = cleaner)");
        syn_ctx.bind(syn, "--censoring", syn_spec.censoring_rate, "censoring_rate",
                     "Censoring probability per row");
        syn_ctx.bind(syn, "--missing", syn_spec.missing_rate, "missing_rate",
                     "MCAR missingness per attribute cell");
        syn_ctx.bind(syn, "--label-noise", syn_spec.label_noise, "label_noise",
                     "Rate of outcomes contradicting the latent risk");
        syn_ctx.bind(syn, "--base-days", syn_spec.base_days, "base_days",
                     "Survival scale at average risk");
        syn_ctx.bind(syn, "--family", syn_spec.survival_family, "survival_family",
                     "Survival distribution: exponential or lognormal");
        syn_ctx.bind(syn, "--day-sigma", syn_spec.day_sigma, "day_sigma",
                     "Lognormal day spread");
        syn_ctx.bind(syn, "--seed", syn_spec.seed, "seed", "Random seed");
        syn_ctx.add_config_flag(syn);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }

        if (app.got_subcommand(pre)) {
            pre_ctx.merge_config();
            const ClinicalTable table = load_table(pre_in);
            const ClinicalTable processed =
                drop_near_constant(stratify_attributes(table, pre_popts.max_levels),
                                   pre_popts.drop_threshold);
            const SurvivalDataset ds = assign_labels(processed, LabelingConfig{pre_t});
            nlohmann::json out = to_json(summarize_dataset(ds, table));
            out["config"] = pre_popts.echo();
            out["config"]["input"] = pre_in;
            out["config"]["threshold_years"] = pre_t;
            emit(pre_out, dump_json(out));
            if (!pre_out_csv.empty())
                emit(pre_out_csv, write_csv_string(to_csv(processed)));
            return 0;
        }

        if (app.got_subcommand(sug)) {
            sug_ctx.merge_config();
            const ClinicalTable table = load_table(sug_in);
            const double suggested = suggest_balanced_threshold(table, sug_grid);
            nlohmann::json out{{"suggested_threshold", suggested},
                               {"config", nlohmann::json{{"input", sug_in}, {"grid", sug_grid}}}};
            emit(sug_out, dump_json(out));
            return 0;
        }

        if (app.got_subcommand(trn)) {
            trn_ctx.merge_config();
            const TrainMode mode = train_mode_from_string(trn_mode);
            const PreparedData p = prepare(trn_in, trn_t, trn_popts);
            const TrainResult res = train_model(p.ds, mode, trn_mopts.self(trn_seed),
                                                trn_mopts.boost(), trn_mopts.tree(), trn_seed);
            nlohmann::json config = trn_mopts.echo(trn_seed);
            config.update(trn_popts.echo());
            config["input"] = trn_in;
            config["mode"] = trn_mode;
            config["threshold_years"] = trn_t;
            nlohmann::json model{{"format", "survboost-model"},
                                 {"version", 1},
                                 {"config", std::move(config)},
                                 {"threshold_years", trn_t},
                                 {"preprocess", to_json(p.pm)},
                                 {"ensemble", to_json(res.model)},
                                 {"self_train_trace",
                                  res.trace ? to_json(*res.trace) : nlohmann::json()}};
            emit(trn_out, dump_json(model));
            if (!trn_trace.empty() && res.trace)
                emit(trn_trace, dump_json(to_json(*res.trace)));
            return 0;
        }

        if (app.got_subcommand(prd)) {
            prd_ctx.merge_config();
            if (prd_model.empty()) throw InvalidSpec("predict needs --model");
            const nlohmann::json mj = load_json(prd_model);
            if (!mj.contains("preprocess") || !mj.contains("ensemble"))
                throw InvalidSpec("not a model file: " + prd_model);
            const PreprocessModel pm = preprocess_model_from_json(mj.at("preprocess"));
            const Ensemble ens = ensemble_from_json(mj.at("ensemble"));
            std::ifstream fin(prd_in, std::ios::binary);
            if (!fin) throw InputError("cannot open input file: " + prd_in);
            const ClinicalTable table = parse_feature_table(fin);
            const ClinicalTable processed = apply_preprocess(pm, table);
            const std::vector<Sample> samples = extract_samples(processed);

            CsvDocument doc;
            doc.header = {"patient_id", "score", "predicted_label", "confidence"};
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const double score = score_sample(ens, samples[i]);
                const std::string id =
                    table.has_row_ids ? table.row_ids[i] : std::to_string(i + 1);
                doc.rows.push_back(
                    {id, fmt(score), score >= 0.0 ? "1" : "-1", fmt(std::abs(score))});
            }
            emit(prd_out, write_csv_string(doc));
            return 0;
        }

        if (app.got_subcommand(evl)) {
            evl_ctx.merge_config();
            const PreparedData p = prepare(evl_in, evl_t, evl_popts);
            std::vector<TrainMode> modes;
            if (evl_mode == "compare")
                modes = {TrainMode::supervised, TrainMode::semi_supervised};
            else
                modes = {train_mode_from_string(evl_mode)};

            std::vector<EvaluationReport> reports;
            for (TrainMode m : modes)
                reports.push_back(cross_validate(p.ds, m, evl_folds, evl_mopts.self(evl_seed),
                                                 evl_mopts.boost(), evl_mopts.tree(), evl_seed));

            nlohmann::json config = evl_mopts.echo(evl_seed);
            config.update(evl_popts.echo());
            config["input"] = evl_in;
            config["mode"] = evl_mode;
            config["threshold_years"] = evl_t;
            config["folds"] = evl_folds;
            nlohmann::json out{{"config", std::move(config)}};
            for (const auto& r : reports) out["reports"][to_string(r.mode)] = to_json(r);
            emit(evl_out, dump_json(out));
            if (!evl_csv.empty()) emit(evl_csv, reports_to_csv(reports));
            return 0;
        }

        if (app.got_subcommand(swp)) {
            swp_ctx.merge_config();
            const ClinicalTable table = load_table(swp_in);
            const PreprocessModel pm =
                fit_preprocess(table, swp_popts.max_levels, swp_popts.drop_threshold);
            const ClinicalTable processed = apply_preprocess(pm, table);
            const auto rows =
                survival_threshold_sweep(processed, swp_grid, swp_folds, swp_mopts.self(swp_seed),
                                         swp_mopts.boost(), swp_mopts.tree(), swp_seed);
            nlohmann::json config = swp_mopts.echo(swp_seed);
            config.update(swp_popts.echo());
            config["input"] = swp_in;
            config["grid"] = swp_grid;
            config["folds"] = swp_folds;
            nlohmann::json out{{"config", std::move(config)}, {"rows", to_json(rows)}};
            emit(swp_out, dump_json(out));
            if (!swp_csv.empty()) emit(swp_csv, sweep_to_csv(rows));
            return 0;
        }

        if (app.got_subcommand(imp)) {
            imp_ctx.merge_config();
            const TrainMode mode = train_mode_from_string(imp_mode);
            const PreparedData p = prepare(imp_in, imp_t, imp_popts);
            const TrainResult res = train_model(p.ds, mode, imp_mopts.self(imp_seed),
                                                imp_mopts.boost(), imp_mopts.tree(), imp_seed);
            const std::vector<double> imps = ensemble_importances(res.model);

            std::vector<std::size_t> order(imps.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return imps[a] > imps[b]; });

            nlohmann::json ranked = nlohmann::json::array();
            CsvDocument doc;
            doc.header = {"attribute", "importance"};
            for (std::size_t a : order) {
                ranked.push_back(nlohmann::json{{"attribute", p.ds.schema[a].name},
                                                {"importance", imps[a]}});
                doc.rows.push_back({p.ds.schema[a].name, fmt(imps[a])});
            }
            nlohmann::json config = imp_mopts.echo(imp_seed);
            config.update(imp_popts.echo());
            config["input"] = imp_in;
            config["mode"] = imp_mode;
            config["threshold_years"] = imp_t;
            nlohmann::json out{{"config", std::move(config)}, {"importances", std::move(ranked)}};
            emit(imp_out, dump_json(out));
            if (!imp_csv.empty()) emit(imp_csv, write_csv_string(doc));
            return 0;
        }

        if (app.got_subcommand(syn)) {
            syn_ctx.merge_config();
            if (syn_out.empty()) throw InvalidSpec("synth needs an output path");
            const SyntheticCohort cohort = generate_synthetic(syn_spec);
            emit(syn_out, write_csv_string(to_csv(cohort.table)));
            const std::string meta_path =
                syn_meta.empty() ? syn_out + ".meta.json" : syn_meta;
            emit(meta_path, dump_json(cohort.meta));
            return 0;
        }

        return 2;  // unreachable: a subcommand is required
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.push_back("survboost");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace survboost
