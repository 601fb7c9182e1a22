#include "survboost/self_training.hpp"

#include "survboost/errors.hpp"
#include "survboost/folds.hpp"
#include "survboost/rng.hpp"

#include <algorithm>
#include <cmath>

namespace survboost {

namespace {

void split_classes(std::span<const Sample> labeled, std::vector<int>& pos, std::vector<int>& neg) {
    for (std::size_t i = 0; i < labeled.size(); ++i)
        (labeled[i].y() > 0 ? pos : neg).push_back(static_cast<int>(i));
    if (pos.empty() || neg.empty())
        throw SingleClassInput("labeled pool must contain both classes");
}

double holdout_accuracy(const Ensemble& model, std::span<const Sample> labeled,
                        const std::vector<int>& holdout) {
    int correct = 0;
    for (int i : holdout)
        if (predict_label(model, labeled[static_cast<std::size_t>(i)]) ==
            labeled[static_cast<std::size_t>(i)].y())
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(holdout.size());
}

} // namespace

std::vector<double> SelfTrainConfig::default_grid() {
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(0.50 + 0.05 * i);
    return grid;
}

void SelfTrainConfig::validate() const {
    if (threshold_grid.empty())
        throw InvalidSpec("threshold grid must be non-empty");
    for (std::size_t i = 0; i < threshold_grid.size(); ++i) {
        if (!(threshold_grid[i] >= 0.0 && threshold_grid[i] < 1.0))
            throw InvalidSpec("threshold grid values must lie in [0, 1)");
        if (i > 0 && !(threshold_grid[i] > threshold_grid[i - 1]))
            throw InvalidSpec("threshold grid must be strictly ascending");
    }
    if (cv_folds < 2) throw InvalidSpec("cv_folds must be at least 2");
    if (iteration_cap < 0) throw InvalidSpec("iteration_cap must be non-negative");
}

std::string to_string(TrainMode m) {
    return m == TrainMode::supervised ? "supervised" : "semi_supervised";
}

TrainMode train_mode_from_string(const std::string& s) {
    if (s == "supervised") return TrainMode::supervised;
    if (s == "semi_supervised") return TrainMode::semi_supervised;
    throw InvalidSpec("unknown training mode: " + s);
}

ThresholdSelection select_confidence_threshold(std::span<const Sample> labeled,
                                               std::span<const Sample> unlabeled,
                                               const std::vector<AttributeSchema>& schema,
                                               const SelfTrainConfig& cfg,
                                               const BoostConfig& boost_cfg,
                                               const TreeConfig& tree_cfg) {
    cfg.validate();
    std::vector<int> pos, neg;
    split_classes(labeled, pos, neg);
    const auto folds = stratified_folds(pos, neg, cfg.cv_folds, cfg.seed);

    ThresholdSelection sel;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<char> held(labeled.size(), 0);
        for (int i : folds[f]) held[static_cast<std::size_t>(i)] = 1;
        std::vector<Sample> train;
        for (std::size_t i = 0; i < labeled.size(); ++i)
            if (!held[i]) train.push_back(labeled[i]);

        SelfTrainConfig fold_cfg = cfg;
        fold_cfg.seed = derive_seed(cfg.seed, {tag64("selection-fold"), f});

        double best_acc = -1.0, best_theta = cfg.threshold_grid.front();
        for (double theta : cfg.threshold_grid) {
            const auto run =
                self_train_loop(train, unlabeled, theta, schema, boost_cfg, tree_cfg, fold_cfg);
            const double acc = holdout_accuracy(run.model, labeled, folds[f]);
            if (acc >= best_acc) {  // ties -> larger threshold
                best_acc = acc;
                best_theta = theta;
            }
        }
        sel.per_fold.push_back(best_theta);
    }

    // Majority vote over fold records; ties -> largest tied value.
    int best_votes = 0;
    for (double theta : cfg.threshold_grid) {
        const int votes = static_cast<int>(std::count(sel.per_fold.begin(), sel.per_fold.end(), theta));
        if (votes >= best_votes && votes > 0) {
            best_votes = votes;
            sel.chosen = theta;
        }
    }
    return sel;
}

SelfTrainResult self_train_loop(std::span<const Sample> labeled,
                                std::span<const Sample> unlabeled,
                                double confidence_threshold,
                                const std::vector<AttributeSchema>& schema,
                                const BoostConfig& boost_cfg, const TreeConfig& tree_cfg,
                                const SelfTrainConfig& cfg) {
    if (!(confidence_threshold >= 0.0 && confidence_threshold < 1.0))
        throw InvalidSpec("confidence threshold must lie in [0, 1)");

    std::vector<Sample> training(labeled.begin(), labeled.end());
    std::vector<Sample> pool;
    for (const auto& s : unlabeled) {
        pool.push_back(s);
        pool.back().label = Label::unlabeled;
    }

    const int cap = cfg.iteration_cap >= 1
                        ? cfg.iteration_cap
                        : std::max<int>(1, static_cast<int>(pool.size()));

    SelfTrainResult result;
    result.trace.chosen_threshold = confidence_threshold;
    for (int iter = 0; iter < cap; ++iter) {
        Ensemble model = train_ensemble(training, schema, boost_cfg, tree_cfg, cfg.seed);
        IterationRecord rec;
        std::vector<Sample> kept;
        for (auto& s : pool) {
            const double score = score_sample(model, s);
            if (std::abs(score) >= confidence_threshold) {
                Sample absorbed = s;
                absorbed.label = score >= 0.0 ? Label::positive : Label::negative;
                (score >= 0.0 ? rec.pseudo_pos : rec.pseudo_neg) += 1;
                ++rec.absorbed;
                training.push_back(std::move(absorbed));
            } else {
                kept.push_back(s);
            }
        }
        rec.remaining = static_cast<int>(kept.size());
        result.trace.iterations.push_back(rec);
        pool = std::move(kept);
        if (rec.absorbed == 0) {
            // The model just trained already saw the final training set.
            result.model = std::move(model);
            return result;
        }
    }
    // Cap hit with absorption in the last pass: the compiled set grew, so
    // the final model needs one more fit.
    result.model = train_ensemble(training, schema, boost_cfg, tree_cfg, cfg.seed);
    return result;
}

TrainResult train_model(const SurvivalDataset& dataset, TrainMode mode,
                        const SelfTrainConfig& self_cfg, const BoostConfig& boost_cfg,
                        const TreeConfig& tree_cfg, std::uint64_t seed) {
    const auto labeled = dataset.labeled_samples();
    if (mode == TrainMode::supervised)
        return {train_ensemble(labeled, dataset.schema, boost_cfg, tree_cfg, seed), std::nullopt};

    const auto unlabeled = dataset.unlabeled_samples();
    SelfTrainConfig cfg = self_cfg;
    cfg.seed = seed;
    const auto selection =
        select_confidence_threshold(labeled, unlabeled, dataset.schema, cfg, boost_cfg, tree_cfg);
    auto run = self_train_loop(labeled, unlabeled, selection.chosen, dataset.schema, boost_cfg,
                               tree_cfg, cfg);
    run.trace.fold_thresholds = selection.per_fold;
    return {std::move(run.model), std::move(run.trace)};
}

nlohmann::json to_json(const SelfTrainTrace& trace) {
    nlohmann::json iters = nlohmann::json::array();
    for (const auto& rec : trace.iterations)
        iters.push_back(nlohmann::json{{"absorbed", rec.absorbed},
                                       {"pseudo_pos", rec.pseudo_pos},
                                       {"pseudo_neg", rec.pseudo_neg},
                                       {"remaining", rec.remaining}});
    return nlohmann::json{{"chosen_threshold", trace.chosen_threshold},
                          {"fold_thresholds", trace.fold_thresholds},
                          {"iterations", std::move(iters)}};
}

SelfTrainTrace self_train_trace_from_json(const nlohmann::json& j) {
    SelfTrainTrace trace;
    trace.chosen_threshold = j.at("chosen_threshold").get<double>();
    trace.fold_thresholds = j.at("fold_thresholds").get<std::vector<double>>();
    for (const auto& ji : j.at("iterations"))
        trace.iterations.push_back(IterationRecord{ji.at("absorbed").get<int>(),
                                                   ji.at("pseudo_pos").get<int>(),
                                                   ji.at("pseudo_neg").get<int>(),
                                                   ji.at("remaining").get<int>()});
    return trace;
}

nlohmann::json to_json(const SelfTrainConfig& cfg) {
    return nlohmann::json{{"threshold_grid", cfg.threshold_grid},
                          {"cv_folds", cfg.cv_folds},
                          {"iteration_cap", cfg.iteration_cap},
                          {"seed", cfg.seed}};
}

SelfTrainConfig self_train_config_from_json(const nlohmann::json& j) {
    SelfTrainConfig cfg;
    cfg.threshold_grid = j.at("threshold_grid").get<std::vector<double>>();
    cfg.cv_folds = j.at("cv_folds").get<int>();
    cfg.iteration_cap = j.at("iteration_cap").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

} // namespace survboost
