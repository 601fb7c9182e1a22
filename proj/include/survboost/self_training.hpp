#ifndef SURVBOOST_SELF_TRAINING_HPP
#define SURVBOOST_SELF_TRAINING_HPP

#include "survboost/boosting.hpp"
#include "survboost/dataset.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace survboost {

struct SelfTrainConfig {
    std::vector<double> threshold_grid = default_grid();
    int cv_folds = 10;
    int iteration_cap = 0;  // 0 -> auto: one pass per unlabeled sample, at least one
    std::uint64_t seed = 0;

    static std::vector<double> default_grid();  // 0.50, 0.55, ..., 0.95
    void validate() const;                      // throws InvalidSpec
};

struct IterationRecord {
    int absorbed = 0;
    int pseudo_pos = 0;
    int pseudo_neg = 0;
    int remaining = 0;
};

struct SelfTrainTrace {
    double chosen_threshold = 0.0;
    std::vector<double> fold_thresholds;  // empty when no selection ran
    std::vector<IterationRecord> iterations;
};

struct ThresholdSelection {
    double chosen = 0.0;
    std::vector<double> per_fold;
};

enum class TrainMode { supervised, semi_supervised };

std::string to_string(TrainMode m);
TrainMode train_mode_from_string(const std::string& s);

/// Confidence-threshold selection by stratified cross-validation: each fold
/// is held out, every grid threshold drives a full self-training run on the
/// rest plus the whole unlabeled pool, and the fold records the threshold
/// with the best holdout accuracy (ties -> larger). The winner is the mode
/// of the fold records (ties -> largest tied value).
ThresholdSelection select_confidence_threshold(std::span<const Sample> labeled,
                                               std::span<const Sample> unlabeled,
                                               const std::vector<AttributeSchema>& schema,
                                               const SelfTrainConfig& cfg,
                                               const BoostConfig& boost_cfg,
                                               const TreeConfig& tree_cfg);

struct SelfTrainResult {
    Ensemble model;
    SelfTrainTrace trace;
};

/// Iterative pseudo-labeling: train, absorb every unlabeled sample whose
/// confidence reaches the threshold (pseudo-label = score sign), repeat
/// until nothing passes or the cap is hit; the returned model is trained on
/// the final compiled training set. Absorbed samples are never revisited.
SelfTrainResult self_train_loop(std::span<const Sample> labeled,
                                std::span<const Sample> unlabeled,
                                double confidence_threshold,
                                const std::vector<AttributeSchema>& schema,
                                const BoostConfig& boost_cfg, const TreeConfig& tree_cfg,
                                const SelfTrainConfig& cfg);

struct TrainResult {
    Ensemble model;
    std::optional<SelfTrainTrace> trace;  // semi-supervised only
};

/// supervised: ensemble on the labeled pool only. semi_supervised: select a
/// confidence threshold, then self-train with the unlabeled pool.
TrainResult train_model(const SurvivalDataset& dataset, TrainMode mode,
                        const SelfTrainConfig& self_cfg, const BoostConfig& boost_cfg,
                        const TreeConfig& tree_cfg, std::uint64_t seed);

nlohmann::json to_json(const SelfTrainTrace& trace);
SelfTrainTrace self_train_trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SelfTrainConfig& cfg);
SelfTrainConfig self_train_config_from_json(const nlohmann::json& j);

} // namespace survboost

#endif // SURVBOOST_SELF_TRAINING_HPP
