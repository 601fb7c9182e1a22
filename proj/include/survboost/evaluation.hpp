#ifndef SURVBOOST_EVALUATION_HPP
#define SURVBOOST_EVALUATION_HPP

#include "survboost/preprocess.hpp"
#include "survboost/self_training.hpp"
#include "survboost/table.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace survboost {

struct ConfusionMatrix {
    long long tp = 0;
    long long fp = 0;
    long long tn = 0;
    long long fn = 0;

    long long total() const { return tp + fp + tn + fn; }
};

struct Metrics {
    double acc = 0.0;
    double snsp2 = 0.0;
    double mcc = 0.0;
};

/// Standard counts with +1 as the positive class.
ConfusionMatrix confusion_matrix(std::span<const int> predictions, std::span<const int> truth);

/// acc, (sensitivity + specificity)/2, and Matthews correlation. Zero
/// denominators follow the usual conventions: an undefined sensitivity or
/// specificity term counts as 0, an MCC with any zero factor is 0.
Metrics compute_metrics(const ConfusionMatrix& cm);

struct FoldResult {
    int fold = 0;
    ConfusionMatrix cm;
    Metrics metrics;
};

struct EvaluationReport {
    TrainMode mode = TrainMode::supervised;
    double threshold_years = 0.0;
    std::uint64_t seed = 0;
    int folds = 0;
    std::vector<std::vector<int>> fold_assignments;  // dataset sample indices
    std::vector<FoldResult> fold_results;
    Metrics mean;
    Metrics stddev;  // sample standard deviation across folds
};

/// Stratified seeded k-fold over the labeled pool only; the unlabeled pool
/// is handed in full to every training fold and never evaluated. Aggregate
/// is the unweighted per-fold mean with its sample standard deviation.
EvaluationReport cross_validate(const SurvivalDataset& dataset, TrainMode mode, int k,
                                const SelfTrainConfig& self_cfg, const BoostConfig& boost_cfg,
                                const TreeConfig& tree_cfg, std::uint64_t seed);

struct SweepRow {
    double threshold_years = 0.0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    std::size_t n_unlabeled = 0;
    bool skipped = false;
    std::string skip_reason;
    std::optional<EvaluationReport> supervised;
    std::optional<EvaluationReport> semi_supervised;
};

/// Relabels the table at each grid threshold and cross-validates both
/// training modes. Thresholds that cannot be evaluated (single labeled
/// class, folds too small) yield flagged rows instead of failures. Each row
/// gets a seed derived from the threshold value so rows are independent yet
/// reproducible.
std::vector<SweepRow> survival_threshold_sweep(const ClinicalTable& table,
                                               std::span<const double> t_grid, int k,
                                               const SelfTrainConfig& self_cfg,
                                               const BoostConfig& boost_cfg,
                                               const TreeConfig& tree_cfg, std::uint64_t seed);

std::uint64_t sweep_row_seed(std::uint64_t seed, double threshold_years);

nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const EvaluationReport& report);
nlohmann::json to_json(const std::vector<SweepRow>& rows);

/// Flat CSV views for external plotting: one row per fold plus aggregate
/// rows (reports), one row per (threshold, mode) pair (sweeps).
std::string report_to_csv(const EvaluationReport& report);
std::string reports_to_csv(std::span<const EvaluationReport> reports);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

} // namespace survboost

#endif // SURVBOOST_EVALUATION_HPP
