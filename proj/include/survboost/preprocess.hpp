#ifndef SURVBOOST_PREPROCESS_HPP
#define SURVBOOST_PREPROCESS_HPP

#include "survboost/dataset.hpp"
#include "survboost/table.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace survboost {

inline constexpr double kDaysPerYear = 365.25;

/// Survival threshold in years; T > 0.
struct LabelingConfig {
    double threshold_years = 5.0;
};

/// Classifies one outcome against the threshold: dead before T -> negative,
/// survived at least T (dead or alive) -> positive, alive but censored
/// before T -> unlabeled.
Label label_of(VitalStatus status, long survival_days, double threshold_years);

/// Caps every attribute at `max_levels` categories. Numeric columns are
/// quantile-binned on observed values (duplicate quantile edges collapse
/// bins); categorical columns keep their most frequent levels and fold the
/// rest into OTHER. Missing cells stay missing; conforming columns are
/// untouched. Throws EmptyColumn for a numeric column with no observed
/// values.
ClinicalTable stratify_attributes(const ClinicalTable& table, int max_levels = 4);

/// Removes attributes whose modal observed value covers more than
/// `threshold_frac` of observed cells, and attributes with no observed cells.
ClinicalTable drop_near_constant(const ClinicalTable& table, double threshold_frac = 0.99);

/// Splits a preprocessed (all-categorical) table into labeled/unlabeled
/// pools for the given threshold.
SurvivalDataset assign_labels(const ClinicalTable& table, const LabelingConfig& cfg);

/// Picks the grid threshold whose labeled pools are closest to balanced;
/// ties go to the smaller threshold. Grid values labeling zero samples are
/// not eligible; if none is, throws NoLabeledSamples.
double suggest_balanced_threshold(const ClinicalTable& table, const std::vector<double>& grid);

struct DatasetSummary {
    long n_pos = 0;
    long n_neg = 0;
    long n_unlabeled = 0;
    int pct_unlabeled = 0;            // integer percent, half away from zero
    int n_factors_before = 0;
    int n_factors_after = 0;
    double pct_missing_before = 0.0;  // exact percentages
    double pct_missing_after = 0.0;
};

nlohmann::json to_json(const DatasetSummary& s);

/// Pool counts and missingness statistics relative to the unprocessed table.
DatasetSummary summarize_dataset(const SurvivalDataset& ds, const ClinicalTable& before);

/// Integer percent with ties rounded away from zero (52.44 -> 52, 35.78 -> 36).
int percent_half_away(long part, long total);

// --- Fitted preprocessing -------------------------------------------------
//
// The stratify/drop pipeline above is a pure table transform. For prediction
// on raw CSV rows the fitted transform must travel with the model, so the
// same binning edges and level merges apply to unseen data.

struct ColumnTransform {
    std::string name;
    AttrKind source_kind = AttrKind::categorical;
    std::vector<double> bin_edges;          // numeric source: ascending, deduped
    std::vector<std::string> levels;        // final level list
    std::map<std::string, int> level_map;   // categorical source: raw value -> level
    int other_index = -1;                   // merged-level target, -1 if none
};

struct PreprocessModel {
    std::vector<ColumnTransform> columns;
    int max_levels = 4;
    double drop_threshold = 0.99;

    std::vector<AttributeSchema> schema() const;
};

nlohmann::json to_json(const PreprocessModel& m);
PreprocessModel preprocess_model_from_json(const nlohmann::json& j);

/// Fits stratification + near-constant dropping on a training table.
/// apply_preprocess(fit_preprocess(t), t) equals
/// drop_near_constant(stratify_attributes(t)) column for column.
PreprocessModel fit_preprocess(const ClinicalTable& table, int max_levels = 4,
                               double drop_threshold = 0.99);

/// Applies a fitted transform to any table with the required columns.
/// Unseen categorical values map to OTHER when the transform has one,
/// otherwise to missing.
ClinicalTable apply_preprocess(const PreprocessModel& model, const ClinicalTable& table);

/// Feature vectors (no labels) for prediction inputs.
std::vector<Sample> extract_samples(const ClinicalTable& preprocessed);

} // namespace survboost

#endif // SURVBOOST_PREPROCESS_HPP
