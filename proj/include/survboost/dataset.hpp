#ifndef SURVBOOST_DATASET_HPP
#define SURVBOOST_DATASET_HPP

#include <string>
#include <vector>

namespace survboost {

enum class Label : int { negative = -1, unlabeled = 0, positive = 1 };

/// Cell code for a missing attribute value. Missing is never a level.
inline constexpr int kMissing = -1;

/// A preprocessed sample: per-attribute level codes (kMissing allowed) plus
/// the survival label. y is +1/-1 and only meaningful for labeled samples.
struct Sample {
    std::vector<int> features;
    Label label = Label::unlabeled;

    int y() const { return static_cast<int>(label); }
    bool is_labeled() const { return label != Label::unlabeled; }
};

/// Post-preprocessing attribute schema: every attribute is categorical with
/// a small, fixed level list.
struct AttributeSchema {
    std::string name;
    std::vector<std::string> levels;

    int n_levels() const { return static_cast<int>(levels.size()); }
};

inline bool operator==(const AttributeSchema& a, const AttributeSchema& b) {
    return a.name == b.name && a.levels == b.levels;
}

/// Samples partitioned into labeled positive / labeled negative / unlabeled
/// pools for one survival threshold.
struct SurvivalDataset {
    std::vector<Sample> samples;
    std::vector<int> labeled_pos;
    std::vector<int> labeled_neg;
    std::vector<int> unlabeled;
    std::vector<AttributeSchema> schema;
    std::vector<std::string> row_ids;
    double threshold_years = 0.0;

    std::size_t n_samples() const { return samples.size(); }

    /// Labeled samples in ascending index order.
    std::vector<int> labeled_indices() const {
        std::vector<int> idx;
        idx.reserve(labeled_pos.size() + labeled_neg.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (samples[i].is_labeled()) idx.push_back(static_cast<int>(i));
        return idx;
    }

    std::vector<Sample> labeled_samples() const {
        std::vector<Sample> out;
        for (int i : labeled_indices()) out.push_back(samples[static_cast<std::size_t>(i)]);
        return out;
    }

    std::vector<Sample> unlabeled_samples() const {
        std::vector<Sample> out;
        for (int i : unlabeled) out.push_back(samples[static_cast<std::size_t>(i)]);
        return out;
    }
};

} // namespace survboost

#endif // SURVBOOST_DATASET_HPP
