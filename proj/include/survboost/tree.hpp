#ifndef SURVBOOST_TREE_HPP
#define SURVBOOST_TREE_HPP

#include "survboost/dataset.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace survboost {

/// A categorical split: samples whose level bit is set in `left_mask` go
/// left, the rest go right. Masks are canonical (level 0 is always on the
/// left) so each two-block partition appears exactly once.
struct Split {
    int attribute = -1;
    std::uint32_t left_mask = 0;
    double gini_decrease = 0.0;

    bool goes_left(int level) const { return (left_mask >> level) & 1u; }
};

/// Backup split used to route samples whose primary attribute is missing.
/// `same_orientation` maps surrogate-left to primary-left; association
/// lambda is the agreement improvement over majority-rule routing.
struct Surrogate {
    Split split;
    double lambda = 0.0;
    bool same_orientation = true;
};

struct TreeNode {
    bool leaf = true;
    // leaf payload
    int prediction = 1;
    double w_pos = 0.0;
    double w_neg = 0.0;
    // internal payload
    Split primary;
    std::vector<Surrogate> surrogates;
    int majority_child = 0;  // 0 = left, 1 = right
    double node_weight = 0.0;
    int left = -1;
    int right = -1;
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    bool empty() const { return nodes.empty(); }
};

struct TreeConfig {
    int max_depth = 3;
    double min_leaf_weight = 1.0;  // in sample-count units
    int max_surrogates = 5;
};

/// Gini impurity 2p(1-p) of a weighted two-class node; range [0, 0.5].
/// Throws EmptyNode when both weights are zero.
double gini_impurity(double w_pos, double w_neg);

/// Exhaustive categorical split search. Gini decrease is computed on
/// samples with the attribute observed and scaled by the observed-weight
/// fraction. Ties break toward the lower attribute index, then the
/// lexicographically smallest left level set. Returns nothing when no
/// split improves impurity.
std::optional<Split> best_split(std::span<const Sample> samples,
                                std::span<const double> weights,
                                std::span<const int> subset,
                                const std::vector<AttributeSchema>& schema);

/// Ranks backup splits on other attributes by association with the primary
/// routing; keeps lambda > 0 only, sorted descending, at most
/// `max_surrogates` entries.
std::vector<Surrogate> find_surrogates(const Split& primary,
                                       std::span<const Sample> samples,
                                       std::span<const double> weights,
                                       std::span<const int> subset,
                                       const std::vector<AttributeSchema>& schema,
                                       const TreeConfig& cfg);

/// Grows a depth-limited CART tree on weighted two-class samples. Samples
/// with a missing split attribute are routed whole (no fractional weights)
/// through the surrogate chain, falling back to the heavier child.
Tree grow_tree(std::span<const Sample> samples, std::span<const double> weights,
               const std::vector<AttributeSchema>& schema, const TreeConfig& cfg);

/// Routing decision at an internal node: primary rule when observed, else
/// the first observed surrogate, else the majority child. Total: never
/// fails, even on all-missing samples. Returns 0 for left, 1 for right.
int route_sample(const TreeNode& node, const Sample& sample);

/// Leaf prediction (+1/-1) reached by repeated routing.
int predict_tree(const Tree& tree, const Sample& sample);

/// Per-attribute sum of node_weight * gini_decrease over internal nodes
/// where the attribute carries the primary split. Unnormalized.
std::vector<double> tree_importances(const Tree& tree, std::size_t n_attributes);

nlohmann::json to_json(const Tree& tree, const std::vector<AttributeSchema>& schema);
Tree tree_from_json(const nlohmann::json& j);

/// Mask helpers shared with tests: ascending-level-index lexicographic
/// order on canonical masks.
std::vector<int> mask_levels(std::uint32_t mask);
bool mask_lex_less(std::uint32_t a, std::uint32_t b);

} // namespace survboost

#endif // SURVBOOST_TREE_HPP
