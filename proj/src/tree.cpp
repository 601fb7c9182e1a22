#include "survboost/tree.hpp"

#include "survboost/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace survboost {

namespace {

struct ClassWeights {
    double pos = 0.0;
    double neg = 0.0;

    double total() const { return pos + neg; }
    void add(int y, double w) { (y > 0 ? pos : neg) += w; }
};

double gini_or_zero(const ClassWeights& cw) {
    const double t = cw.total();
    if (t <= 0.0) return 0.0;
    const double p = cw.pos / t;
    return 2.0 * p * (1.0 - p);
}

// Canonical two-block partitions of k levels: every mask with level 0 on
// the left, excluding the full set. Exactly 2^(k-1)-1 candidates.
template <class Fn>
void for_each_canonical_mask(int k, Fn&& fn) {
    const std::uint32_t full = (k >= 32) ? ~0u : ((1u << k) - 1u);
    for (std::uint32_t mask = 1; mask < full; mask += 2) fn(mask);
}

struct SplitCandidate {
    double dg = -1.0;
    int attr = -1;
    std::uint32_t mask = 0;

    bool beats(const SplitCandidate& other) const {
        if (dg != other.dg) return dg > other.dg;
        if (attr != other.attr) return attr < other.attr;
        return mask_lex_less(mask, other.mask);
    }
};

int side_of(const Split& split, int level) { return split.goes_left(level) ? 0 : 1; }

// Routing with an explicit surrogate chain; returns -1 when the primary and
// every surrogate attribute are missing.
int route_or_defer(const Split& primary, const std::vector<Surrogate>& surrogates,
                   const Sample& sample) {
    const int level = sample.features[static_cast<std::size_t>(primary.attribute)];
    if (level != kMissing) return side_of(primary, level);
    for (const auto& s : surrogates) {
        const int sl = sample.features[static_cast<std::size_t>(s.split.attribute)];
        if (sl == kMissing) continue;
        const int side = side_of(s.split, sl);
        return s.same_orientation ? side : 1 - side;
    }
    return -1;
}

class TreeBuilder {
public:
    TreeBuilder(std::span<const Sample> samples, std::span<const double> weights,
                const std::vector<AttributeSchema>& schema, const TreeConfig& cfg)
        : samples_(samples), weights_(weights), schema_(schema), cfg_(cfg) {}

    Tree build() {
        std::vector<int> root(samples_.size());
        std::iota(root.begin(), root.end(), 0);
        double w = 0.0;
        for (int i : root) w += weights_[static_cast<std::size_t>(i)];
        if (w <= 0.0)
            throw EmptyNode("tree root has zero total weight");
        Tree tree;
        grow(tree, std::move(root), 0);
        return tree;
    }

private:
    int make_leaf(Tree& tree, const ClassWeights& cw) {
        TreeNode node;
        node.leaf = true;
        node.w_pos = cw.pos;
        node.w_neg = cw.neg;
        node.prediction = cw.pos >= cw.neg ? 1 : -1;  // ties predict +1
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size() - 1);
    }

    int grow(Tree& tree, std::vector<int> subset, int depth) {
        ClassWeights cw;
        for (int i : subset)
            cw.add(samples_[static_cast<std::size_t>(i)].y(), weights_[static_cast<std::size_t>(i)]);

        const bool pure = cw.pos <= 0.0 || cw.neg <= 0.0;
        if (depth >= cfg_.max_depth || pure || cw.total() < 2.0 * cfg_.min_leaf_weight)
            return make_leaf(tree, cw);

        const auto split = best_split(samples_, weights_, subset, schema_);
        if (!split) return make_leaf(tree, cw);

        const auto surrogates = find_surrogates(*split, samples_, weights_, subset, schema_, cfg_);

        std::vector<int> left, right, deferred;
        double w_left = 0.0, w_right = 0.0;
        for (int i : subset) {
            const int side = route_or_defer(*split, surrogates, samples_[static_cast<std::size_t>(i)]);
            if (side < 0) {
                deferred.push_back(i);
            } else if (side == 0) {
                left.push_back(i);
                w_left += weights_[static_cast<std::size_t>(i)];
            } else {
                right.push_back(i);
                w_right += weights_[static_cast<std::size_t>(i)];
            }
        }
        const int majority = w_left >= w_right ? 0 : 1;  // tie -> left
        for (int i : deferred) {
            if (majority == 0) {
                left.push_back(i);
                w_left += weights_[static_cast<std::size_t>(i)];
            } else {
                right.push_back(i);
                w_right += weights_[static_cast<std::size_t>(i)];
            }
        }

        if (w_left < cfg_.min_leaf_weight || w_right < cfg_.min_leaf_weight)
            return make_leaf(tree, cw);

        TreeNode node;
        node.leaf = false;
        node.primary = *split;
        node.surrogates = surrogates;
        node.majority_child = majority;
        node.node_weight = cw.total();
        node.w_pos = cw.pos;
        node.w_neg = cw.neg;
        tree.nodes.push_back(node);
        const int self = static_cast<int>(tree.nodes.size() - 1);
        const int left_idx = grow(tree, std::move(left), depth + 1);
        const int right_idx = grow(tree, std::move(right), depth + 1);
        tree.nodes[static_cast<std::size_t>(self)].left = left_idx;
        tree.nodes[static_cast<std::size_t>(self)].right = right_idx;
        return self;
    }

    std::span<const Sample> samples_;
    std::span<const double> weights_;
    const std::vector<AttributeSchema>& schema_;
    const TreeConfig& cfg_;
};

} // namespace

std::vector<int> mask_levels(std::uint32_t mask) {
    std::vector<int> out;
    for (int l = 0; l < 32; ++l)
        if ((mask >> l) & 1u) out.push_back(l);
    return out;
}

bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
    const auto la = mask_levels(a);
    const auto lb = mask_levels(b);
    return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
}

double gini_impurity(double w_pos, double w_neg) {
    if (w_pos < 0.0 || w_neg < 0.0)
        throw InvalidSpec("class weights must be non-negative");
    const double total = w_pos + w_neg;
    if (total <= 0.0)
        throw EmptyNode("gini impurity of an empty node is undefined");
    const double p = w_pos / total;
    return 2.0 * p * (1.0 - p);
}

std::optional<Split> best_split(std::span<const Sample> samples,
                                std::span<const double> weights,
                                std::span<const int> subset,
                                const std::vector<AttributeSchema>& schema) {
    double w_total = 0.0;
    for (int i : subset) w_total += weights[static_cast<std::size_t>(i)];
    if (w_total <= 0.0) return std::nullopt;

    SplitCandidate best;
    bool found = false;

    for (int attr = 0; attr < static_cast<int>(schema.size()); ++attr) {
        const int k = schema[static_cast<std::size_t>(attr)].n_levels();
        if (k < 2) continue;

        std::vector<ClassWeights> by_level(static_cast<std::size_t>(k));
        ClassWeights observed;
        for (int i : subset) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            const int level = s.features[static_cast<std::size_t>(attr)];
            if (level == kMissing) continue;
            const double w = weights[static_cast<std::size_t>(i)];
            by_level[static_cast<std::size_t>(level)].add(s.y(), w);
            observed.add(s.y(), w);
        }
        const double w_obs = observed.total();
        if (w_obs <= 0.0) continue;
        const double parent_gini = gini_or_zero(observed);
        if (parent_gini <= 0.0) continue;

        for_each_canonical_mask(k, [&](std::uint32_t mask) {
            ClassWeights lhs, rhs;
            for (int l = 0; l < k; ++l) {
                const auto& lw = by_level[static_cast<std::size_t>(l)];
                if ((mask >> l) & 1u) {
                    lhs.pos += lw.pos;
                    lhs.neg += lw.neg;
                } else {
                    rhs.pos += lw.pos;
                    rhs.neg += lw.neg;
                }
            }
            const double split_gini =
                (lhs.total() * gini_or_zero(lhs) + rhs.total() * gini_or_zero(rhs)) / w_obs;
            const double dg = (w_obs / w_total) * (parent_gini - split_gini);
            if (dg <= 0.0) return;
            SplitCandidate cand{dg, attr, mask};
            if (!found || cand.beats(best)) {
                best = cand;
                found = true;
            }
        });
    }

    if (!found) return std::nullopt;
    return Split{best.attr, best.mask, best.dg};
}

std::vector<Surrogate> find_surrogates(const Split& primary,
                                       std::span<const Sample> samples,
                                       std::span<const double> weights,
                                       std::span<const int> subset,
                                       const std::vector<AttributeSchema>& schema,
                                       const TreeConfig& cfg) {
    if (cfg.max_surrogates <= 0) return {};

    // Baseline: the primary's heavier side among samples with the primary
    // attribute observed; a surrogate must beat routing everything there.
    double w_left = 0.0, w_right = 0.0;
    for (int i : subset) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        const int level = s.features[static_cast<std::size_t>(primary.attribute)];
        if (level == kMissing) continue;
        (side_of(primary, level) == 0 ? w_left : w_right) += weights[static_cast<std::size_t>(i)];
    }
    const double w_primary = w_left + w_right;
    if (w_primary <= 0.0) return {};
    const double baseline = std::max(w_left, w_right) / w_primary;
    if (baseline >= 1.0) return {};

    std::vector<Surrogate> out;
    for (int attr = 0; attr < static_cast<int>(schema.size()); ++attr) {
        if (attr == primary.attribute) continue;
        const int k = schema[static_cast<std::size_t>(attr)].n_levels();
        if (k < 2) continue;

        // Per-level weight routed to each primary side over co-observed
        // samples.
        std::vector<std::array<double, 2>> routed(static_cast<std::size_t>(k), {0.0, 0.0});
        for (int i : subset) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            const int pl = s.features[static_cast<std::size_t>(primary.attribute)];
            const int al = s.features[static_cast<std::size_t>(attr)];
            if (pl == kMissing || al == kMissing) continue;
            routed[static_cast<std::size_t>(al)][static_cast<std::size_t>(side_of(primary, pl))] +=
                weights[static_cast<std::size_t>(i)];
        }
        double w_co = 0.0;
        for (const auto& r : routed) w_co += r[0] + r[1];
        if (w_co <= 0.0) continue;

        double best_agree = -1.0;
        std::uint32_t best_mask = 0;
        bool best_orient = true;
        for_each_canonical_mask(k, [&](std::uint32_t mask) {
            double same = 0.0;
            for (int l = 0; l < k; ++l)
                same += routed[static_cast<std::size_t>(l)][((mask >> l) & 1u) ? 0 : 1];
            const bool orient = same >= w_co - same;
            const double agree = orient ? same : w_co - same;
            if (agree > best_agree ||
                (agree == best_agree && mask_lex_less(mask, best_mask))) {
                best_agree = agree;
                best_mask = mask;
                best_orient = orient;
            }
        });
        if (best_agree < 0.0) continue;

        const double lambda = (best_agree / w_co - baseline) / (1.0 - baseline);
        if (lambda <= 0.0) continue;
        out.push_back(Surrogate{Split{attr, best_mask, 0.0}, std::min(lambda, 1.0), best_orient});
    }

    std::stable_sort(out.begin(), out.end(), [](const Surrogate& a, const Surrogate& b) {
        if (a.lambda != b.lambda) return a.lambda > b.lambda;
        if (a.split.attribute != b.split.attribute) return a.split.attribute < b.split.attribute;
        return mask_lex_less(a.split.left_mask, b.split.left_mask);
    });
    if (static_cast<int>(out.size()) > cfg.max_surrogates)
        out.resize(static_cast<std::size_t>(cfg.max_surrogates));
    return out;
}

Tree grow_tree(std::span<const Sample> samples, std::span<const double> weights,
               const std::vector<AttributeSchema>& schema, const TreeConfig& cfg) {
    if (cfg.max_depth < 1)
        throw InvalidSpec("max_depth must be at least 1");
    if (samples.size() != weights.size())
        throw LengthMismatch("samples and weights differ in length");
    return TreeBuilder(samples, weights, schema, cfg).build();
}

int route_sample(const TreeNode& node, const Sample& sample) {
    const int side = route_or_defer(node.primary, node.surrogates, sample);
    return side >= 0 ? side : node.majority_child;
}

int predict_tree(const Tree& tree, const Sample& sample) {
    int idx = 0;
    while (!tree.nodes[static_cast<std::size_t>(idx)].leaf) {
        const TreeNode& node = tree.nodes[static_cast<std::size_t>(idx)];
        idx = route_sample(node, sample) == 0 ? node.left : node.right;
    }
    return tree.nodes[static_cast<std::size_t>(idx)].prediction;
}

std::vector<double> tree_importances(const Tree& tree, std::size_t n_attributes) {
    std::vector<double> imp(n_attributes, 0.0);
    for (const auto& node : tree.nodes)
        if (!node.leaf)
            imp[static_cast<std::size_t>(node.primary.attribute)] +=
                node.node_weight * node.primary.gini_decrease;
    return imp;
}

namespace {

nlohmann::json split_to_json(const Split& split, const std::vector<AttributeSchema>& schema) {
    nlohmann::json names = nlohmann::json::array();
    for (int l : mask_levels(split.left_mask)) {
        const auto& levels = schema[static_cast<std::size_t>(split.attribute)].levels;
        if (l < static_cast<int>(levels.size())) names.push_back(levels[static_cast<std::size_t>(l)]);
    }
    return nlohmann::json{{"attribute", split.attribute},
                          {"attribute_name", schema[static_cast<std::size_t>(split.attribute)].name},
                          {"left_mask", split.left_mask},
                          {"left_levels", names},
                          {"gini_decrease", split.gini_decrease}};
}

Split split_from_json(const nlohmann::json& j) {
    Split s;
    s.attribute = j.at("attribute").get<int>();
    s.left_mask = j.at("left_mask").get<std::uint32_t>();
    s.gini_decrease = j.at("gini_decrease").get<double>();
    return s;
}

} // namespace

nlohmann::json to_json(const Tree& tree, const std::vector<AttributeSchema>& schema) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : tree.nodes) {
        if (node.leaf) {
            nodes.push_back(nlohmann::json{{"kind", "leaf"},
                                           {"prediction", node.prediction},
                                           {"w_pos", node.w_pos},
                                           {"w_neg", node.w_neg}});
            continue;
        }
        nlohmann::json surrogates = nlohmann::json::array();
        for (const auto& s : node.surrogates) {
            nlohmann::json js = split_to_json(s.split, schema);
            js.erase("gini_decrease");
            js["lambda"] = s.lambda;
            js["same_orientation"] = s.same_orientation;
            surrogates.push_back(std::move(js));
        }
        nodes.push_back(nlohmann::json{{"kind", "split"},
                                       {"split", split_to_json(node.primary, schema)},
                                       {"surrogates", std::move(surrogates)},
                                       {"majority_child", node.majority_child == 0 ? "left" : "right"},
                                       {"node_weight", node.node_weight},
                                       {"w_pos", node.w_pos},
                                       {"w_neg", node.w_neg},
                                       {"left", node.left},
                                       {"right", node.right}});
    }
    return nlohmann::json{{"nodes", std::move(nodes)}};
}

Tree tree_from_json(const nlohmann::json& j) {
    Tree tree;
    for (const auto& jn : j.at("nodes")) {
        TreeNode node;
        if (jn.at("kind").get<std::string>() == "leaf") {
            node.leaf = true;
            node.prediction = jn.at("prediction").get<int>();
            node.w_pos = jn.at("w_pos").get<double>();
            node.w_neg = jn.at("w_neg").get<double>();
        } else {
            node.leaf = false;
            node.primary = split_from_json(jn.at("split"));
            for (const auto& js : jn.at("surrogates")) {
                Surrogate s;
                s.split.attribute = js.at("attribute").get<int>();
                s.split.left_mask = js.at("left_mask").get<std::uint32_t>();
                s.lambda = js.at("lambda").get<double>();
                s.same_orientation = js.at("same_orientation").get<bool>();
                node.surrogates.push_back(std::move(s));
            }
            node.majority_child = jn.at("majority_child").get<std::string>() == "left" ? 0 : 1;
            node.node_weight = jn.at("node_weight").get<double>();
            node.w_pos = jn.at("w_pos").get<double>();
            node.w_neg = jn.at("w_neg").get<double>();
            node.left = jn.at("left").get<int>();
            node.right = jn.at("right").get<int>();
        }
        tree.nodes.push_back(std::move(node));
    }
    return tree;
}

} // namespace survboost
