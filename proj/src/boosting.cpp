#include "survboost/boosting.hpp"

#include "survboost/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace survboost {

namespace {

constexpr double kAdaBoostErrorFloor = 1e-12;

struct RbParams {
    double rho;
    const BoostConfig* cfg;

    double mu(double t) const { return rb_mu(t, rho, *cfg); }
    double sigma_sq(double t) const { return rb_sigma_sq(t, *cfg); }

    double weight(double m, double t) const {
        const double d = m - mu(t);
        return std::exp(-d * d / (2.0 * sigma_sq(t)));
    }

    // Normalized margin inside the potential's erf; larger is better.
    double erf_arg(double m, double t) const {
        return (m - mu(t)) / std::sqrt(2.0 * sigma_sq(t));
    }
};

// Weighted correlation of the weak learner with the advanced-time weights
// of the updated margins; the step's alpha is its root.
double decorrelation(const RbParams& p, std::span<const double> m, std::span<const int> u,
                     double t_new, double alpha) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        sum += u[i] * p.weight(m[i] + alpha * u[i], t_new);
    return sum;
}

// Change in summed erf terms across the step; zero change conserves the
// average potential.
double potential_shift(const RbParams& p, std::span<const double> m, std::span<const int> u,
                       double t_old, double t_new, double alpha) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        sum += std::erf(p.erf_arg(m[i] + alpha * u[i], t_new)) -
               std::erf(p.erf_arg(m[i], t_old));
    return sum;
}

// Root of the decorrelation condition in alpha >= 0 at fixed advanced time.
// The correlation starts positive for useful learners and is driven to zero;
// when it is already non-positive the step needs no margin update.
double solve_alpha(const RbParams& p, std::span<const double> m, std::span<const int> u,
                   double t_new, double tolerance) {
    if (decorrelation(p, m, u, t_new, 0.0) <= 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (decorrelation(p, m, u, t_new, hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1024.0) return hi;  // saturated: all weight already in the tails
    }
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (decorrelation(p, m, u, t_new, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<int> tree_outputs(const Tree& tree, std::span<const Sample> samples) {
    std::vector<int> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = predict_tree(tree, samples[i]);
    return out;
}

// min_leaf_weight is expressed in sample-count units, so the distribution
// handed to the tree is rescaled to total n.
std::vector<double> scaled_to_count(std::span<const double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<double> out(weights.begin(), weights.end());
    if (total <= 0.0) return out;
    const double scale = static_cast<double>(weights.size()) / total;
    for (double& w : out) w *= scale;
    return out;
}

void require_both_classes(std::span<const Sample> labeled) {
    bool pos = false, neg = false;
    for (const auto& s : labeled) {
        if (!s.is_labeled())
            throw InvalidSpec("ensemble training requires labeled samples only");
        (s.y() > 0 ? pos : neg) = true;
    }
    if (labeled.size() < 2 || !pos || !neg)
        throw SingleClassInput("ensemble training needs both classes present");
}

Ensemble train_adaboost(std::span<const Sample> labeled,
                        const std::vector<AttributeSchema>& schema,
                        const BoostConfig& boost_cfg, const TreeConfig& tree_cfg,
                        TrainDiagnostics* diag) {
    const std::size_t n = labeled.size();
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));

    Ensemble ens;
    ens.algorithm = BoostAlgorithm::adaboost;
    ens.schema = schema;
    ens.boost_cfg = boost_cfg;
    ens.tree_cfg = tree_cfg;

    for (int round = 0; round < boost_cfg.rounds_cap; ++round) {
        if (diag) diag->round_weights.push_back(weights);
        Tree tree = grow_tree(labeled, scaled_to_count(weights), schema, tree_cfg);
        const auto h = tree_outputs(tree, labeled);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (h[i] != labeled[i].y()) err += weights[i];

        if (err >= 0.5) {
            if (diag) diag->round_weights.pop_back();
            if (round == 0)
                throw NoUsefulWeakLearner("first weak learner is no better than chance");
            break;
        }
        const double floored = std::max(err, kAdaBoostErrorFloor);
        const double alpha = 0.5 * std::log((1.0 - floored) / floored);
        if (diag) {
            diag->round_errors.push_back(err);
            diag->round_alphas.push_back(alpha);
        }
        ens.trees.push_back(std::move(tree));
        ens.alphas.push_back(alpha);
        if (err <= 0.0) break;  // perfect learner: nothing left to reweight

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] *= std::exp(-alpha * h[i] * labeled[i].y());
            total += weights[i];
        }
        for (double& w : weights) w /= total;
    }
    return ens;
}

Ensemble train_robustboost(std::span<const Sample> labeled,
                           const std::vector<AttributeSchema>& schema,
                           const BoostConfig& boost_cfg, const TreeConfig& tree_cfg,
                           TrainDiagnostics* diag) {
    const std::size_t n = labeled.size();
    std::vector<double> margins(n, 0.0);
    double t = 0.0;

    Ensemble ens;
    ens.algorithm = BoostAlgorithm::robustboost;
    ens.schema = schema;
    ens.boost_cfg = boost_cfg;
    ens.tree_cfg = tree_cfg;

    for (int round = 0; round < boost_cfg.rounds_cap && t < 1.0; ++round) {
        const auto weights = robustboost_weights(margins, t, boost_cfg);
        if (diag) {
            diag->round_times.push_back(t);
            diag->round_weights.push_back(weights);
        }
        Tree tree = grow_tree(labeled, scaled_to_count(weights), schema, tree_cfg);
        const auto h = tree_outputs(tree, labeled);
        std::vector<int> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = h[i] * labeled[i].y();

        const StepResult step = solve_step(margins, u, t, boost_cfg);
        if (step.status == StepStatus::time_exhausted) break;
        if (step.status == StepStatus::no_solution) {
            if (round == 0)
                throw NoUsefulWeakLearner(
                    "first weak learner is no better than chance and the step is unsolvable");
            break;
        }

        t += step.dt;
        if (step.alpha > 0.0) {
            for (std::size_t i = 0; i < n; ++i) margins[i] += step.alpha * u[i];
            ens.trees.push_back(std::move(tree));
            ens.alphas.push_back(step.alpha);
            if (diag) diag->round_alphas.push_back(step.alpha);
        }
    }
    ens.final_t = t;
    if (ens.trees.empty())
        throw NoUsefulWeakLearner("no usable weak learner before time ran out");
    return ens;
}

} // namespace

std::string to_string(BoostAlgorithm a) {
    return a == BoostAlgorithm::adaboost ? "adaboost" : "robustboost";
}

BoostAlgorithm boost_algorithm_from_string(const std::string& s) {
    if (s == "adaboost") return BoostAlgorithm::adaboost;
    if (s == "robustboost") return BoostAlgorithm::robustboost;
    throw InvalidSpec("unknown boosting algorithm: " + s);
}

void BoostConfig::validate() const {
    if (rounds_cap < 1) throw InvalidSpec("rounds_cap must be at least 1");
    if (!(target_error > 0.0 && target_error < 0.5))
        throw InvalidSpec("target_error must lie in (0, 0.5)");
    if (goal_margin < 0.0) throw InvalidSpec("goal_margin must be non-negative");
    if (!(final_sigma > 0.0)) throw InvalidSpec("final_sigma must be positive");
    if (!(tolerance > 0.0)) throw InvalidSpec("tolerance must be positive");
}

double erf_inverse(double y) {
    if (!(y > -1.0 && y < 1.0))
        throw InvalidSpec("erf_inverse defined on (-1, 1)");
    if (y == 0.0) return 0.0;
    // Winitzki's approximation seeds a Newton iteration on erf(x) - y.
    constexpr double a = 0.147;
    const double ln1my2 = std::log(1.0 - y * y);
    const double term = 2.0 / (std::numbers::pi * a) + 0.5 * ln1my2;
    double x = std::copysign(std::sqrt(std::sqrt(term * term - ln1my2 / a) - term), y);
    for (int i = 0; i < 4; ++i) {
        const double err = std::erf(x) - y;
        const double deriv = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x);
        x -= err / deriv;
    }
    return x;
}

double rb_rho(const BoostConfig& cfg) {
    const double e = std::numbers::e;
    const double sigma0 = std::sqrt((cfg.final_sigma * cfg.final_sigma + 1.0) * e * e - 1.0);
    return (e * cfg.goal_margin + std::sqrt(2.0) * sigma0 * erf_inverse(1.0 - cfg.target_error)) /
           (2.0 * (e - 1.0));
}

double rb_sigma_sq(double t, const BoostConfig& cfg) {
    return (cfg.final_sigma * cfg.final_sigma + 1.0) * std::exp(2.0 * (1.0 - t)) - 1.0;
}

double rb_mu(double t, double rho, const BoostConfig& cfg) {
    return (cfg.goal_margin - 2.0 * rho) * std::exp(1.0 - t) + 2.0 * rho;
}

std::vector<double> robustboost_weights(std::span<const double> margins, double t,
                                        const BoostConfig& cfg) {
    cfg.validate();
    if (t >= 1.0)
        throw TimeExhausted("boosting time is already spent");
    if (t < 0.0)
        throw InvalidSpec("boosting time must be non-negative");
    const RbParams p{rb_rho(cfg), &cfg};
    std::vector<double> out(margins.size());
    for (std::size_t i = 0; i < margins.size(); ++i)
        out[i] = p.weight(margins[i], t);
    return out;
}

StepResult solve_step(std::span<const double> margins, std::span<const int> u,
                      double t, const BoostConfig& cfg) {
    cfg.validate();
    if (margins.size() != u.size())
        throw LengthMismatch("margins and weak outputs differ in length");
    const double remaining = 1.0 - t;
    if (remaining < cfg.tolerance) return {StepStatus::time_exhausted, 0.0, 0.0};

    const RbParams p{rb_rho(cfg), &cfg};
    if (decorrelation(p, margins, u, t, 0.0) <= 0.0)
        return {StepStatus::no_solution, 0.0, 0.0};

    const auto shift_at = [&](double dt) {
        const double alpha = solve_alpha(p, margins, u, t + dt, cfg.tolerance);
        return std::pair{alpha, potential_shift(p, margins, u, t, t + dt, alpha)};
    };

    // The shift is positive as dt -> 0 (pure learner progress) and decreases
    // as the time cost mounts; if it never crosses zero the goal is reached
    // and the step consumes all remaining time.
    auto [alpha_end, shift_end] = shift_at(remaining);
    if (shift_end >= 0.0) return {StepStatus::ok, remaining, alpha_end};

    double lo = 0.0, hi = remaining;
    while (hi - lo > cfg.tolerance) {
        const double mid = 0.5 * (lo + hi);
        (shift_at(mid).second >= 0.0 ? lo : hi) = mid;
    }
    const double dt = 0.5 * (lo + hi);
    return {StepStatus::ok, dt, solve_alpha(p, margins, u, t + dt, cfg.tolerance)};
}

Ensemble train_ensemble(std::span<const Sample> labeled,
                        const std::vector<AttributeSchema>& schema,
                        const BoostConfig& boost_cfg, const TreeConfig& tree_cfg,
                        std::uint64_t seed, TrainDiagnostics* diag) {
    boost_cfg.validate();
    require_both_classes(labeled);
    Ensemble ens = boost_cfg.algorithm == BoostAlgorithm::adaboost
                       ? train_adaboost(labeled, schema, boost_cfg, tree_cfg, diag)
                       : train_robustboost(labeled, schema, boost_cfg, tree_cfg, diag);
    ens.seed = seed;
    return ens;
}

double score_sample(const Ensemble& ensemble, const Sample& sample) {
    double vote = 0.0, total = 0.0;
    for (std::size_t k = 0; k < ensemble.trees.size(); ++k) {
        vote += ensemble.alphas[k] * predict_tree(ensemble.trees[k], sample);
        total += ensemble.alphas[k];
    }
    if (total <= 0.0)
        throw InvalidSpec("ensemble has no positive-weight learners");
    return vote / total;
}

int predict_label(const Ensemble& ensemble, const Sample& sample) {
    return score_sample(ensemble, sample) >= 0.0 ? 1 : -1;
}

std::vector<double> ensemble_importances(const Ensemble& ensemble) {
    std::vector<double> imp(ensemble.schema.size(), 0.0);
    for (std::size_t k = 0; k < ensemble.trees.size(); ++k) {
        const auto tree_imp = tree_importances(ensemble.trees[k], imp.size());
        for (std::size_t a = 0; a < imp.size(); ++a)
            imp[a] += ensemble.alphas[k] * tree_imp[a];
    }
    const double total = std::accumulate(imp.begin(), imp.end(), 0.0);
    if (total > 0.0)
        for (double& v : imp) v /= total;
    return imp;
}

nlohmann::json to_json(const BoostConfig& cfg) {
    return nlohmann::json{{"algorithm", to_string(cfg.algorithm)},
                          {"rounds_cap", cfg.rounds_cap},
                          {"target_error", cfg.target_error},
                          {"goal_margin", cfg.goal_margin},
                          {"final_sigma", cfg.final_sigma},
                          {"tolerance", cfg.tolerance}};
}

BoostConfig boost_config_from_json(const nlohmann::json& j) {
    BoostConfig cfg;
    cfg.algorithm = boost_algorithm_from_string(j.at("algorithm").get<std::string>());
    cfg.rounds_cap = j.at("rounds_cap").get<int>();
    cfg.target_error = j.at("target_error").get<double>();
    cfg.goal_margin = j.at("goal_margin").get<double>();
    cfg.final_sigma = j.at("final_sigma").get<double>();
    cfg.tolerance = j.at("tolerance").get<double>();
    return cfg;
}

nlohmann::json to_json(const TreeConfig& cfg) {
    return nlohmann::json{{"max_depth", cfg.max_depth},
                          {"min_leaf_weight", cfg.min_leaf_weight},
                          {"max_surrogates", cfg.max_surrogates}};
}

TreeConfig tree_config_from_json(const nlohmann::json& j) {
    TreeConfig cfg;
    cfg.max_depth = j.at("max_depth").get<int>();
    cfg.min_leaf_weight = j.at("min_leaf_weight").get<double>();
    cfg.max_surrogates = j.at("max_surrogates").get<int>();
    return cfg;
}

nlohmann::json to_json(const Ensemble& ensemble) {
    nlohmann::json schema = nlohmann::json::array();
    for (const auto& attr : ensemble.schema) {
        schema.push_back(nlohmann::json{{"name", attr.name}, {"levels", attr.levels}});
    }
    nlohmann::json learners = nlohmann::json::array();
    for (std::size_t k = 0; k < ensemble.trees.size(); ++k) {
        learners.push_back(nlohmann::json{{"alpha", ensemble.alphas[k]},
                                          {"tree", to_json(ensemble.trees[k], ensemble.schema)}});
    }
    return nlohmann::json{{"algorithm", to_string(ensemble.algorithm)},
                          {"boost_config", to_json(ensemble.boost_cfg)},
                          {"tree_config", to_json(ensemble.tree_cfg)},
                          {"schema", std::move(schema)},
                          {"learners", std::move(learners)},
                          {"final_t", ensemble.final_t},
                          {"rounds", ensemble.rounds()},
                          {"seed", ensemble.seed},
                          {"importances", ensemble_importances(ensemble)}};
}

Ensemble ensemble_from_json(const nlohmann::json& j) {
    Ensemble ens;
    ens.algorithm = boost_algorithm_from_string(j.at("algorithm").get<std::string>());
    ens.boost_cfg = boost_config_from_json(j.at("boost_config"));
    ens.tree_cfg = tree_config_from_json(j.at("tree_config"));
    for (const auto& ja : j.at("schema")) {
        AttributeSchema attr;
        attr.name = ja.at("name").get<std::string>();
        attr.levels = ja.at("levels").get<std::vector<std::string>>();
        ens.schema.push_back(std::move(attr));
    }
    for (const auto& jl : j.at("learners")) {
        ens.alphas.push_back(jl.at("alpha").get<double>());
        ens.trees.push_back(tree_from_json(jl.at("tree")));
    }
    ens.final_t = j.at("final_t").get<double>();
    ens.seed = j.at("seed").get<std::uint64_t>();
    return ens;
}

} // namespace survboost
