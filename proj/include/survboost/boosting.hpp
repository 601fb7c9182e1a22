#ifndef SURVBOOST_BOOSTING_HPP
#define SURVBOOST_BOOSTING_HPP

#include "survboost/dataset.hpp"
#include "survboost/tree.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace survboost {

enum class BoostAlgorithm { adaboost, robustboost };

std::string to_string(BoostAlgorithm a);
BoostAlgorithm boost_algorithm_from_string(const std::string& s);

struct BoostConfig {
    BoostAlgorithm algorithm = BoostAlgorithm::robustboost;
    int rounds_cap = 100;
    double target_error = 0.1;  // epsilon in (0, 0.5)
    double goal_margin = 0.0;   // theta >= 0
    double final_sigma = 0.1;   // sigma_f > 0
    double tolerance = 1e-6;

    void validate() const;  // throws InvalidSpec
};

/// Time-dependent weighting scheme: margins are pulled toward a drifting
/// target mean with shrinking variance as boosting time runs out.
///   sigma^2(t) = (sigma_f^2 + 1) e^{2(1-t)} - 1
///   mu(t)      = (theta - 2 rho) e^{1-t} + 2 rho
/// rho is fixed by requiring the zero-margin potential at t = 0 to equal
/// the target error.
double rb_rho(const BoostConfig& cfg);
double rb_sigma_sq(double t, const BoostConfig& cfg);
double rb_mu(double t, double rho, const BoostConfig& cfg);

/// Inverse error function (Winitzki seed + Newton polish); |y| < 1.
double erf_inverse(double y);

/// w_i = exp(-(m_i - mu(t))^2 / (2 sigma^2(t))), each in (0, 1].
/// Throws TimeExhausted when t >= 1.
std::vector<double> robustboost_weights(std::span<const double> margins, double t,
                                        const BoostConfig& cfg);

enum class StepStatus { ok, no_solution, time_exhausted };

struct StepResult {
    StepStatus status = StepStatus::no_solution;
    double dt = 0.0;
    double alpha = 0.0;
};

/// One boosting-time step: find dt in (0, 1-t] and alpha >= 0 such that the
/// weak learner decorrelates under the advanced-time weights of the updated
/// margins and the average potential is conserved. Nested bisection, outer
/// on dt, inner on alpha. When even dt = 1-t keeps potential above target
/// the step jumps to the end of time. Degenerate learners (non-positive
/// weighted edge) yield no_solution; 1-t < tolerance yields time_exhausted.
StepResult solve_step(std::span<const double> margins, std::span<const int> u,
                      double t, const BoostConfig& cfg);

struct Ensemble {
    BoostAlgorithm algorithm = BoostAlgorithm::robustboost;
    std::vector<Tree> trees;
    std::vector<double> alphas;
    std::vector<AttributeSchema> schema;
    BoostConfig boost_cfg;
    TreeConfig tree_cfg;
    double final_t = 0.0;  // robustboost only; 0 for adaboost
    std::uint64_t seed = 0;

    int rounds() const { return static_cast<int>(trees.size()); }
};

/// Per-round training internals, recorded for verification; weights are the
/// normalized distribution used to fit that round's tree.
struct TrainDiagnostics {
    std::vector<double> round_errors;              // adaboost weighted errors
    std::vector<double> round_alphas;
    std::vector<std::vector<double>> round_weights;
    std::vector<double> round_times;               // robustboost t before each round
};

/// Boosted ensemble over weighted CART trees. AdaBoost uses the classic
/// exponential update; the robust variant advances boosting time with
/// solve_step until t reaches 1, the cap, or a degenerate learner.
Ensemble train_ensemble(std::span<const Sample> labeled,
                        const std::vector<AttributeSchema>& schema,
                        const BoostConfig& boost_cfg, const TreeConfig& tree_cfg,
                        std::uint64_t seed, TrainDiagnostics* diag = nullptr);

/// Normalized weighted vote in [-1, 1]; predicted label is its sign with
/// score 0 mapping to +1, confidence its magnitude.
double score_sample(const Ensemble& ensemble, const Sample& sample);
int predict_label(const Ensemble& ensemble, const Sample& sample);

/// Alpha-weighted mean of per-tree importances, normalized to sum 1 when
/// any split exists (all-zero otherwise).
std::vector<double> ensemble_importances(const Ensemble& ensemble);

nlohmann::json to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoostConfig& cfg);
BoostConfig boost_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TreeConfig& cfg);
TreeConfig tree_config_from_json(const nlohmann::json& j);

} // namespace survboost

#endif // SURVBOOST_BOOSTING_HPP
