// Acceptance gate. Each numbered criterion prints exactly one PASS/FAIL line
// with the measured quantities; the process exits nonzero if any fail. The
// thresholds below are fixed: loosening them is not an acceptable fix for a
// red line.

#include "oracles.hpp"

#include <survboost/boosting.hpp>
#include <survboost/cli.hpp>
#include <survboost/csv.hpp>
#include <survboost/dataset.hpp>
#include <survboost/errors.hpp>
#include <survboost/evaluation.hpp>
#include <survboost/preprocess.hpp>
#include <survboost/rng.hpp>
#include <survboost/self_training.hpp>
#include <survboost/synthetic.hpp>
#include <survboost/table.hpp>
#include <survboost/tree.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace survboost;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v, int prec = 4) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << v;
    return ss.str();
}

double accuracy_on(const Ensemble& ens, const std::vector<Sample>& test) {
    if (test.empty()) return 0.0;
    int correct = 0;
    for (const auto& s : test)
        if (predict_label(ens, s) == s.y()) ++correct;
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

struct TrainTest {
    std::vector<Sample> train;
    std::vector<Sample> test;
};

TrainTest split_labeled(const SurvivalDataset& ds, double train_frac, std::uint64_t seed) {
    std::vector<int> idx = ds.labeled_indices();
    Rng rng(derive_seed(seed, {tag64("acceptance-split")}));
    rng.shuffle(idx);
    const auto n_train = static_cast<std::size_t>(train_frac * static_cast<double>(idx.size()));
    TrainTest tt;
    for (std::size_t i = 0; i < idx.size(); ++i)
        (i < n_train ? tt.train : tt.test).push_back(ds.samples[static_cast<std::size_t>(idx[i])]);
    return tt;
}

bool has_split(const Ensemble& ens) {
    for (const auto& tree : ens.trees)
        for (const auto& node : tree.nodes)
            if (!node.leaf) return true;
    return false;
}

// ---- criterion 1: summary percentage arithmetic -------------------------------

Outcome criterion1() {
    struct Case {
        long pos, neg, unl;
        long expected;
    };
    const Case cases[] = {{111, 142, 279, 52}, {180, 197, 210, 36}, {38, 36, 100, 57}};
    std::string got;
    for (const Case& c : cases) {
        SurvivalDataset ds;
        const long total = c.pos + c.neg + c.unl;
        ds.samples.resize(static_cast<std::size_t>(total));
        for (long i = 0; i < total; ++i) {
            auto& s = ds.samples[static_cast<std::size_t>(i)];
            if (i < c.pos) {
                s.label = Label::positive;
                ds.labeled_pos.push_back(static_cast<int>(i));
            } else if (i < c.pos + c.neg) {
                s.label = Label::negative;
                ds.labeled_neg.push_back(static_cast<int>(i));
            } else {
                ds.unlabeled.push_back(static_cast<int>(i));
            }
        }
        const DatasetSummary s = summarize_dataset(ds, ClinicalTable{});
        if (!got.empty()) got += "/";
        got += std::to_string(s.pct_unlabeled);
        if (s.pct_unlabeled != c.expected)
            return {false, "expected " + std::to_string(c.expected) + "% for (" +
                               std::to_string(c.pos) + "," + std::to_string(c.neg) + "," +
                               std::to_string(c.unl) + "), got " +
                               std::to_string(s.pct_unlabeled) + "%"};
    }
    return {true, "unlabeled percentages " + got};
}

// ---- criterion 2: importance normalization -------------------------------------

Outcome criterion2() {
    int checked = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SyntheticSpec spec;
        spec.n_rows = 150;
        spec.separation = 2.5;
        spec.missing_rate = 0.1;
        spec.seed = seed;
        const SyntheticCohort cohort = generate_synthetic(spec);
        const SurvivalDataset ds = assign_labels(cohort.table, LabelingConfig{2.0});
        for (BoostAlgorithm alg : {BoostAlgorithm::adaboost, BoostAlgorithm::robustboost}) {
            BoostConfig bc;
            bc.algorithm = alg;
            bc.rounds_cap = 8;
            bc.target_error = 0.15;
            TreeConfig tc;
            const Ensemble ens =
                train_ensemble(ds.labeled_samples(), ds.schema, bc, tc, seed);
            if (!has_split(ens)) continue;
            const std::vector<double> imps = ensemble_importances(ens);
            const double sum = std::accumulate(imps.begin(), imps.end(), 0.0);
            worst = std::max(worst, std::abs(sum - 1.0));
            ++checked;
        }
    }
    if (checked < 8)
        return {false, "only " + std::to_string(checked) + " ensembles had a split"};
    return {worst <= 1e-9,
            std::to_string(checked) + " ensembles, worst |sum-1| = " + num(worst, 3)};
}

// ---- criterion 3: metric oracle equivalence ------------------------------------

Outcome criterion3() {
    Rng rng(derive_seed(99, {tag64("acceptance-metrics")}));
    double worst = 0.0;
    int zero_denoms = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionMatrix cm;
        cm.tp = static_cast<long long>(rng.below(400));
        cm.fp = static_cast<long long>(rng.below(400));
        cm.tn = static_cast<long long>(rng.below(400));
        cm.fn = static_cast<long long>(rng.below(400));
        if (trial % 7 == 0) cm.fp = cm.tn = 0;
        if (trial % 11 == 0) cm.tp = cm.fn = 0;
        if (cm.total() == 0) cm.tp = 1 + static_cast<long long>(rng.below(50));
        if (cm.tp + cm.fn == 0 || cm.tn + cm.fp == 0) ++zero_denoms;

        const Metrics got = compute_metrics(cm);
        const oracle::Met want = oracle::metrics(cm.tp, cm.fp, cm.tn, cm.fn);
        worst = std::max({worst, std::abs(got.acc - want.acc),
                          std::abs(got.snsp2 - want.snsp2), std::abs(got.mcc - want.mcc)});
    }
    if (zero_denoms < 100)
        return {false, "only " + std::to_string(zero_denoms) + " zero-denominator cases"};
    return {worst <= 1e-12, "1000 matrices (" + std::to_string(zero_denoms) +
                                " with zero denominators), worst |dev| = " + num(worst, 3)};
}

// ---- criterion 4: adaboost textbook replay -------------------------------------

Outcome criterion4() {
    int checked = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(derive_seed(seed, {tag64("acceptance-ada")}));
        const int n = 3 + static_cast<int>(rng.below(6));  // <= 8 samples
        std::vector<AttributeSchema> schema{{"a", {"x", "y", "z"}}, {"b", {"x", "y"}}};
        std::vector<Sample> samples(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto& s = samples[static_cast<std::size_t>(i)];
            s.features = {rng.bernoulli(0.15) ? kMissing : static_cast<int>(rng.below(3)),
                          rng.bernoulli(0.15) ? kMissing : static_cast<int>(rng.below(2))};
            s.label = rng.bernoulli(0.5) ? Label::positive : Label::negative;
        }
        samples[0].label = Label::positive;
        samples[1].label = Label::negative;

        BoostConfig bc;
        bc.algorithm = BoostAlgorithm::adaboost;
        bc.rounds_cap = 1 + static_cast<int>(rng.below(4));
        TreeConfig tc;
        tc.max_depth = 1 + static_cast<int>(rng.below(2));
        tc.max_surrogates = 2;

        TrainDiagnostics diag;
        Ensemble ens;
        try {
            ens = train_ensemble(samples, schema, bc, tc, seed, &diag);
        } catch (const ModelError&) {
            continue;  // degenerate draw; no rounds to compare
        }
        const std::vector<oracle::AdaRound> want = oracle::adaboost_replay(ens, samples);
        if (want.size() != ens.trees.size() || diag.round_alphas.size() != want.size() ||
            diag.round_weights.size() != want.size())
            return {false, "round bookkeeping mismatch at seed " + std::to_string(seed)};
        for (std::size_t r = 0; r < want.size(); ++r) {
            worst = std::max(worst, std::abs(diag.round_errors[r] - want[r].error));
            worst = std::max(worst, std::abs(diag.round_alphas[r] - want[r].alpha));
            for (std::size_t i = 0; i < samples.size(); ++i)
                worst = std::max(worst,
                                 std::abs(diag.round_weights[r][i] - want[r].weights[i]));
        }
        ++checked;
    }
    if (checked < 30)
        return {false, "only " + std::to_string(checked) + " instances trained"};
    return {worst <= 1e-12, std::to_string(checked) + " instances over 50 seeds, worst |dev| = " +
                                num(worst, 3)};
}

// ---- criterion 5: step solve vs dense grid oracle -------------------------------

Outcome criterion5() {
    BoostConfig cfg;
    cfg.target_error = 0.14;
    cfg.goal_margin = 0.0;
    cfg.final_sigma = 0.1;
    cfg.tolerance = 1e-6;

    Rng rng(derive_seed(7, {tag64("acceptance-step")}));
    int interior = 0, end_checked = 0, grazing = 0;
    double worst_rel = 0.0, worst_residual = 0.0;
    for (int trial = 0; trial < 90; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(6));
        const double t = rng.uniform() * 0.8;
        std::vector<double> m(static_cast<std::size_t>(n));
        std::vector<int> u(static_cast<std::size_t>(n));
        for (auto& x : m) x = rng.normal() * 0.6;
        for (auto& x : u) x = rng.bernoulli(0.7) ? 1 : -1;

        const StepResult got = solve_step(m, u, t, cfg);
        const oracle::GridStep want = oracle::solve_step_grid(m, u, t, cfg);
        if ((got.status == StepStatus::ok) != want.solvable)
            return {false, "solvability disagreement at trial " + std::to_string(trial)};
        if (got.status != StepStatus::ok) continue;

        if (want.end_jump) {
            if (std::abs(got.dt - (1.0 - t)) > 1e-9)
                return {false,
                        "expected an end-of-time jump at trial " + std::to_string(trial)};
            // At t = 1 the weight kernels are needles of width sigma_f, the
            // decorrelation sum has several roots, and the exact ones tend
            // to sit past the double underflow cliff — alpha values are not
            // comparable. The solver's contract is the bisection bracket:
            // alpha lies within tolerance of the boundary of the
            // positive-correlation region.
            bool bracket_ok = true;
            if (got.alpha == 0.0) {
                bracket_ok = oracle::end_decorrelation(m, u, 0.0, cfg) <= 0.0;
            } else if (got.alpha <= 1024.0) {
                bracket_ok =
                    oracle::end_decorrelation(m, u, got.alpha - cfg.tolerance, cfg) >= 0.0 &&
                    oracle::end_decorrelation(m, u, got.alpha + cfg.tolerance, cfg) <= 0.0;
            } else {
                bracket_ok = oracle::end_decorrelation(m, u, 1024.0, cfg) > 0.0;
            }
            if (!bracket_ok)
                return {false, "end-jump alpha bracket violated at trial " +
                                   std::to_string(trial)};
            ++end_checked;
            continue;
        }

        // Interior step: dt roots are unique and always compared. The alpha
        // value is compared only when the weak learner is decisively
        // correlated at the advanced time; near-decorrelated draws (initial
        // correlation within ~100x solver tolerance of zero) choose between
        // alpha = 0 and a far tail-balancing root on last-digit grounds, and
        // for those only the post-step residual below is meaningful.
        worst_rel = std::max(worst_rel,
                             std::abs(got.dt - want.dt) / std::max(1.0, std::abs(want.dt)));
        if (oracle::initial_correlation_ratio(m, u, t + want.dt, cfg) >= 1e-4) {
            ++interior;
            worst_rel = std::max(worst_rel, std::abs(got.alpha - want.alpha) /
                                                std::max(1.0, std::abs(want.alpha)));
        } else {
            ++grazing;
        }

        if (got.alpha < 1024.0) {  // bracket cap saturates the decorrelation equation
            std::vector<double> advanced(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) advanced[i] = m[i] + got.alpha * u[i];
            const double t_new = std::min(t + got.dt, 1.0 - 1e-12);
            const std::vector<double> w = robustboost_weights(advanced, t_new, cfg);
            double corr = 0.0, total = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                corr += u[i] * w[i];
                total += w[i];
            }
            if (total > 1e-300)  // below that the equation reads 0 = 0
                worst_residual = std::max(worst_residual,
                                          std::abs(corr) / (cfg.tolerance * total));
        }
    }
    if (interior < 20)
        return {false, "only " + std::to_string(interior) + " interior instances compared"};
    const bool pass = worst_rel <= 1e-4 && worst_residual <= 10.0;
    return {pass, std::to_string(interior) + " interior compared to the grid (+" +
                      std::to_string(grazing) + " near-decorrelated, residual-only), " +
                      std::to_string(end_checked) + " end-jump alpha brackets verified, " +
                      "worst rel dev = " + num(worst_rel, 3) + ", worst residual = " +
                      num(worst_residual, 3) + "x tolerance"};
}

// ---- criterion 6: surrogate inactivity on complete data -------------------------

Outcome criterion6() {
    int identical = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SyntheticSpec spec;
        spec.n_rows = 120;
        spec.n_informative = 4;
        spec.n_noise = 3;
        spec.separation = 2.0;
        spec.missing_rate = 0.0;
        spec.seed = seed;
        const SyntheticCohort cohort = generate_synthetic(spec);
        const SurvivalDataset ds = assign_labels(cohort.table, LabelingConfig{2.0});

        BoostConfig bc;
        bc.algorithm = seed % 2 ? BoostAlgorithm::adaboost : BoostAlgorithm::robustboost;
        bc.rounds_cap = 6;
        bc.target_error = 0.15;
        TreeConfig with, without;
        with.max_surrogates = 5;
        without.max_surrogates = 0;

        const std::vector<Sample> labeled = ds.labeled_samples();
        const Ensemble e5 = train_ensemble(labeled, ds.schema, bc, with, seed);
        const Ensemble e0 = train_ensemble(labeled, ds.schema, bc, without, seed);

        bool same = e5.trees.size() == e0.trees.size();
        for (const Sample& s : ds.samples) {
            if (!same) break;
            same = score_sample(e5, s) == score_sample(e0, s);  // bit-identical
        }
        if (!same)
            return {false, "predictions diverged at seed " + std::to_string(seed)};
        ++identical;
    }
    return {identical == 20, std::to_string(identical) + "/20 seeds bit-identical"};
}

// ---- criterion 7: surrogate benefit under missingness ----------------------------

Outcome criterion7() {
    double sum_surr = 0.0, sum_majority = 0.0;
    const int n_seeds = 25;
    for (std::uint64_t seed = 1; seed <= n_seeds; ++seed) {
        SyntheticSpec spec;
        spec.n_rows = 400;
        spec.n_informative = 6;
        spec.n_noise = 4;
        spec.separation = 2.5;
        spec.censoring_rate = 0.2;
        spec.missing_rate = 0.2;
        spec.survival_family = "lognormal";
        spec.day_sigma = 0.3;
        spec.base_days = 730.0;
        spec.seed = seed;
        const SyntheticCohort cohort = generate_synthetic(spec);
        const SurvivalDataset ds = assign_labels(cohort.table, LabelingConfig{2.0});
        const TrainTest tt = split_labeled(ds, 0.6, seed);

        BoostConfig bc;
        bc.algorithm = BoostAlgorithm::adaboost;
        bc.rounds_cap = 15;
        TreeConfig tc;
        tc.max_surrogates = 5;

        // One model, two routing policies: as trained, and with the
        // surrogates stripped so missing values always take the majority
        // child. Only prediction-time routing differs.
        const Ensemble ens = train_ensemble(tt.train, ds.schema, bc, tc, seed);
        Ensemble stripped = ens;
        for (auto& tree : stripped.trees)
            for (auto& node : tree.nodes) node.surrogates.clear();

        sum_surr += accuracy_on(ens, tt.test);
        sum_majority += accuracy_on(stripped, tt.test);
    }
    const double mean_surr = sum_surr / n_seeds;
    const double mean_majority = sum_majority / n_seeds;
    return {mean_surr >= mean_majority, "mean test acc: surrogates " + num(mean_surr) +
                                            " vs majority-child " + num(mean_majority)};
}

// ---- criterion 8: label-noise robustness ----------------------------------------

Outcome criterion8() {
    double sum_rb = 0.0, sum_ada = 0.0;
    const int n_seeds = 20;
    for (std::uint64_t seed = 1; seed <= n_seeds; ++seed) {
        SyntheticSpec spec;
        spec.n_rows = 300;
        spec.n_informative = 4;
        spec.n_noise = 2;
        spec.separation = 10.0;  // near-noiseless attributes; flips are the only noise
        spec.censoring_rate = 0.0;
        spec.missing_rate = 0.0;
        spec.label_noise = 0.15;
        spec.survival_family = "lognormal";
        spec.day_sigma = 0.02;
        spec.base_days = 730.0;
        spec.seed = seed;
        const SyntheticCohort cohort = generate_synthetic(spec);
        const SurvivalDataset ds = assign_labels(cohort.table, LabelingConfig{2.0});
        const TrainTest tt = split_labeled(ds, 2.0 / 3.0, seed);

        TreeConfig tc;
        BoostConfig ada;
        ada.algorithm = BoostAlgorithm::adaboost;
        ada.rounds_cap = 100;  // ample room to chase the flipped labels
        BoostConfig rb;
        rb.algorithm = BoostAlgorithm::robustboost;
        rb.rounds_cap = 100;
        rb.target_error = 0.25;  // noise rate plus headroom
        rb.goal_margin = 2.0;

        sum_ada += accuracy_on(train_ensemble(tt.train, ds.schema, ada, tc, seed), tt.test);
        sum_rb += accuracy_on(train_ensemble(tt.train, ds.schema, rb, tc, seed), tt.test);
    }
    const double mean_rb = sum_rb / n_seeds;
    const double mean_ada = sum_ada / n_seeds;
    return {mean_rb >= mean_ada + 0.02, "mean test acc: robustboost " + num(mean_rb) +
                                            " vs adaboost " + num(mean_ada) + " (need +0.02)"};
}

// ---- criterion 9: semi-supervised benefit ----------------------------------------

Outcome criterion9() {
    // Seed-averaged semi-vs-supervised gap at every attribute separation from
    // medium upward. The scarce-label regime is asserted on every cohort; the
    // primary separation must show a full point of mean benefit and no tested
    // separation may show a net loss beyond half a point.
    const int n_seeds = 25;
    const std::vector<double> separations = {2.5, 3.0, 4.0, 6.0};
    const double primary = 3.0;
    long labeled_max = 0;
    double unl_frac_min = 1.0;
    std::string gaps;
    bool floor_ok = true;
    double primary_gap = 0.0;
    for (const double separation : separations) {
        double sum_diff = 0.0;
        for (std::uint64_t seed = 1; seed <= n_seeds; ++seed) {
            SyntheticSpec spec;
            spec.n_rows = 160;
            spec.n_informative = 5;
            spec.n_noise = 3;
            spec.separation = separation;
            spec.censoring_rate = 0.68;
            spec.missing_rate = 0.05;
            spec.survival_family = "lognormal";
            spec.day_sigma = 0.2;
            spec.base_days = 500.0;
            spec.seed = seed;
            const SyntheticCohort cohort = generate_synthetic(spec);
            const SurvivalDataset ds = assign_labels(cohort.table, LabelingConfig{2.0});

            const long n_labeled =
                static_cast<long>(ds.labeled_pos.size() + ds.labeled_neg.size());
            const double unl_frac =
                static_cast<double>(ds.unlabeled.size()) / static_cast<double>(ds.n_samples());
            labeled_max = std::max(labeled_max, n_labeled);
            unl_frac_min = std::min(unl_frac_min, unl_frac);
            if (n_labeled > 80 || unl_frac < 0.5)
                return {false, "regime violated at seed " + std::to_string(seed) + ": " +
                                   std::to_string(n_labeled) + " labeled, " + num(unl_frac) +
                                   " unlabeled fraction"};

            SelfTrainConfig scfg;
            scfg.threshold_grid = {0.8, 0.9};
            scfg.cv_folds = 3;
            scfg.seed = seed;
            BoostConfig bc;
            bc.algorithm = BoostAlgorithm::adaboost;
            bc.rounds_cap = 8;
            TreeConfig tc;
            tc.max_depth = 2;
            tc.max_surrogates = 3;

            const EvaluationReport sup =
                cross_validate(ds, TrainMode::supervised, 3, scfg, bc, tc, seed);
            const EvaluationReport semi =
                cross_validate(ds, TrainMode::semi_supervised, 3, scfg, bc, tc, seed);
            sum_diff += semi.mean.acc - sup.mean.acc;
        }
        const double mean_diff = sum_diff / n_seeds;
        if (mean_diff < -0.005) floor_ok = false;
        if (separation == primary) primary_gap = mean_diff;
        if (!gaps.empty()) gaps += ", ";
        gaps += num(separation, 2) + " -> " + num(mean_diff);
    }
    const bool pass = floor_ok && primary_gap >= 0.010;
    return {pass, "mean semi - supervised gap by separation: " + gaps +
                      " (floor -0.005 everywhere, primary 3.0 needs >= 0.010); <= " +
                      std::to_string(labeled_max) + " labeled, >= " + num(unl_frac_min, 3) +
                      " unlabeled"};
}

// ---- criterion 10: degenerate self-training equivalences -------------------------

std::vector<Sample> mixed_vote_labeled() {
    auto s = [](std::vector<int> f, int y) {
        Sample out;
        out.features = std::move(f);
        out.label = y > 0 ? Label::positive : Label::negative;
        return out;
    };
    return {s({0, 0}, 1), s({0, 0}, 1), s({0, 1}, 1),  s({1, 0}, -1),
            s({1, 1}, -1), s({1, 1}, -1), s({1, 0}, 1), s({0, 1}, -1)};
}

Outcome criterion10() {
    // Empty unlabeled pool, full train_model path.
    SyntheticSpec spec;
    spec.n_rows = 100;
    spec.censoring_rate = 0.0;  // every patient labeled
    spec.separation = 2.0;
    spec.seed = 31;
    const SyntheticCohort cohort = generate_synthetic(spec);
    const SurvivalDataset ds = assign_labels(cohort.table, LabelingConfig{2.0});
    if (!ds.unlabeled.empty()) return {false, "fixture grew an unlabeled pool"};

    SelfTrainConfig scfg;
    scfg.threshold_grid = {0.5, 0.8};
    scfg.cv_folds = 3;
    scfg.seed = 9;
    BoostConfig bc;
    bc.algorithm = BoostAlgorithm::adaboost;
    bc.rounds_cap = 4;
    TreeConfig tc;

    const TrainResult semi = train_model(ds, TrainMode::semi_supervised, scfg, bc, tc, 9);
    const TrainResult sup = train_model(ds, TrainMode::supervised, scfg, bc, tc, 9);
    if (to_json(semi.model).dump() != to_json(sup.model).dump())
        return {false, "empty-pool semi-supervised model differs from supervised"};

    // Unattainable confidence threshold: two-stump votes reach +-0.19, far
    // below 0.5, so nothing is ever absorbed.
    const std::vector<Sample> labeled = mixed_vote_labeled();
    std::vector<Sample> pool(2);
    pool[0].features = {0, 1};
    pool[1].features = {1, 0};
    std::vector<AttributeSchema> schema{{"a", {"x", "y"}}, {"b", {"x", "y"}}};

    BoostConfig bc2;
    bc2.algorithm = BoostAlgorithm::adaboost;
    bc2.rounds_cap = 2;
    TreeConfig tc2;
    tc2.max_depth = 1;
    tc2.max_surrogates = 0;
    SelfTrainConfig scfg2;
    scfg2.threshold_grid = {0.5};
    scfg2.cv_folds = 2;
    scfg2.seed = 17;

    const SelfTrainResult res = self_train_loop(labeled, pool, 0.5, schema, bc2, tc2, scfg2);
    const Ensemble direct = train_ensemble(labeled, schema, bc2, tc2, scfg2.seed);
    if (res.trace.iterations.size() != 1 || res.trace.iterations[0].absorbed != 0)
        return {false, "unattainable threshold still absorbed samples"};
    if (to_json(res.model).dump() != to_json(direct).dump())
        return {false, "unattainable-threshold model differs from supervised"};
    return {true, "empty pool and unattainable threshold both byte-identical"};
}

// ---- criterion 11: termination + CLI determinism ---------------------------------

bool same_bytes(const std::string& a, const std::string& b, std::string& detail) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) {
        detail = "missing output file " + (fa ? b : a);
        return false;
    }
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str() != sb.str()) {
        detail = "outputs differ: " + a + " vs " + b;
        return false;
    }
    return true;
}

Outcome criterion11() {
    // Termination fuzz: iterations never exceed |unlabeled| + 1.
    int completed = 0;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng(derive_seed(trial, {tag64("acceptance-fuzz")}));
        const int n_attrs = 2 + static_cast<int>(rng.below(2));
        std::vector<AttributeSchema> schema;
        for (int a = 0; a < n_attrs; ++a) {
            const int n_levels = 2 + static_cast<int>(rng.below(2));
            std::vector<std::string> levels;
            for (int l = 0; l < n_levels; ++l) levels.push_back("l" + std::to_string(l));
            schema.push_back({"a" + std::to_string(a), levels});
        }
        auto draw = [&](Label label) {
            Sample s;
            for (const auto& att : schema)
                s.features.push_back(rng.bernoulli(0.15)
                                         ? kMissing
                                         : static_cast<int>(rng.below(att.n_levels())));
            s.label = label;
            return s;
        };
        std::vector<Sample> labeled;
        const int n_labeled = 6 + static_cast<int>(rng.below(7));
        for (int i = 0; i < n_labeled; ++i)
            labeled.push_back(draw(i < 2 ? Label::positive
                                         : i < 4 ? Label::negative
                                                 : rng.bernoulli(0.5) ? Label::positive
                                                                      : Label::negative));
        std::vector<Sample> pool;
        const std::size_t n_pool = rng.below(11);
        for (std::size_t i = 0; i < n_pool; ++i) pool.push_back(draw(Label::unlabeled));

        const double theta = std::vector<double>{0.3, 0.5, 0.7, 0.9}[rng.below(4)];
        SelfTrainConfig scfg;
        scfg.cv_folds = 2;
        scfg.iteration_cap = static_cast<int>(rng.below(4));  // 0 = auto
        scfg.seed = trial;
        BoostConfig bc;
        bc.algorithm = BoostAlgorithm::adaboost;
        bc.rounds_cap = 1 + static_cast<int>(rng.below(3));
        TreeConfig tc;
        tc.max_depth = 1 + static_cast<int>(rng.below(2));
        tc.max_surrogates = 1;

        try {
            const SelfTrainResult res =
                self_train_loop(labeled, pool, theta, schema, bc, tc, scfg);
            if (res.trace.iterations.size() > n_pool + 1)
                return {false, "trial " + std::to_string(trial) + " took " +
                                   std::to_string(res.trace.iterations.size()) +
                                   " iterations for a pool of " + std::to_string(n_pool)};
            ++completed;
        } catch (const ModelError&) {
            // degenerate draws may refuse to train; that is still termination
        }
    }
    if (completed < 25)
        return {false, "only " + std::to_string(completed) + " fuzz trials completed"};

    // CLI determinism: every subcommand, run twice with the same seed.
    const fs::path dir =
        fs::temp_directory_path() / ("survboost_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    struct Cleanup {
        fs::path p;
        ~Cleanup() {
            std::error_code ec;
            fs::remove_all(p, ec);
        }
    } cleanup{dir};
    const auto at = [&](const std::string& name) { return (dir / name).string(); };

    std::vector<std::pair<std::string, std::string>> pairs;
    const auto run2 = [&](std::vector<std::string> args, const std::string& out_flag,
                          const std::string& base) {
        for (int i = 1; i <= 2; ++i) {
            std::vector<std::string> full = args;
            full.push_back(out_flag);
            full.push_back(at(base + std::to_string(i)));
            if (run_cli(full) != 0) return false;
        }
        pairs.emplace_back(at(base + "1"), at(base + "2"));
        return true;
    };

    bool ok = true;
    ok = ok && run2({"synth", "--rows", "60", "--seed", "12", "--separation", "3",
                     "--missing", "0.1"},
                    "-o", "cohort");
    const std::string cohort = at("cohort1");
    pairs.emplace_back(cohort + ".meta.json", at("cohort2") + ".meta.json");
    ok = ok && run2({"preprocess", cohort, "-T", "2"}, "-o", "summary");
    ok = ok && run2({"suggest-threshold", cohort, "--grid", "1,2,5"}, "-o", "suggested");
    ok = ok && run2({"train", cohort, "-T", "2", "--mode", "semi_supervised", "--algorithm",
                     "adaboost", "--rounds", "3", "--selection-folds", "2",
                     "--confidence-grid", "0.5,0.8", "--iteration-cap", "2", "--seed", "5"},
                    "-o", "model");
    ok = ok && run2({"predict", cohort, "-m", at("model1")}, "-o", "preds");
    ok = ok && run2({"evaluate", cohort, "-T", "2", "--mode", "compare", "--folds", "2",
                     "--algorithm", "adaboost", "--rounds", "3", "--selection-folds", "2",
                     "--confidence-grid", "0.5,0.8", "--iteration-cap", "1", "--seed", "5"},
                    "-o", "eval");
    ok = ok && run2({"sweep", cohort, "--grid", "1,2", "--folds", "2", "--algorithm",
                     "adaboost", "--rounds", "3", "--selection-folds", "2",
                     "--confidence-grid", "0.5", "--seed", "5"},
                    "-o", "sweep");
    ok = ok && run2({"importance", cohort, "-T", "2", "--mode", "supervised", "--algorithm",
                     "adaboost", "--rounds", "4", "--seed", "5"},
                    "-o", "imp");
    if (!ok) return {false, "a CLI subcommand exited nonzero"};

    for (const auto& [a, b] : pairs) {
        std::string detail;
        if (!same_bytes(a, b, detail)) return {false, detail};
    }
    return {true, std::to_string(completed) + "/40 fuzz trials completed within |pool|+1; " +
                      std::to_string(pairs.size()) + " CLI output pairs byte-identical"};
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "dataset summary percentage arithmetic", criterion1},
        {2, "importance normalization", criterion2},
        {3, "metric oracle equivalence", criterion3},
        {4, "adaboost textbook-replay equivalence", criterion4},
        {5, "robustboost step solve vs grid oracle", criterion5},
        {6, "surrogate inactivity on complete data", criterion6},
        {7, "surrogate routing benefit under missingness", criterion7},
        {8, "robustboost label-noise robustness", criterion8},
        {9, "semi-supervised benefit with scarce labels", criterion9},
        {10, "degenerate self-training equivalences", criterion10},
        {11, "self-training termination and CLI determinism", criterion11},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        Outcome out;
        try {
            out = e.fn();
        } catch (const std::exception& ex) {
            out = {false, std::string("unexpected exception: ") + ex.what()};
        }
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << e.id << ": " << e.name
                  << " — " << out.detail << "\n";
        std::cout.flush();
        if (!out.pass) ++failures;
    }
    if (failures > 0) {
        std::cout << failures << " of 11 criteria failed\n";
        return 1;
    }
    std::cout << "all 11 criteria passed\n";
    return 0;
}
