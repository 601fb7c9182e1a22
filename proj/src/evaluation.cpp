#include "survboost/evaluation.hpp"

#include "survboost/errors.hpp"
#include "survboost/folds.hpp"
#include "survboost/rng.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>

namespace survboost {

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(long long v) { return std::to_string(v); }

Metrics metrics_mean(const std::vector<FoldResult>& folds) {
    Metrics m;
    for (const auto& f : folds) {
        m.acc += f.metrics.acc;
        m.snsp2 += f.metrics.snsp2;
        m.mcc += f.metrics.mcc;
    }
    const double n = static_cast<double>(folds.size());
    m.acc /= n;
    m.snsp2 /= n;
    m.mcc /= n;
    return m;
}

Metrics metrics_stddev(const std::vector<FoldResult>& folds, const Metrics& mean) {
    Metrics s;
    if (folds.size() < 2) return s;
    for (const auto& f : folds) {
        s.acc += (f.metrics.acc - mean.acc) * (f.metrics.acc - mean.acc);
        s.snsp2 += (f.metrics.snsp2 - mean.snsp2) * (f.metrics.snsp2 - mean.snsp2);
        s.mcc += (f.metrics.mcc - mean.mcc) * (f.metrics.mcc - mean.mcc);
    }
    const double n1 = static_cast<double>(folds.size() - 1);
    s.acc = std::sqrt(s.acc / n1);
    s.snsp2 = std::sqrt(s.snsp2 / n1);
    s.mcc = std::sqrt(s.mcc / n1);
    return s;
}

} // namespace

ConfusionMatrix confusion_matrix(std::span<const int> predictions, std::span<const int> truth) {
    if (predictions.size() != truth.size())
        throw LengthMismatch("predictions and truth differ in length");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if ((predictions[i] != 1 && predictions[i] != -1) || (truth[i] != 1 && truth[i] != -1))
            throw InvalidSpec("labels must be +1 or -1");
        if (truth[i] == 1)
            (predictions[i] == 1 ? cm.tp : cm.fn) += 1;
        else
            (predictions[i] == -1 ? cm.tn : cm.fp) += 1;
    }
    return cm;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
    const double total = static_cast<double>(cm.total());
    if (cm.total() <= 0)
        throw EmptyMatrix("metrics need at least one evaluated sample");

    Metrics m;
    m.acc = static_cast<double>(cm.tp + cm.tn) / total;
    const double sn = cm.tp + cm.fn > 0
                          ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn)
                          : 0.0;
    const double sp = cm.tn + cm.fp > 0
                          ? static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp)
                          : 0.0;
    m.snsp2 = 0.5 * (sn + sp);

    const double f1 = static_cast<double>(cm.tp + cm.fp);
    const double f2 = static_cast<double>(cm.tp + cm.fn);
    const double f3 = static_cast<double>(cm.tn + cm.fp);
    const double f4 = static_cast<double>(cm.tn + cm.fn);
    if (f1 > 0 && f2 > 0 && f3 > 0 && f4 > 0)
        m.mcc = (static_cast<double>(cm.tp) * static_cast<double>(cm.tn) -
                 static_cast<double>(cm.fp) * static_cast<double>(cm.fn)) /
                std::sqrt(f1 * f2 * f3 * f4);
    return m;
}

EvaluationReport cross_validate(const SurvivalDataset& dataset, TrainMode mode, int k,
                                const SelfTrainConfig& self_cfg, const BoostConfig& boost_cfg,
                                const TreeConfig& tree_cfg, std::uint64_t seed) {
    const auto folds = stratified_folds(dataset.labeled_pos, dataset.labeled_neg, k, seed);

    EvaluationReport report;
    report.mode = mode;
    report.threshold_years = dataset.threshold_years;
    report.seed = seed;
    report.folds = k;
    report.fold_assignments = folds;

    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<char> held(dataset.samples.size(), 0);
        for (int i : folds[f]) held[static_cast<std::size_t>(i)] = 1;

        SurvivalDataset train;
        train.schema = dataset.schema;
        train.threshold_years = dataset.threshold_years;
        for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
            const auto& s = dataset.samples[i];
            if (held[i]) continue;
            if (!s.is_labeled() && !std::binary_search(dataset.unlabeled.begin(),
                                                       dataset.unlabeled.end(),
                                                       static_cast<int>(i)))
                continue;
            const int idx = static_cast<int>(train.samples.size());
            train.samples.push_back(s);
            if (s.label == Label::positive)
                train.labeled_pos.push_back(idx);
            else if (s.label == Label::negative)
                train.labeled_neg.push_back(idx);
            else
                train.unlabeled.push_back(idx);
        }

        const std::uint64_t fold_seed = derive_seed(seed, {tag64("cv-fold"), f});
        const auto trained = train_model(train, mode, self_cfg, boost_cfg, tree_cfg, fold_seed);

        std::vector<int> preds, truth;
        for (int i : folds[f]) {
            const auto& s = dataset.samples[static_cast<std::size_t>(i)];
            preds.push_back(predict_label(trained.model, s));
            truth.push_back(s.y());
        }
        FoldResult fr;
        fr.fold = static_cast<int>(f);
        fr.cm = confusion_matrix(preds, truth);
        fr.metrics = compute_metrics(fr.cm);
        report.fold_results.push_back(fr);
    }

    report.mean = metrics_mean(report.fold_results);
    report.stddev = metrics_stddev(report.fold_results, report.mean);
    return report;
}

std::uint64_t sweep_row_seed(std::uint64_t seed, double threshold_years) {
    return seed ^ splitmix64(std::bit_cast<std::uint64_t>(threshold_years));
}

std::vector<SweepRow> survival_threshold_sweep(const ClinicalTable& table,
                                               std::span<const double> t_grid, int k,
                                               const SelfTrainConfig& self_cfg,
                                               const BoostConfig& boost_cfg,
                                               const TreeConfig& tree_cfg, std::uint64_t seed) {
    if (t_grid.empty())
        throw InvalidSpec("threshold grid must be non-empty");

    std::vector<SweepRow> rows;
    for (double t : t_grid) {
        SweepRow row;
        row.threshold_years = t;
        const auto ds = assign_labels(table, LabelingConfig{t});
        row.n_pos = ds.labeled_pos.size();
        row.n_neg = ds.labeled_neg.size();
        row.n_unlabeled = ds.unlabeled.size();

        if (ds.labeled_pos.empty() || ds.labeled_neg.empty()) {
            row.skipped = true;
            row.skip_reason = "single labeled class at this threshold";
            rows.push_back(std::move(row));
            continue;
        }
        const std::uint64_t row_seed = sweep_row_seed(seed, t);
        try {
            row.supervised = cross_validate(ds, TrainMode::supervised, k, self_cfg, boost_cfg,
                                            tree_cfg, row_seed);
            row.semi_supervised = cross_validate(ds, TrainMode::semi_supervised, k, self_cfg,
                                                 boost_cfg, tree_cfg, row_seed);
        } catch (const ModelError& e) {
            row.skipped = true;
            row.skip_reason = e.what();
            row.supervised.reset();
            row.semi_supervised.reset();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json to_json(const Metrics& m) {
    return nlohmann::json{{"acc", m.acc}, {"snsp2", m.snsp2}, {"mcc", m.mcc}};
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
    return nlohmann::json{{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
}

nlohmann::json to_json(const EvaluationReport& report) {
    nlohmann::json folds = nlohmann::json::array();
    for (const auto& fr : report.fold_results)
        folds.push_back(nlohmann::json{{"fold", fr.fold},
                                       {"confusion", to_json(fr.cm)},
                                       {"metrics", to_json(fr.metrics)}});
    return nlohmann::json{{"mode", to_string(report.mode)},
                          {"threshold_years", report.threshold_years},
                          {"seed", report.seed},
                          {"folds", report.folds},
                          {"fold_assignments", report.fold_assignments},
                          {"fold_results", std::move(folds)},
                          {"mean", to_json(report.mean)},
                          {"stddev", to_json(report.stddev)}};
}

nlohmann::json to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j{{"threshold_years", row.threshold_years},
                         {"n_pos", row.n_pos},
                         {"n_neg", row.n_neg},
                         {"n_unlabeled", row.n_unlabeled},
                         {"skipped", row.skipped},
                         {"skip_reason", row.skip_reason}};
        j["supervised"] = row.supervised ? to_json(*row.supervised) : nlohmann::json();
        j["semi_supervised"] =
            row.semi_supervised ? to_json(*row.semi_supervised) : nlohmann::json();
        out.push_back(std::move(j));
    }
    return out;
}

namespace {

void append_report_rows(CsvDocument& doc, const EvaluationReport& report) {
    const std::string mode = to_string(report.mode);
    for (const auto& fr : report.fold_results)
        doc.rows.push_back({mode, "fold", fmt(static_cast<long long>(fr.fold)),
                            fmt(fr.metrics.acc), fmt(fr.metrics.snsp2), fmt(fr.metrics.mcc),
                            fmt(fr.cm.tp), fmt(fr.cm.fp), fmt(fr.cm.tn), fmt(fr.cm.fn)});
    doc.rows.push_back({mode, "mean", "", fmt(report.mean.acc), fmt(report.mean.snsp2),
                        fmt(report.mean.mcc), "", "", "", ""});
    doc.rows.push_back({mode, "stddev", "", fmt(report.stddev.acc), fmt(report.stddev.snsp2),
                        fmt(report.stddev.mcc), "", "", "", ""});
}

} // namespace

std::string report_to_csv(const EvaluationReport& report) {
    return reports_to_csv({&report, 1});
}

std::string reports_to_csv(std::span<const EvaluationReport> reports) {
    CsvDocument doc;
    doc.header = {"mode", "row", "fold", "acc", "snsp2", "mcc", "tp", "fp", "tn", "fn"};
    for (const auto& report : reports) append_report_rows(doc, report);
    return write_csv_string(doc);
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    CsvDocument doc;
    doc.header = {"threshold_years", "mode",     "skipped",   "skip_reason",
                  "n_pos",           "n_neg",    "n_unlabeled", "acc_mean",
                  "acc_std",         "snsp2_mean", "snsp2_std", "mcc_mean",
                  "mcc_std"};
    for (const auto& row : rows) {
        const auto emit = [&](const std::string& mode, const std::optional<EvaluationReport>& rep) {
            std::vector<std::string> cells{fmt(row.threshold_years),
                                           mode,
                                           row.skipped ? "true" : "false",
                                           row.skip_reason,
                                           fmt(static_cast<long long>(row.n_pos)),
                                           fmt(static_cast<long long>(row.n_neg)),
                                           fmt(static_cast<long long>(row.n_unlabeled))};
            if (rep) {
                cells.insert(cells.end(),
                             {fmt(rep->mean.acc), fmt(rep->stddev.acc), fmt(rep->mean.snsp2),
                              fmt(rep->stddev.snsp2), fmt(rep->mean.mcc), fmt(rep->stddev.mcc)});
            } else {
                cells.insert(cells.end(), {"", "", "", "", "", ""});
            }
            doc.rows.push_back(std::move(cells));
        };
        emit("supervised", row.supervised);
        emit("semi_supervised", row.semi_supervised);
    }
    return write_csv_string(doc);
}

} // namespace survboost
