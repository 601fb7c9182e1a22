#include "survboost/preprocess.hpp"

#include "survboost/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace survboost {

namespace {

// Type-7 (linear interpolation) quantile of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ColumnTransform fit_numeric_bins(const AttributeColumn& col, int max_levels) {
    std::vector<double> observed;
    observed.reserve(col.numeric.size());
    for (double v : col.numeric)
        if (!std::isnan(v)) observed.push_back(v);
    if (observed.empty())
        throw EmptyColumn("attribute '" + col.name + "' has no observed values to bin");
    std::sort(observed.begin(), observed.end());

    ColumnTransform t;
    t.name = col.name;
    t.source_kind = AttrKind::numeric;
    for (int j = 1; j < max_levels; ++j) {
        const double edge = quantile_sorted(observed, static_cast<double>(j) / max_levels);
        if (t.bin_edges.empty() || edge > t.bin_edges.back())
            t.bin_edges.push_back(edge);  // duplicate edges collapse bins
    }
    for (std::size_t b = 0; b <= t.bin_edges.size(); ++b)
        t.levels.push_back("q" + std::to_string(b + 1));
    return t;
}

ColumnTransform fit_categorical(const AttributeColumn& col, int max_levels) {
    ColumnTransform t;
    t.name = col.name;
    t.source_kind = AttrKind::categorical;

    const int k = static_cast<int>(col.levels.size());
    if (k <= max_levels) {
        t.levels = col.levels;
        for (int l = 0; l < k; ++l) t.level_map[col.levels[static_cast<std::size_t>(l)]] = l;
        return t;
    }

    std::vector<long> freq(static_cast<std::size_t>(k), 0);
    for (int code : col.codes)
        if (code != kMissing) ++freq[static_cast<std::size_t>(code)];

    // Keep the max_levels-1 most frequent levels (ties keep the earlier
    // level); everything else merges into OTHER, leaving exactly max_levels.
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return freq[static_cast<std::size_t>(a)] > freq[static_cast<std::size_t>(b)];
    });
    std::vector<bool> keep(static_cast<std::size_t>(k), false);
    for (int r = 0; r < max_levels - 1; ++r) keep[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = true;

    std::string other_name = "OTHER";
    bool collides = true;
    while (collides) {
        collides = false;
        for (int l = 0; l < k; ++l)
            if (keep[static_cast<std::size_t>(l)] && col.levels[static_cast<std::size_t>(l)] == other_name) {
                other_name += "_";
                collides = true;
            }
    }

    for (int l = 0; l < k; ++l) {
        if (!keep[static_cast<std::size_t>(l)]) continue;
        t.level_map[col.levels[static_cast<std::size_t>(l)]] = static_cast<int>(t.levels.size());
        t.levels.push_back(col.levels[static_cast<std::size_t>(l)]);
    }
    t.other_index = static_cast<int>(t.levels.size());
    t.levels.push_back(other_name);
    for (int l = 0; l < k; ++l)
        if (!keep[static_cast<std::size_t>(l)]) t.level_map[col.levels[static_cast<std::size_t>(l)]] = t.other_index;
    return t;
}

ColumnTransform fit_column(const AttributeColumn& col, int max_levels) {
    if (col.kind == AttrKind::numeric) return fit_numeric_bins(col, max_levels);
    return fit_categorical(col, max_levels);
}

int bin_of(const ColumnTransform& t, double v) {
    int bin = 0;
    for (double edge : t.bin_edges)
        if (edge < v) ++bin;
    return bin;
}

AttributeColumn apply_column(const ColumnTransform& t, const AttributeColumn& col) {
    AttributeColumn out;
    out.name = t.name;
    out.kind = AttrKind::categorical;
    out.levels = t.levels;
    out.codes.reserve(col.n_rows());

    for (std::size_t r = 0; r < col.n_rows(); ++r) {
        if (col.is_missing(r)) {
            out.codes.push_back(kMissing);
            continue;
        }
        if (t.source_kind == AttrKind::numeric) {
            double v;
            if (col.kind == AttrKind::numeric) {
                v = col.numeric[r];
            } else {
                // Prediction inputs may have been inferred categorical; fall
                // back to parsing the cell text.
                try {
                    v = std::stod(col.cell_text(r));
                } catch (const std::exception&) {
                    out.codes.push_back(kMissing);
                    continue;
                }
            }
            out.codes.push_back(bin_of(t, v));
        } else {
            const std::string raw = col.cell_text(r);
            auto it = t.level_map.find(raw);
            if (it != t.level_map.end())
                out.codes.push_back(it->second);
            else
                out.codes.push_back(t.other_index >= 0 ? t.other_index : kMissing);
        }
    }
    return out;
}

bool is_near_constant(const AttributeColumn& col, double threshold_frac) {
    const std::size_t observed = col.n_observed();
    if (observed == 0) return true;

    long mode = 0;
    if (col.kind == AttrKind::categorical) {
        std::vector<long> freq(col.levels.size(), 0);
        for (int code : col.codes)
            if (code != kMissing) mode = std::max(mode, ++freq[static_cast<std::size_t>(code)]);
    } else {
        std::map<double, long> freq;
        for (double v : col.numeric)
            if (!std::isnan(v)) mode = std::max(mode, ++freq[v]);
    }
    return static_cast<double>(mode) > threshold_frac * static_cast<double>(observed);
}

} // namespace

Label label_of(VitalStatus status, long survival_days, double threshold_years) {
    const double t_years = static_cast<double>(survival_days) / kDaysPerYear;
    if (t_years >= threshold_years) return Label::positive;
    if (status == VitalStatus::dead) return Label::negative;
    return Label::unlabeled;
}

ClinicalTable stratify_attributes(const ClinicalTable& table, int max_levels) {
    if (max_levels < 2)
        throw InvalidSpec("max_levels must be at least 2");
    ClinicalTable out = table;
    for (auto& col : out.attributes) {
        const bool conforming =
            col.kind == AttrKind::categorical && static_cast<int>(col.levels.size()) <= max_levels;
        if (conforming) continue;
        col = apply_column(fit_column(col, max_levels), col);
    }
    return out;
}

ClinicalTable drop_near_constant(const ClinicalTable& table, double threshold_frac) {
    if (!(threshold_frac > 0.0 && threshold_frac < 1.0))
        throw InvalidSpec("threshold_frac must be in (0,1)");
    ClinicalTable out = table;
    out.attributes.clear();
    for (const auto& col : table.attributes)
        if (!is_near_constant(col, threshold_frac)) out.attributes.push_back(col);
    return out;
}

SurvivalDataset assign_labels(const ClinicalTable& table, const LabelingConfig& cfg) {
    if (!(cfg.threshold_years > 0.0))
        throw InvalidSpec("survival threshold must be positive");
    for (const auto& col : table.attributes)
        if (col.kind != AttrKind::categorical)
            throw InvalidSpec("assign_labels requires a preprocessed table; attribute '" +
                              col.name + "' is still numeric");

    SurvivalDataset ds;
    ds.threshold_years = cfg.threshold_years;
    ds.row_ids = table.row_ids;
    for (const auto& col : table.attributes)
        ds.schema.push_back(AttributeSchema{col.name, col.levels});

    ds.samples.reserve(table.n_rows());
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        Sample s;
        s.features.reserve(table.attributes.size());
        for (const auto& col : table.attributes) s.features.push_back(col.codes[r]);
        s.label = label_of(table.vital_status[r], table.survival_days[r], cfg.threshold_years);
        const int idx = static_cast<int>(r);
        switch (s.label) {
        case Label::positive: ds.labeled_pos.push_back(idx); break;
        case Label::negative: ds.labeled_neg.push_back(idx); break;
        case Label::unlabeled: ds.unlabeled.push_back(idx); break;
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

double suggest_balanced_threshold(const ClinicalTable& table, const std::vector<double>& grid) {
    if (grid.empty())
        throw InvalidSpec("threshold grid may not be empty");

    bool found = false;
    double best_t = 0.0;
    long best_diff = 0;
    for (double t : grid) {
        long pos = 0, neg = 0;
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            switch (label_of(table.vital_status[r], table.survival_days[r], t)) {
            case Label::positive: ++pos; break;
            case Label::negative: ++neg; break;
            case Label::unlabeled: break;
            }
        }
        if (pos + neg == 0) continue;
        const long diff = std::labs(pos - neg);
        if (!found || diff < best_diff || (diff == best_diff && t < best_t)) {
            found = true;
            best_diff = diff;
            best_t = t;
        }
    }
    if (!found)
        throw NoLabeledSamples("every candidate threshold labels zero samples");
    return best_t;
}

int percent_half_away(long part, long total) {
    if (total == 0) return 0;
    return static_cast<int>(std::llround(100.0 * static_cast<double>(part) /
                                         static_cast<double>(total)));
}

DatasetSummary summarize_dataset(const SurvivalDataset& ds, const ClinicalTable& before) {
    DatasetSummary s;
    s.n_pos = static_cast<long>(ds.labeled_pos.size());
    s.n_neg = static_cast<long>(ds.labeled_neg.size());
    s.n_unlabeled = static_cast<long>(ds.unlabeled.size());
    s.pct_unlabeled = percent_half_away(s.n_unlabeled, s.n_pos + s.n_neg + s.n_unlabeled);
    s.n_factors_before = static_cast<int>(before.n_attributes());
    s.n_factors_after = static_cast<int>(ds.schema.size());
    s.pct_missing_before = 100.0 * before.missing_fraction();

    long cells = 0, missing = 0;
    for (const auto& sample : ds.samples)
        for (int code : sample.features) {
            ++cells;
            if (code == kMissing) ++missing;
        }
    s.pct_missing_after = cells == 0 ? 0.0 : 100.0 * static_cast<double>(missing) / static_cast<double>(cells);
    return s;
}

nlohmann::json to_json(const DatasetSummary& s) {
    return nlohmann::json{
        {"n_pos", s.n_pos},
        {"n_neg", s.n_neg},
        {"n_unlabeled", s.n_unlabeled},
        {"pct_unlabeled", s.pct_unlabeled},
        {"n_factors_before", s.n_factors_before},
        {"n_factors_after", s.n_factors_after},
        {"pct_missing_before", s.pct_missing_before},
        {"pct_missing_after", s.pct_missing_after},
    };
}

std::vector<AttributeSchema> PreprocessModel::schema() const {
    std::vector<AttributeSchema> out;
    out.reserve(columns.size());
    for (const auto& t : columns) out.push_back(AttributeSchema{t.name, t.levels});
    return out;
}

PreprocessModel fit_preprocess(const ClinicalTable& table, int max_levels, double drop_threshold) {
    if (max_levels < 2)
        throw InvalidSpec("max_levels must be at least 2");
    if (!(drop_threshold > 0.0 && drop_threshold < 1.0))
        throw InvalidSpec("drop threshold must be in (0,1)");

    PreprocessModel model;
    model.max_levels = max_levels;
    model.drop_threshold = drop_threshold;
    for (const auto& col : table.attributes) {
        ColumnTransform t = fit_column(col, max_levels);
        const AttributeColumn transformed = apply_column(t, col);
        if (is_near_constant(transformed, drop_threshold)) continue;
        model.columns.push_back(std::move(t));
    }
    return model;
}

ClinicalTable apply_preprocess(const PreprocessModel& model, const ClinicalTable& table) {
    ClinicalTable out;
    out.row_ids = table.row_ids;
    out.vital_status = table.vital_status;
    out.survival_days = table.survival_days;
    out.has_row_ids = table.has_row_ids;
    for (const auto& t : model.columns) {
        const AttributeColumn* col = table.find_attribute(t.name);
        if (!col)
            throw MalformedCsv("input lacks attribute column '" + t.name +
                               "' required by the fitted model");
        out.attributes.push_back(apply_column(t, *col));
    }
    return out;
}

std::vector<Sample> extract_samples(const ClinicalTable& preprocessed) {
    std::vector<Sample> samples;
    samples.reserve(preprocessed.n_rows());
    for (std::size_t r = 0; r < preprocessed.n_rows(); ++r) {
        Sample s;
        s.features.reserve(preprocessed.attributes.size());
        for (const auto& col : preprocessed.attributes) {
            if (col.kind != AttrKind::categorical)
                throw InvalidSpec("extract_samples requires a preprocessed table");
            s.features.push_back(col.codes[r]);
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

nlohmann::json to_json(const PreprocessModel& m) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& t : m.columns) {
        nlohmann::json jc{
            {"name", t.name},
            {"source_kind", t.source_kind == AttrKind::numeric ? "numeric" : "categorical"},
            {"levels", t.levels},
        };
        if (t.source_kind == AttrKind::numeric) {
            jc["bin_edges"] = t.bin_edges;
        } else {
            nlohmann::json map = nlohmann::json::object();
            for (const auto& [raw, idx] : t.level_map) map[raw] = idx;
            jc["level_map"] = map;
            jc["other_index"] = t.other_index;
        }
        cols.push_back(std::move(jc));
    }
    return nlohmann::json{{"max_levels", m.max_levels},
                          {"drop_threshold", m.drop_threshold},
                          {"columns", cols}};
}

PreprocessModel preprocess_model_from_json(const nlohmann::json& j) {
    PreprocessModel m;
    m.max_levels = j.at("max_levels").get<int>();
    m.drop_threshold = j.at("drop_threshold").get<double>();
    for (const auto& jc : j.at("columns")) {
        ColumnTransform t;
        t.name = jc.at("name").get<std::string>();
        t.source_kind = jc.at("source_kind").get<std::string>() == "numeric"
                            ? AttrKind::numeric
                            : AttrKind::categorical;
        t.levels = jc.at("levels").get<std::vector<std::string>>();
        if (t.source_kind == AttrKind::numeric) {
            t.bin_edges = jc.at("bin_edges").get<std::vector<double>>();
        } else {
            for (const auto& [raw, idx] : jc.at("level_map").items())
                t.level_map[raw] = idx.get<int>();
            t.other_index = jc.at("other_index").get<int>();
        }
        m.columns.push_back(std::move(t));
    }
    return m;
}

} // namespace survboost
