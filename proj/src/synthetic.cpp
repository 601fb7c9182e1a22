#include "survboost/synthetic.hpp"

#include "survboost/errors.hpp"
#include "survboost/rng.hpp"

#include <array>
#include <cmath>
#include <string>

namespace survboost {

namespace {

// Population quartile boundaries of the standard normal, so levels come out
// near-uniform when the attribute tracks z closely.
constexpr std::array<double, 3> kQuartiles = {-0.6744897501960817, 0.0, 0.6744897501960817};

int quantize(double x) {
    int level = 0;
    for (double edge : kQuartiles)
        if (x > edge) ++level;
    return level;
}

std::string row_id(std::size_t i) {
    std::string digits = std::to_string(i + 1);
    const std::size_t width = 5;
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return "p" + digits;
}

} // namespace

void SyntheticSpec::validate() const {
    if (n_rows < 1) throw InvalidSpec("n_rows must be at least 1");
    if (n_informative < 1) throw InvalidSpec("n_informative must be at least 1");
    if (n_noise < 0) throw InvalidSpec("n_noise must be non-negative");
    if (!(separation > 0.0)) throw InvalidSpec("separation must be positive");
    if (!(censoring_rate >= 0.0 && censoring_rate < 1.0))
        throw InvalidSpec("censoring_rate must lie in [0, 1)");
    if (!(missing_rate >= 0.0 && missing_rate < 1.0))
        throw InvalidSpec("missing_rate must lie in [0, 1)");
    if (!(label_noise >= 0.0 && label_noise < 0.5))
        throw InvalidSpec("label_noise must lie in [0, 0.5)");
    if (!(base_days > 0.0)) throw InvalidSpec("base_days must be positive");
    if (survival_family != "exponential" && survival_family != "lognormal")
        throw InvalidSpec("survival_family must be exponential or lognormal");
    if (day_sigma < 0.0) throw InvalidSpec("day_sigma must be non-negative");
}

SyntheticCohort generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(derive_seed(spec.seed, {tag64("synthetic-cohort")}));
    const double level_noise = 1.0 / spec.separation;
    const std::vector<std::string> level_names = {"l1", "l2", "l3", "l4"};

    SyntheticCohort out;
    ClinicalTable& table = out.table;
    table.has_row_ids = true;

    const int n_attrs = spec.n_informative + spec.n_noise;
    for (int a = 0; a < n_attrs; ++a) {
        AttributeColumn col;
        col.kind = AttrKind::categorical;
        col.name = a < spec.n_informative ? "inf" + std::to_string(a + 1)
                                          : "noise" + std::to_string(a - spec.n_informative + 1);
        col.levels = level_names;
        table.attributes.push_back(std::move(col));
    }

    nlohmann::json latents = nlohmann::json::array();
    for (std::size_t i = 0; i < spec.n_rows; ++i) {
        const double z = rng.normal();
        for (int a = 0; a < spec.n_informative; ++a)
            table.attributes[static_cast<std::size_t>(a)].codes.push_back(
                quantize(z + level_noise * rng.normal()));
        for (int a = spec.n_informative; a < n_attrs; ++a)
            table.attributes[static_cast<std::size_t>(a)].codes.push_back(
                static_cast<int>(rng.below(4)));

        // Only the survival draw sees the mirrored z, so a noisy row's
        // attributes still describe the original latent risk.
        const bool noisy = rng.bernoulli(spec.label_noise);
        const double z_outcome = noisy ? -z : z;
        const double mean_days = spec.base_days * std::exp(-z_outcome);
        long days = 0;
        if (spec.survival_family == "exponential") {
            days = static_cast<long>(std::floor(-mean_days * std::log(1.0 - rng.uniform())));
        } else {
            days = static_cast<long>(std::floor(mean_days * std::exp(spec.day_sigma * rng.normal())));
        }

        const bool censored = rng.bernoulli(spec.censoring_rate);
        long observed_days = days;
        if (censored)
            observed_days = static_cast<long>(std::floor(rng.uniform() * static_cast<double>(days + 1)));

        for (int a = 0; a < n_attrs; ++a)
            if (rng.bernoulli(spec.missing_rate))
                table.attributes[static_cast<std::size_t>(a)].codes.back() = kMissing;

        table.row_ids.push_back(row_id(i));
        table.vital_status.push_back(censored ? VitalStatus::alive : VitalStatus::dead);
        table.survival_days.push_back(observed_days);

        latents.push_back(nlohmann::json{{"z", z},
                                         {"noisy", noisy},
                                         {"censored", censored},
                                         {"days_uncensored", days}});
    }

    out.meta = nlohmann::json{{"spec", to_json(spec)},
                              {"level_quartiles", kQuartiles},
                              {"rows", std::move(latents)}};
    return out;
}

nlohmann::json to_json(const SyntheticSpec& spec) {
    return nlohmann::json{{"n_rows", spec.n_rows},
                          {"n_informative", spec.n_informative},
                          {"n_noise", spec.n_noise},
                          {"separation", spec.separation},
                          {"censoring_rate", spec.censoring_rate},
                          {"missing_rate", spec.missing_rate},
                          {"label_noise", spec.label_noise},
                          {"base_days", spec.base_days},
                          {"survival_family", spec.survival_family},
                          {"day_sigma", spec.day_sigma},
                          {"seed", spec.seed}};
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
    SyntheticSpec spec;
    spec.n_rows = j.at("n_rows").get<std::size_t>();
    spec.n_informative = j.at("n_informative").get<int>();
    spec.n_noise = j.at("n_noise").get<int>();
    spec.separation = j.at("separation").get<double>();
    spec.censoring_rate = j.at("censoring_rate").get<double>();
    spec.missing_rate = j.at("missing_rate").get<double>();
    spec.label_noise = j.at("label_noise").get<double>();
    spec.base_days = j.at("base_days").get<double>();
    spec.survival_family = j.at("survival_family").get<std::string>();
    spec.day_sigma = j.at("day_sigma").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
}

} // namespace survboost
