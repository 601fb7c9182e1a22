#ifndef SURVBOOST_SYNTHETIC_HPP
#define SURVBOOST_SYNTHETIC_HPP

#include "survboost/table.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace survboost {

/// Censored-cohort generator. Each row carries a latent risk score z; the
/// informative attributes are noisy quartile codes of z, survival time
/// shrinks exponentially with z, and an independent censoring coin turns
/// rows into alive/truncated follow-ups. Missingness is MCAR per cell.
/// Label noise mirrors z for the survival draw only, so the row's
/// attributes contradict its outcome at the configured rate.
struct SyntheticSpec {
    std::size_t n_rows = 500;
    int n_informative = 6;
    int n_noise = 4;              // uninformative categorical attributes
    double separation = 1.0;      // attribute level noise sigma = 1/separation
    double censoring_rate = 0.2;  // [0, 1)
    double missing_rate = 0.0;    // [0, 1) per attribute cell
    double label_noise = 0.0;     // [0, 0.5)
    double base_days = 1050.0;    // survival scale at z = 0
    std::string survival_family = "exponential";  // or "lognormal"
    double day_sigma = 0.25;      // lognormal spread
    std::uint64_t seed = 1;

    void validate() const;  // throws InvalidSpec
};

struct SyntheticCohort {
    ClinicalTable table;
    nlohmann::json meta;  // spec echo plus per-row latents for oracle checks
};

SyntheticCohort generate_synthetic(const SyntheticSpec& spec);

nlohmann::json to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

} // namespace survboost

#endif // SURVBOOST_SYNTHETIC_HPP
