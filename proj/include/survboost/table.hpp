#ifndef SURVBOOST_TABLE_HPP
#define SURVBOOST_TABLE_HPP

#include "survboost/csv.hpp"
#include "survboost/dataset.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace survboost {

enum class VitalStatus : std::uint8_t { alive, dead };
enum class AttrKind : std::uint8_t { categorical, numeric };

/// One attribute column. Categorical columns store per-row level codes into
/// `levels`; numeric columns store doubles with NaN marking missing cells.
struct AttributeColumn {
    std::string name;
    AttrKind kind = AttrKind::categorical;
    std::vector<int> codes;            // categorical: level index or kMissing
    std::vector<std::string> levels;   // categorical: ordered distinct values
    std::vector<double> numeric;       // numeric: value, NaN = missing

    std::size_t n_rows() const {
        return kind == AttrKind::categorical ? codes.size() : numeric.size();
    }
    bool is_missing(std::size_t row) const;
    std::size_t n_observed() const;
    /// Cell as text, "" when missing. Numeric cells use shortest round-trip
    /// formatting so write/parse cycles are exact.
    std::string cell_text(std::size_t row) const;
};

/// Raw clinical-style rows: attribute columns plus mandatory outcome columns.
/// Outcome cells are never missing; attribute cells may be.
struct ClinicalTable {
    std::vector<std::string> row_ids;
    std::vector<VitalStatus> vital_status;
    std::vector<long> survival_days;
    std::vector<AttributeColumn> attributes;
    bool has_row_ids = false;

    std::size_t n_rows() const { return vital_status.size(); }
    std::size_t n_attributes() const { return attributes.size(); }

    /// Fraction of missing attribute cells, in [0,1]. Zero attributes -> 0.
    double missing_fraction() const;

    const AttributeColumn* find_attribute(const std::string& name) const;
};

/// Value-wise table equality: names, kinds, decoded cell text, outcomes and
/// row ids. Level index order is not part of the comparison, so a table
/// survives a write/parse round trip even if level discovery order differs.
bool operator==(const ClinicalTable& a, const ClinicalTable& b);
inline bool operator!=(const ClinicalTable& a, const ClinicalTable& b) { return !(a == b); }

/// Per-column kind overrides for parse_clinical_table.
using SchemaHints = std::map<std::string, AttrKind>;

/// Parses the CSV interchange format: header row; reserved columns
/// `patient_id` (optional), `vital_status` in {alive,dead} (case-insensitive)
/// and non-negative integer `survival_days`; empty cells and `NA`
/// (case-insensitive) are missing. Column kinds are inferred (all observed
/// cells numeric -> numeric) unless overridden by `hints`.
ClinicalTable parse_clinical_table(std::istream& source, const SchemaHints& hints = {});
ClinicalTable parse_clinical_table_string(const std::string& text, const SchemaHints& hints = {});

/// Lenient variant for prediction inputs: outcome columns are optional and
/// filled with placeholders when absent.
ClinicalTable parse_feature_table(std::istream& source);

/// Serializes back to the CSV interchange format (missing cells as "").
CsvDocument to_csv(const ClinicalTable& table);

} // namespace survboost

#endif // SURVBOOST_TABLE_HPP
