#include "survboost/table.hpp"

#include "survboost/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace survboost {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_missing_token(const std::string& s) {
    return s.empty() || lower(s) == "na";
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end != begin + s.size() || errno == ERANGE) return false;
    out = v;
    return true;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct ReservedColumns {
    int patient_id = -1;
    int vital_status = -1;
    int survival_days = -1;
};

ReservedColumns find_reserved(const std::vector<std::string>& header) {
    ReservedColumns r;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name = lower(header[c]);
        if (name == "patient_id") r.patient_id = static_cast<int>(c);
        else if (name == "vital_status") r.vital_status = static_cast<int>(c);
        else if (name == "survival_days") r.survival_days = static_cast<int>(c);
    }
    return r;
}

VitalStatus parse_vital(const std::string& raw, std::size_t row) {
    const std::string v = lower(raw);
    if (v == "alive") return VitalStatus::alive;
    if (v == "dead") return VitalStatus::dead;
    throw InvalidOutcomeValue("row " + std::to_string(row) + ": vital_status '" + raw +
                              "' is not 'alive' or 'dead'");
}

long parse_days(const std::string& raw, std::size_t row) {
    if (is_missing_token(raw))
        throw InvalidOutcomeValue("row " + std::to_string(row) + ": survival_days may not be missing");
    const char* begin = raw.c_str();
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(begin, &end, 10);
    if (end != begin + raw.size() || errno == ERANGE)
        throw InvalidOutcomeValue("row " + std::to_string(row) + ": survival_days '" + raw +
                                  "' is not an integer");
    if (v < 0)
        throw InvalidOutcomeValue("row " + std::to_string(row) + ": negative survival_days");
    return v;
}

AttributeColumn build_column(const std::string& name, const std::vector<std::string>& cells,
                             std::optional<AttrKind> forced_kind) {
    // Kind inference: numeric iff every observed cell parses as a number and
    // at least one cell is observed. All-missing columns stay categorical
    // (level-less) and are removed later by drop_near_constant.
    bool all_numeric = true;
    std::size_t observed = 0;
    for (const auto& cell : cells) {
        if (is_missing_token(cell)) continue;
        ++observed;
        double tmp;
        if (!parse_double(cell, tmp)) {
            all_numeric = false;
            break;
        }
    }
    AttrKind kind = forced_kind.value_or(
        (all_numeric && observed > 0) ? AttrKind::numeric : AttrKind::categorical);

    AttributeColumn col;
    col.name = name;
    col.kind = kind;
    if (kind == AttrKind::numeric) {
        col.numeric.reserve(cells.size());
        for (const auto& cell : cells) {
            if (is_missing_token(cell)) {
                col.numeric.push_back(std::nan(""));
                continue;
            }
            double v;
            if (!parse_double(cell, v))
                throw MalformedCsv("column '" + name + "': cell '" + cell +
                                   "' is not numeric (numeric kind was requested)");
            col.numeric.push_back(v);
        }
    } else {
        std::map<std::string, int> index;
        col.codes.reserve(cells.size());
        for (const auto& cell : cells) {
            if (is_missing_token(cell)) {
                col.codes.push_back(kMissing);
                continue;
            }
            auto [it, inserted] = index.emplace(cell, static_cast<int>(col.levels.size()));
            if (inserted) col.levels.push_back(cell);
            col.codes.push_back(it->second);
        }
    }
    return col;
}

ClinicalTable parse_impl(std::istream& source, const SchemaHints& hints, bool require_outcome) {
    const CsvDocument doc = read_csv(source);
    const ReservedColumns reserved = find_reserved(doc.header);
    if (require_outcome) {
        if (reserved.vital_status < 0)
            throw MissingOutcomeColumn("required column 'vital_status' not found");
        if (reserved.survival_days < 0)
            throw MissingOutcomeColumn("required column 'survival_days' not found");
    }

    ClinicalTable table;
    table.has_row_ids = reserved.patient_id >= 0;
    table.row_ids.reserve(doc.n_rows());
    table.vital_status.reserve(doc.n_rows());
    table.survival_days.reserve(doc.n_rows());

    for (std::size_t r = 0; r < doc.n_rows(); ++r) {
        const auto& row = doc.rows[r];
        table.row_ids.push_back(reserved.patient_id >= 0 ? row[reserved.patient_id]
                                                         : std::to_string(r + 1));
        if (reserved.vital_status >= 0)
            table.vital_status.push_back(parse_vital(row[reserved.vital_status], r + 1));
        else
            table.vital_status.push_back(VitalStatus::alive);
        if (reserved.survival_days >= 0)
            table.survival_days.push_back(parse_days(row[reserved.survival_days], r + 1));
        else
            table.survival_days.push_back(0);
    }

    for (std::size_t c = 0; c < doc.n_cols(); ++c) {
        const int ci = static_cast<int>(c);
        if (ci == reserved.patient_id || ci == reserved.vital_status || ci == reserved.survival_days)
            continue;
        std::vector<std::string> cells;
        cells.reserve(doc.n_rows());
        for (const auto& row : doc.rows) cells.push_back(row[c]);
        std::optional<AttrKind> forced;
        if (auto it = hints.find(doc.header[c]); it != hints.end()) forced = it->second;
        table.attributes.push_back(build_column(doc.header[c], cells, forced));
    }
    return table;
}

} // namespace

bool AttributeColumn::is_missing(std::size_t row) const {
    if (kind == AttrKind::categorical) return codes[row] == kMissing;
    return std::isnan(numeric[row]);
}

std::size_t AttributeColumn::n_observed() const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < n_rows(); ++r)
        if (!is_missing(r)) ++n;
    return n;
}

std::string AttributeColumn::cell_text(std::size_t row) const {
    if (is_missing(row)) return "";
    if (kind == AttrKind::categorical) return levels[static_cast<std::size_t>(codes[row])];
    return format_double(numeric[row]);
}

double ClinicalTable::missing_fraction() const {
    if (attributes.empty() || n_rows() == 0) return 0.0;
    std::size_t missing = 0;
    for (const auto& col : attributes)
        missing += col.n_rows() - col.n_observed();
    return static_cast<double>(missing) /
           static_cast<double>(attributes.size() * n_rows());
}

const AttributeColumn* ClinicalTable::find_attribute(const std::string& name) const {
    for (const auto& col : attributes)
        if (col.name == name) return &col;
    return nullptr;
}

bool operator==(const ClinicalTable& a, const ClinicalTable& b) {
    if (a.n_rows() != b.n_rows() || a.attributes.size() != b.attributes.size()) return false;
    if (a.row_ids != b.row_ids || a.vital_status != b.vital_status ||
        a.survival_days != b.survival_days)
        return false;
    for (std::size_t c = 0; c < a.attributes.size(); ++c) {
        const auto& ca = a.attributes[c];
        const auto& cb = b.attributes[c];
        if (ca.name != cb.name || ca.kind != cb.kind) return false;
        for (std::size_t r = 0; r < a.n_rows(); ++r)
            if (ca.cell_text(r) != cb.cell_text(r)) return false;
    }
    return true;
}

ClinicalTable parse_clinical_table(std::istream& source, const SchemaHints& hints) {
    return parse_impl(source, hints, true);
}

ClinicalTable parse_clinical_table_string(const std::string& text, const SchemaHints& hints) {
    std::istringstream in(text);
    return parse_clinical_table(in, hints);
}

ClinicalTable parse_feature_table(std::istream& source) {
    return parse_impl(source, {}, false);
}

CsvDocument to_csv(const ClinicalTable& table) {
    CsvDocument doc;
    doc.header.push_back("patient_id");
    doc.header.push_back("vital_status");
    doc.header.push_back("survival_days");
    for (const auto& col : table.attributes) doc.header.push_back(col.name);

    doc.rows.reserve(table.n_rows());
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        std::vector<std::string> row;
        row.reserve(doc.header.size());
        row.push_back(table.row_ids[r]);
        row.push_back(table.vital_status[r] == VitalStatus::alive ? "alive" : "dead");
        row.push_back(std::to_string(table.survival_days[r]));
        for (const auto& col : table.attributes) row.push_back(col.cell_text(r));
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

} // namespace survboost
