#include "survboost/csv.hpp"

#include "survboost/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace survboost {

namespace {

// Splits the whole stream into records, honoring quotes that may contain
// commas and newlines.
std::vector<std::vector<std::string>> tokenize(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool in_quotes = false;
    bool any_char = false;

    auto end_cell = [&] {
        record.push_back(cell);
        cell.clear();
    };
    auto end_record = [&] {
        end_cell();
        records.push_back(std::move(record));
        record.clear();
        any_char = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    cell.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(c);
            }
            any_char = true;
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            any_char = true;
            break;
        case ',':
            end_cell();
            any_char = true;
            break;
        case '\r':
            break;
        case '\n':
            if (any_char || !record.empty() || !cell.empty())
                end_record();
            break;
        default:
            cell.push_back(c);
            any_char = true;
            break;
        }
    }
    if (in_quotes)
        throw MalformedCsv("unterminated quoted field");
    if (any_char || !record.empty() || !cell.empty())
        end_record();
    return records;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

void write_cell(std::ostream& out, const std::string& s) {
    if (!needs_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

} // namespace

CsvDocument read_csv(std::istream& in) {
    auto records = tokenize(in);
    if (records.empty())
        throw MalformedCsv("empty document: header row required");

    CsvDocument doc;
    doc.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != doc.header.size())
            throw MalformedCsv("row " + std::to_string(r) + " has " +
                               std::to_string(records[r].size()) + " cells, expected " +
                               std::to_string(doc.header.size()));
        doc.rows.push_back(std::move(records[r]));
    }
    return doc;
}

CsvDocument read_csv_string(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

void write_csv(std::ostream& out, const CsvDocument& doc) {
    for (std::size_t c = 0; c < doc.header.size(); ++c) {
        if (c) out << ',';
        write_cell(out, doc.header[c]);
    }
    out << '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            write_cell(out, row[c]);
        }
        out << '\n';
    }
}

std::string write_csv_string(const CsvDocument& doc) {
    std::ostringstream out;
    write_csv(out, doc);
    return out.str();
}

} // namespace survboost
