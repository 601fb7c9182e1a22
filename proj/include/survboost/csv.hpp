#ifndef SURVBOOST_CSV_HPP
#define SURVBOOST_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace survboost {

/// A parsed CSV document: one header row plus data rows, all cells as text.
struct CsvDocument {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t n_cols() const { return header.size(); }
    std::size_t n_rows() const { return rows.size(); }
};

/// Reads comma-separated UTF-8 text with a mandatory header row.
/// Handles quoted fields (RFC-style double-quote escaping) and CRLF line
/// endings. Throws MalformedCsv on ragged rows, an empty document, or an
/// unterminated quote.
CsvDocument read_csv(std::istream& in);
CsvDocument read_csv_string(const std::string& text);

/// Writes the document back out, quoting only cells that need it.
void write_csv(std::ostream& out, const CsvDocument& doc);
std::string write_csv_string(const CsvDocument& doc);

} // namespace survboost

#endif // SURVBOOST_CSV_HPP
