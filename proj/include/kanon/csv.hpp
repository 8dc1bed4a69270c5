#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kanon/table.hpp"

namespace kanon {

/// Raw CSV content: an optional header line plus the data records.
struct CsvData {
    std::optional<std::vector<std::string>> header;
    std::vector<std::vector<std::string>> records;
};

/// RFC-4180-style reader: quoted fields, "" escapes, CRLF tolerated.
/// Throws std::invalid_argument on ragged records or malformed quoting.
CsvData read_csv(std::istream& in, bool has_header);
CsvData read_csv_string(const std::string& text, bool has_header);

/// One CSV line; fields containing separators, quotes or newlines are quoted.
std::string format_csv_record(const std::vector<std::string>& fields);

/// Writes the table with every row replaced by its block's resolution vector,
/// suppressed entries as "*", rows in original order.
void write_suppressed_csv(std::ostream& out, const Table& t, const Clustering& c,
                          const std::optional<std::vector<std::string>>& header);

/// Writes the table verbatim (symbol text, no suppressions).
void write_table_csv(std::ostream& out, const Table& t);

}  // namespace kanon
