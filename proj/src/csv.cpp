#include "kanon/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kanon {

namespace {

// Splits the whole stream into records, honoring quoted fields that may
// contain separators and newlines.
std::vector<std::vector<std::string>> parse_records(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool any_char = false;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(fields));
        fields.clear();
        any_char = false;
    };

    char ch;
    while (in.get(ch)) {
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get(ch);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
            any_char = true;
            continue;
        }
        switch (ch) {
            case '"':
                if (!field.empty() || field_was_quoted)
                    throw std::invalid_argument("csv: stray quote inside unquoted field");
                in_quotes = true;
                field_was_quoted = true;
                any_char = true;
                break;
            case ',':
                end_field();
                any_char = true;
                break;
            case '\r':
                break;
            case '\n':
                if (any_char || !fields.empty()) end_record();
                break;
            default:
                field.push_back(ch);
                any_char = true;
                break;
        }
    }
    if (in_quotes) throw std::invalid_argument("csv: unterminated quoted field");
    if (any_char || !fields.empty()) end_record();
    return records;
}

}  // namespace

CsvData read_csv(std::istream& in, bool has_header) {
    auto records = parse_records(in);
    CsvData data;
    if (has_header) {
        if (records.empty()) throw std::invalid_argument("csv: missing header line");
        data.header = std::move(records.front());
        records.erase(records.begin());
    }
    if (records.empty()) throw std::invalid_argument("csv: no data rows");
    const std::size_t m = records.front().size();
    if (data.header && data.header->size() != m)
        throw std::invalid_argument("csv: header field count differs from data rows");
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].size() != m)
            throw std::invalid_argument("csv: record " + std::to_string(i + 1) + " has " +
                                        std::to_string(records[i].size()) + " fields, expected " +
                                        std::to_string(m));
    data.records = std::move(records);
    return data;
}

CsvData read_csv_string(const std::string& text, bool has_header) {
    std::istringstream in(text);
    return read_csv(in, has_header);
}

std::string format_csv_record(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\r\n") != std::string::npos) {
            line.push_back('"');
            for (char c : f) {
                if (c == '"') line.push_back('"');
                line.push_back(c);
            }
            line.push_back('"');
        } else {
            line += f;
        }
    }
    return line;
}

void write_suppressed_csv(std::ostream& out, const Table& t, const Clustering& c,
                          const std::optional<std::vector<std::string>>& header) {
    std::vector<std::size_t> block_of(t.row_count());
    for (std::size_t b = 0; b < c.blocks.size(); ++b)
        for (std::size_t idx : c.blocks[b]) block_of[idx] = b;

    if (header) out << format_csv_record(*header) << '\n';
    std::vector<std::string> fields(t.column_count());
    for (std::size_t i = 0; i < t.row_count(); ++i) {
        const ResolutionVector& v = c.resolutions[block_of[i]];
        for (std::size_t j = 0; j < t.column_count(); ++j)
            fields[j] = v.entries[j] == kStar ? "*" : t.symbol_text(j, v.entries[j]);
        out << format_csv_record(fields) << '\n';
    }
}

void write_table_csv(std::ostream& out, const Table& t) {
    std::vector<std::string> fields(t.column_count());
    for (std::size_t i = 0; i < t.row_count(); ++i) {
        for (std::size_t j = 0; j < t.column_count(); ++j)
            fields[j] = t.symbol_text(j, t.row(i).entries[j]);
        out << format_csv_record(fields) << '\n';
    }
}

}  // namespace kanon
