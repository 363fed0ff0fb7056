#include "magnonlab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace magnonlab {
namespace {

std::vector<std::string> split_record(const std::string& line, std::size_t row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) throw CsvError("unterminated quote", row, fields.size() + 1);
    fields.push_back(field);
    return fields;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n") != std::string::npos;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

CsvError::CsvError(const std::string& message, std::size_t row, std::size_t column)
    : std::runtime_error("csv: " + message + " (row " + std::to_string(row) + ", column " +
                         std::to_string(column) + ")"),
      row_(row),
      column_(column) {}

std::size_t DataTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw std::out_of_range("no such column: " + name);
}

DataTable read_csv(std::istream& in) {
    DataTable table;
    std::string line;
    std::size_t row_number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') {
            std::string text = line.substr(1);
            if (!text.empty() && text[0] == ' ') text.erase(0, 1);
            if (!text.empty() && text.back() == '\r') text.pop_back();
            table.comments.push_back(text);
            continue;
        }
        auto fields = split_record(line, row_number);
        if (!have_header) {
            table.columns = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.columns.size()) {
            throw CsvError("expected " + std::to_string(table.columns.size()) + " fields, got " +
                               std::to_string(fields.size()),
                           row_number, fields.size());
        }
        std::vector<double> values(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const std::string& f = fields[i];
            const char* begin = f.data();
            const char* end = begin + f.size();
            while (begin < end && *begin == ' ') ++begin;
            auto [ptr, ec] = std::from_chars(begin, end, values[i]);
            if (ec != std::errc{} || ptr != end) {
                throw CsvError("not a number: '" + f + "'", row_number, i + 1);
            }
        }
        table.rows.push_back(std::move(values));
    }
    if (!have_header) throw CsvError("missing header row", row_number, 1);
    return table;
}

DataTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const DataTable& table) {
    for (const auto& comment : table.comments) out << "# " << comment << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << (needs_quoting(table.columns[i]) ? quote(table.columns[i]) : table.columns[i]);
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_value(row[i]);
        }
        out << "\n";
    }
}

void write_csv_file(const std::string& path, const DataTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(out, table);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace magnonlab
