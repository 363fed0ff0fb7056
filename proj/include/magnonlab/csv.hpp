#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace magnonlab {

// Rectangular numeric table with unit-tagged column labels (e.g. power_mw).
// Serialized as RFC-4180-style CSV; lines starting with '#' are metadata
// comments and round-trip through parse/emit is value-identical to 15
// significant digits (values are emitted with 17).
struct DataTable {
    std::vector<std::string> columns;
    std::vector<std::string> comments;  // without the leading '#'
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;  // throws if absent
};

class CsvError : public std::runtime_error {
  public:
    CsvError(const std::string& message, std::size_t row, std::size_t column);
    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t row_;
    std::size_t column_;
};

DataTable read_csv(std::istream& in);
DataTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const DataTable& table);
void write_csv_file(const std::string& path, const DataTable& table);

}  // namespace magnonlab
