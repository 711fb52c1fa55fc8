#pragma once

#include <string>
#include <vector>

namespace pwcsim {

// Tabular results: comma-separated values with a one-line header of column
// names and a second line of units.  Numbers are written in shortest
// round-trip form, so identical data produces byte-identical files.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::string> units;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;  // throws IoError
    void add_row(std::initializer_list<double> values);
};

std::string format_number(double v);

std::string to_csv(const Table& table);
void write_csv(const Table& table, const std::string& path);

// Parses and validates a results file: both header lines present, a
// consistent column count, parseable numbers, and counts columns (units
// "counts" or "counts_per_s") non-negative.  Errors name the line.
Table ingest_csv(const std::string& text);
Table ingest_csv_file(const std::string& path);

// Schema check used by consumers with fixed expectations.
void require_columns(const Table& table, const std::vector<std::string>& names);

}  // namespace pwcsim
