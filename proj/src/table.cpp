#include "table.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace pwcsim {

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw IoError("table: missing column '" + name + "'");
}

void Table::add_row(std::initializer_list<double> values) {
    rows.emplace_back(values);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (std::size_t i = 0; i < table.units.size(); ++i) {
        if (i) out += ',';
        out += table.units[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << to_csv(table);
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool is_counts_unit(const std::string& unit) {
    return unit == "counts" || unit == "counts_per_s";
}

}  // namespace

Table ingest_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    Table table;
    if (!std::getline(in, line) || line.empty()) {
        throw IoError("line 1: missing header row");
    }
    ++line_no;
    for (auto& name : split_csv_line(line)) {
        if (name.empty()) {
            throw IoError("line 1: empty column name");
        }
        table.columns.push_back(name);
    }
    if (!std::getline(in, line)) {
        throw IoError("line 2: missing units row");
    }
    ++line_no;
    table.units = split_csv_line(line);
    if (table.units.size() != table.columns.size()) {
        throw IoError("line 2: units row has " + std::to_string(table.units.size()) +
                      " fields, header has " + std::to_string(table.columns.size()));
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != table.columns.size()) {
            throw IoError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(table.columns.size()) + " fields, got " +
                          std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i] == "nan") {
                row.push_back(std::nan(""));
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(fields[i].c_str(), &end);
            if (fields[i].empty() || end != fields[i].c_str() + fields[i].size()) {
                throw IoError("line " + std::to_string(line_no) + ": column '" +
                              table.columns[i] + "' is not a number: '" +
                              fields[i] + "'");
            }
            if (is_counts_unit(table.units[i]) && v < 0.0) {
                throw IoError("line " + std::to_string(line_no) + ": column '" +
                              table.columns[i] + "' has negative counts");
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table ingest_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return ingest_csv(buffer.str());
}

void require_columns(const Table& table, const std::vector<std::string>& names) {
    for (const auto& name : names) {
        table.column_index(name);
    }
}

}  // namespace pwcsim
